#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace argmin {

// One-dimensional law on [0,1]: optional atom plus an absolutely continuous
// part. The density callable is exact (no grid); edge_power_* record the
// known power-singularity exponents at the support edges and kinks lists the
// interior points where the density is continuous but not smooth, so that
// quadrature can split and substitute instead of discovering them.
struct MixedKernel {
  struct Atom {
    double location = 0.0;
    double mass = 0.0;
  };

  // One summand of an exact factoring of the density: smooth(y) times
  // (y - a)^{-p_lo} (b - y)^{-p_hi} on (a, b), negative powers marking
  // vanishing fractional edges. When a kernel carries these, kernel_mass
  // integrates them with the edge factors attached analytically in the
  // substituted variable; evaluating the assembled density pointwise cannot
  // reach tight tolerances for steep edges because forming y - a in floating
  // point absorbs the offset near an edge at y = O(1).
  struct WeightedTerm {
    std::function<double(double)> smooth;
    double a = 0.0;
    double b = 1.0;
    double p_lo = 0.0;
    double p_hi = 0.0;
  };

  std::optional<Atom> atom;
  std::function<double(double)> density;  // on (support_lo, support_hi)
  double support_lo = 0.0;
  double support_hi = 1.0;
  double edge_power_lo = 0.0;  // density ~ (y - lo)^{-edge_power_lo}
  double edge_power_hi = 0.0;  // density ~ (hi - y)^{-edge_power_hi}
  std::vector<double> kinks;
  std::vector<WeightedTerm> mass_terms;  // empty: no factoring known
};

// Atom mass plus quadrature of the density over its support.
double kernel_mass(const MixedKernel& kernel, double tol);

// Stationary law of the argmin location: 1/(pi sqrt(x(1-x))).
double arcsine_density(double x);
double arcsine_cdf(double x);  // (2/pi) arcsin(sqrt(x))

// Probability that the location drifts from x down to y with no jump.
double survival_no_jump(double x, double y);  // sqrt((1-x)/(1-y)), y <= x

// Rate of the jump to 1 from level x.
double jump_rate_to_one(double x);  // 1/(2(1-x))

// Entrance intensity from 0 per unit local time.
double levy_measure_from_zero(double y);  // 1/sqrt(2 pi y^3 (1-y))

// Density in t of the jump time to 1 started from x, t in (0,x).
double hit_one_density(double x, double t);

// Three-regime transition kernel of the location process over time t.
MixedKernel transition_kernel(double x, double t);

// Sup over a y-grid of the composed-vs-direct density mismatch.
double chapman_kolmogorov_defect(double x, double s, double t, std::size_t grid);

struct IntertwiningGap {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Expected meander endpoint sqrt(pi(1-t)/2) against the kernel-averaged
// counterpart; rhs > lhs for t in (0,1] witnesses the failed intertwining.
IntertwiningGap intertwining_gap(double t);

struct StableParams {
  double alpha = 2.0;
  double beta = 0.0;
  double rho = 0.5;  // positivity parameter, derived

  // Validates (alpha, beta), rejects subordinator cases (rho hits 0 or 1).
  StableParams(double alpha, double beta);
};

double stable_stationary_density(const StableParams& params, double x);
double stable_jump_rate(const StableParams& params, double x);  // (1-rho)/(1-x)
double stable_survival_no_jump(const StableParams& params, double x, double y);

// Generalized three-regime kernel; rho = 1/2 coincides with transition_kernel.
MixedKernel stable_transition_kernel(const StableParams& params, double x, double t);

// CSV tabulation (x, t, y, density) of one kernel over a y-grid, plus a side
// JSON record {x, t, location, mass} for the atom when present.
struct KernelTabulation {
  std::vector<double> y;
  std::vector<double> density;
  std::optional<MixedKernel::Atom> atom;
};
KernelTabulation tabulate_kernel(const MixedKernel& kernel, std::size_t points);

}  // namespace argmin
