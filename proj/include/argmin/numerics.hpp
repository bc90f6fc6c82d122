#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace argmin {

// Uniform-grid samples of a real function: values[k] = f(start + k*step).
struct GridFunction {
  double start = 0.0;
  double step = 0.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double time_at(std::size_t k) const { return start + static_cast<double>(k) * step; }
};

enum class StatisticName { KS, chi_square, mean_diff };

struct FitReport {
  StatisticName statistic_name = StatisticName::KS;
  double value = 0.0;
  std::size_t sample_size = 0;
  double threshold = 0.0;
  bool pass = false;
};

// pass is derived, never set by hand.
FitReport make_fit_report(StatisticName name, double value, std::size_t sample_size,
                          double threshold);
const char* statistic_name_label(StatisticName name);

double erf(double x);
double erfc(double x);

// Adaptive Gauss-Kronrod quadrature to absolute tolerance tol.
// Throws NonConvergence when the refinement budget is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b, double tol);

// Same, for integrands with power singularities f ~ (x-a)^{-p_lo} and/or
// (b-x)^{-p_hi} at the endpoints (p < 1). Substitutes x = a + u^k with k
// large enough to flatten the edge before handing off to integrate().
double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double tol, double p_lo, double p_hi);

// Integral of h(x) * (x-a)^{-p_lo} * (b-x)^{-p_hi} over (a, b) for smooth h.
// The edge factors are attached analytically in the transformed variable, so
// near-machine tolerances stay reachable even when a blow-up edge sits at
// x = O(1), where evaluating the assembled integrand would lose the offset
// to float absorption. Negative powers mark vanishing fractional edges.
double integrate_weighted(const std::function<double(double)>& h, double a, double b,
                          double tol, double p_lo, double p_hi);

// Trapezoid-rule convolution on a shared grid; output start adds.
// Throws GridMismatch when steps differ by more than 1e-12 relatively.
GridFunction convolve(const GridFunction& f, const GridFunction& g);

// Continues f beyond the grid as f_last * exp(-rate * (t - t_last)).
struct ExponentialTail {
  double rate = 0.0;
};

struct LaplaceResult {
  double value = 0.0;
  // Set when no tail was supplied and the last grid cell still carries
  // non-negligible weight, i.e. the grid visibly truncates the transform.
  bool coverage_warning = false;
};

// Grid Laplace transform: step * sum f_k exp(-lambda t_k), each sample
// owning the cell [t_k - step/2, t_k + step/2], plus the analytic tail
// beyond the last cell edge when one is supplied. Densities with edge
// singularities should be tabulated as cell averages for this to be exact
// to O(step^2); see the CDF-difference constructors in the law modules.
LaplaceResult laplace_eval(const GridFunction& f, double lambda,
                           std::optional<ExponentialTail> tail = std::nullopt);

struct InversionResult {
  double value = 0.0;
  // Relative spread between the requested order and order-2; quality proxy.
  double spread = 0.0;
};

// Gaver-Stehfest inversion of a Laplace transform at t; order even in 8..20.
// Throws UnstableInversion when the consecutive-order spread exceeds 10%.
InversionResult laplace_invert(const std::function<double(double)>& phi, double t,
                               int order = 16);

// Sup distance between the empirical CDF of sorted samples and cdf.
double ks_statistic(const std::vector<double>& sorted_samples,
                    const std::function<double(double)>& cdf);

}  // namespace argmin
