#pragma once

#include <cstddef>

#include "argmin/numerics.hpp"

namespace argmin {

// Renewal machinery of the (a,b)-minima point process: first-arrival-free
// hazard h, gap density g solved from the alternating convolution series,
// and the stationary delay density of the first minimum after time a.
struct RenewalLaw {
  double a = 0.0;
  double b = 0.0;
  GridFunction h;
  GridFunction g;
  GridFunction f_delay;
  double horizon = 0.0;
  std::size_t n_terms_used = 0;
};

// (1/(pi t))(sqrt((t-b)+/b) + sqrt((t-a)+/a)) below a+b, 1/(pi sqrt(ab)) after.
double h_ab(double a, double b, double t);

// g = sum_{n>=1} (-1)^{n-1} h^{*n}, evaluated exactly on [0,horizon] via the
// equivalent Volterra equation g = h - h*g (the series truncates itself:
// h^{*n} vanishes below n*min(a,b)). f_delay(t) = (1-G(t))/(pi sqrt(ab)).
// Requires horizon >= a+b and dt <= 1e-3*min(a,b) (GridTooCoarse otherwise).
RenewalLaw build_renewal_law(double a, double b, double horizon, double dt);

// Laplace transform of the first long-excursion ladder time J.
double phi_J(double lambda);  // 1/(sqrt(pi l) erf(sqrt l) + exp(-l))

// Laplace transform of the first (1,1)-minimum T1 = exp(-l) phi_J^2.
double phi_T1(double lambda);

enum class DeltaForm { closed, series, decomposition };

// Laplace transform of the stationary gap; three algebraically equal forms.
double phi_Delta(double lambda, DeltaForm form = DeltaForm::closed);

// Density of D-G: (2-t)/(t^2 sqrt(t-1)) on (1,2).
double density_DG(double t);
double cdf_DG(double t);  // closed form 2 sqrt(t-1)/t on [1,2]

// Laplace transform of D-G:
// pi l (erf^2-1) + 2 sqrt(pi l) e^{-l} erf + e^{-2l}, cancellation-safe.
double phi_DG(double lambda);

enum class IdentityKind { ident, pdagree2 };

// |LHS - RHS| of the two analytic integral identities behind the transform
// table; both sides evaluated independently (quadrature vs special functions).
double verify_identity(IdentityKind which, double lambda);

// Density of J: 1/(pi sqrt t) on (0,1]; numerically inverted for t > 1.
// Propagates UnstableInversion.
double density_J(double t, int order = 16);

// Full distribution of J for repeated CDF lookups: exact on (0,1], inverted
// on a cached grid beyond, with an exponential tail at the transform's
// dominant singularity rate. Immutable once built; cheap to share.
class JDistribution {
 public:
  JDistribution();
  double cdf(double t) const;
  double tail_rate() const { return tail_rate_; }

 private:
  GridFunction tail_cdf_;  // on [1, t_max]
  double t_max_ = 0.0;
  double cdf_at_tmax_ = 0.0;
  double tail_rate_ = 0.0;
};

const JDistribution& j_distribution();

}  // namespace argmin
