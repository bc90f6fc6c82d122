#include "argmin/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "argmin/errors.hpp"
#include "argmin/simd.hpp"

namespace argmin {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_scales(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("renewal scales must be positive");
}

// erf(sqrt l)^2 - 1 without cancellation: the difference of two near-one
// quantities becomes a product with erfc carrying the small factor.
double erf_sq_minus_one(double lambda) {
  const double r = std::sqrt(lambda);
  return -erfc(r) * (1.0 + erf(r));
}

}  // namespace

double h_ab(double a, double b, double t) {
  check_scales(a, b);
  if (t <= 0.0) return 0.0;
  if (t >= a + b) return 1.0 / (kPi * std::sqrt(a * b));
  const double from_b = t > b ? std::sqrt((t - b) / b) : 0.0;
  const double from_a = t > a ? std::sqrt((t - a) / a) : 0.0;
  return (from_b + from_a) / (kPi * t);
}

RenewalLaw build_renewal_law(double a, double b, double horizon, double dt) {
  check_scales(a, b);
  if (!(dt > 0.0)) throw InvalidGrid("dt must be positive");
  if (!(horizon >= a + b)) throw HorizonTooShort("renewal horizon shorter than a+b");
  const double scale = std::min(a, b);
  if (dt > 1e-3 * scale * (1.0 + 1e-12))
    throw GridTooCoarse("renewal grid needs dt <= 1e-3 * min(a,b)");

  const auto n = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));

  RenewalLaw law;
  law.a = a;
  law.b = b;
  law.horizon = horizon;
  law.n_terms_used = static_cast<std::size_t>(std::ceil(horizon / scale - 1e-9));

  law.h.start = 0.0;
  law.h.step = dt;
  law.h.values.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) law.h.values[k] = h_ab(a, b, static_cast<double>(k) * dt);

  // Volterra forward solve g(t) = h(t) - int_0^t h(t-s) g(s) ds.  Both h and
  // g vanish at 0, so the trapezoid rule collapses to the interior sum, and
  // the convolution is a contiguous dot product against g stored reversed.
  law.g.start = 0.0;
  law.g.step = dt;
  law.g.values.assign(n + 1, 0.0);
  std::vector<double> rev(n + 1, 0.0);  // rev[n - i] = g_i
  const double* h = law.h.values.data();
  for (std::size_t k = 1; k <= n; ++k) {
    const double conv = k >= 2 ? simd::dot(h + 1, rev.data() + (n - k + 1), k - 1) : 0.0;
    const double gk = h[k] - dt * conv;
    law.g.values[k] = gk;
    rev[n - k] = gk;
  }

  // Stationary delay of the next minimum: mass 1/(pi sqrt(ab)) per unit of
  // not-yet-renewed time.
  const double rate = 1.0 / (kPi * std::sqrt(a * b));
  law.f_delay.start = 0.0;
  law.f_delay.step = dt;
  law.f_delay.values.resize(n + 1);
  double g_cum = 0.0;
  law.f_delay.values[0] = rate;
  for (std::size_t k = 1; k <= n; ++k) {
    g_cum += 0.5 * dt * (law.g.values[k - 1] + law.g.values[k]);
    law.f_delay.values[k] = rate * (1.0 - g_cum);
  }
  return law;
}

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("transform argument must be positive");
}

}  // namespace

double phi_J(double lambda) {
  check_lambda(lambda);
  const double r = std::sqrt(lambda);
  return 1.0 / (std::sqrt(kPi) * r * erf(r) + std::exp(-lambda));
}

double phi_T1(double lambda) {
  check_lambda(lambda);
  const double pj = phi_J(lambda);
  return std::exp(-lambda) * pj * pj;
}

double phi_DG(double lambda) {
  check_lambda(lambda);
  const double r = std::sqrt(lambda);
  return kPi * lambda * erf_sq_minus_one(lambda) +
         2.0 * std::sqrt(kPi) * r * std::exp(-lambda) * erf(r) +
         std::exp(-2.0 * lambda);
}

double phi_Delta(double lambda, DeltaForm form) {
  check_lambda(lambda);
  switch (form) {
    case DeltaForm::closed: {
      const double pj = phi_J(lambda);
      return 1.0 - kPi * lambda * pj * pj;
    }
    case DeltaForm::series: {
      // Geometric resummation of the excursion ladder: psi / (1 + psi).
      const double r = std::sqrt(lambda);
      const double psi = erf_sq_minus_one(lambda) +
                         2.0 * std::exp(-lambda) / (std::sqrt(kPi) * r) * erf(r) +
                         std::exp(-2.0 * lambda) / (kPi * lambda);
      return psi / (1.0 + psi);
    }
    case DeltaForm::decomposition: {
      const double pj = phi_J(lambda);
      return pj * pj * phi_DG(lambda);
    }
  }
  throw DomainError("unknown DeltaForm");
}

double density_DG(double t) {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  return (2.0 - t) / (t * t * std::sqrt(t - 1.0));
}

double cdf_DG(double t) {
  if (t <= 1.0) return 0.0;
  if (t >= 2.0) return 1.0;
  return 2.0 * std::sqrt(t - 1.0) / t;
}

double verify_identity(IdentityKind which, double lambda) {
  check_lambda(lambda);
  const double r = std::sqrt(lambda);
  switch (which) {
    case IdentityKind::ident: {
      const double lhs = integrate(
          [lambda](double u) {
            const double u2 = u * u;
            return 2.0 * u2 * std::exp(-lambda * u2) / (1.0 + u2);
          },
          0.0, 1.0, 1e-12);
      const double rhs = 0.5 * kPi * std::exp(lambda) * erf_sq_minus_one(lambda) +
                         std::sqrt(kPi / lambda) * erf(r);
      return std::abs(lhs - rhs);
    }
    case IdentityKind::pdagree2: {
      const double lhs = integrate(
          [lambda](double u) {
            const double u2 = u * u;
            const double d = 1.0 + u2;
            return 2.0 * std::exp(-lambda * u2) * (1.0 - u2) / (d * d);
          },
          0.0, 1.0, 1e-11);
      const double rhs = kPi * lambda * std::exp(lambda) * erf_sq_minus_one(lambda) +
                         2.0 * std::sqrt(kPi) * r * erf(r) + std::exp(-lambda);
      return std::abs(lhs - rhs);
    }
  }
  throw DomainError("unknown IdentityKind");
}

double density_J(double t, int order) {
  if (t <= 0.0) return 0.0;
  if (t <= 1.0) return 1.0 / (kPi * std::sqrt(t));
  return laplace_invert([](double l) { return phi_J(l); }, t, order).value;
}

JDistribution::JDistribution() {
  t_max_ = 12.0;
  tail_cdf_.start = 1.0;
  tail_cdf_.step = 0.01;
  const std::size_t points = 1101;
  tail_cdf_.values.resize(points);
  const auto transform = [](double l) { return phi_J(l) / l; };  // CDF transform
  tail_cdf_.values[0] = 2.0 / kPi;  // int_0^1 dt / (pi sqrt t)
  for (std::size_t i = 1; i < points; ++i) {
    const double t = tail_cdf_.time_at(i);
    double v;
    try {
      v = laplace_invert(transform, t, 16).value;
    } catch (const UnstableInversion&) {
      v = laplace_invert(transform, t, 8).value;
    }
    tail_cdf_.values[i] = v;
  }
  // The inverted values wobble at the last-digit level; a CDF must not.
  double run = 0.0;
  for (double& v : tail_cdf_.values) {
    run = std::max(run, std::min(v, 1.0));
    v = run;
  }
  cdf_at_tmax_ = tail_cdf_.values.back();

  // Decay rate of the tail: the dominant singularity of phi_J on the negative
  // axis, where sqrt(pi l) erf(sqrt l) + e^{-l} vanishes.  In s = -l the
  // condition reads e^s = sqrt(pi s) erfi(sqrt s), with a single root near 0.85.
  const auto balance = [](double s) {
    const double rs = std::sqrt(s);
    const double erfi = 2.0 / std::sqrt(kPi) *
                        integrate([](double u) { return std::exp(u * u); }, 0.0, rs, 1e-12);
    return std::sqrt(kPi * s) * erfi - std::exp(s);
  };
  double lo = 0.5, hi = 1.5;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (balance(mid) < 0.0 ? lo : hi) = mid;
  }
  tail_rate_ = 0.5 * (lo + hi);
}

double JDistribution::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  if (t <= 1.0) return 2.0 / kPi * std::sqrt(t);
  if (t >= t_max_) return 1.0 - (1.0 - cdf_at_tmax_) * std::exp(-tail_rate_ * (t - t_max_));
  const double pos = (t - tail_cdf_.start) / tail_cdf_.step;
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return tail_cdf_.values[i] * (1.0 - frac) + tail_cdf_.values[i + 1] * frac;
}

const JDistribution& j_distribution() {
  static const JDistribution dist;
  return dist;
}

}  // namespace argmin
