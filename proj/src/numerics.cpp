#include "argmin/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "argmin/errors.hpp"
#include "argmin/simd.hpp"

namespace argmin {
namespace {

// Gauss-Kronrod 7-15 nodes and weights (positive half; node 7 is the center).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights sit on Kronrod nodes 1, 3, 5, 7.
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, integral, error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  double half = 0.5 * (b - a);
  double mid = 0.5 * (a + b);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 7; ++i) {
    double off = half * kKronrodNodes[i];
    double pair = f(mid - off) + f(mid + off);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  double fc = f(mid);
  kronrod += kKronrodWeights[7] * fc;
  gauss += kGaussWeights[3] * fc;
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

constexpr int kMaxPanels = 4000;

}  // namespace

FitReport make_fit_report(StatisticName name, double value, std::size_t sample_size,
                          double threshold) {
  return {name, value, sample_size, threshold, value <= threshold};
}

const char* statistic_name_label(StatisticName name) {
  switch (name) {
    case StatisticName::KS: return "KS";
    case StatisticName::chi_square: return "chi_square";
    case StatisticName::mean_diff: return "mean_diff";
  }
  return "unknown";
}

double erf(double x) { return std::erf(x); }
double erfc(double x) { return std::erfc(x); }

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(tol > 0.0)) throw DomainError("integrate: tolerance must be positive");
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::vector<Panel> panels{evaluate_panel(f, a, b)};
  if (!std::isfinite(panels[0].integral))
    throw NonConvergence("integrate: integrand produced a non-finite value");
  for (int iter = 0; iter < kMaxPanels; ++iter) {
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total_err += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    if (total_err <= tol) {
      double total = 0.0;
      for (const Panel& p : panels) total += p.integral;
      return sign * total;
    }
    Panel bad = panels[worst];
    double mid = 0.5 * (bad.a + bad.b);
    if (!(mid > bad.a && mid < bad.b))
      throw NonConvergence("integrate: interval at float resolution before tolerance met");
    panels[worst] = evaluate_panel(f, bad.a, mid);
    panels.push_back(evaluate_panel(f, mid, bad.b));
    if (!std::isfinite(panels[worst].integral) || !std::isfinite(panels.back().integral))
      throw NonConvergence("integrate: integrand produced a non-finite value");
  }
  throw NonConvergence("integrate: refinement budget exhausted");
}

namespace {

// A negative power marks a vanishing fractional edge (infinite slope, no
// blow-up); the same substitution flattens it, with the mild order k = 2.
double edge_order(double p) {
  return std::max(2.0, std::ceil(2.0 / (1.0 - std::max(p, 0.0))));
}

}  // namespace

double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double tol, double p_lo, double p_hi) {
  if (p_lo >= 1.0 || p_hi >= 1.0)
    throw DomainError("integrate_singular: non-integrable endpoint power");
  if (p_lo == 0.0 && p_hi == 0.0) return integrate(f, a, b, tol);
  if (a > b) return -integrate_singular(f, b, a, tol, p_hi, p_lo);

  double mid = 0.5 * (a + b);
  double result = 0.0;
  double split_tol = tol / 2.0;

  if (p_lo != 0.0) {
    double k = edge_order(p_lo);
    double top = std::pow(mid - a, 1.0 / k);
    result += integrate(
        [&f, a, k](double u) {
          double x = a + std::pow(u, k);
          // u so small that x rounds onto the endpoint: the transformed
          // integrand vanishes there for any integrable power.
          if (x <= a) return 0.0;
          return f(x) * k * std::pow(u, k - 1.0);
        },
        0.0, top, split_tol);
  } else {
    result += integrate(f, a, mid, split_tol);
  }

  if (p_hi != 0.0) {
    double k = edge_order(p_hi);
    double top = std::pow(b - mid, 1.0 / k);
    result += integrate(
        [&f, b, k](double u) {
          double x = b - std::pow(u, k);
          if (x >= b) return 0.0;
          return f(x) * k * std::pow(u, k - 1.0);
        },
        0.0, top, split_tol);
  } else {
    result += integrate(f, mid, b, split_tol);
  }
  return result;
}

double integrate_weighted(const std::function<double(double)>& h, double a, double b,
                          double tol, double p_lo, double p_hi) {
  if (p_lo >= 1.0 || p_hi >= 1.0)
    throw DomainError("integrate_weighted: non-integrable endpoint power");
  if (a > b) return -integrate_weighted(h, b, a, tol, p_hi, p_lo);
  if (a == b) return 0.0;

  double mid = 0.5 * (a + b);
  double split_tol = tol / 2.0;
  double result = 0.0;

  if (p_lo != 0.0) {
    double k = edge_order(p_lo);
    double top = std::pow(mid - a, 1.0 / k);
    // x = a + u^k keeps the offset exact, so the weight u^{-k p} never
    // suffers the absorption that x - a would.
    double expo = k * (1.0 - p_lo) - 1.0;
    result += integrate(
        [&h, a, b, k, p_hi, expo](double u) {
          double s = std::pow(u, k);
          double hi = p_hi == 0.0 ? 1.0 : std::pow(b - (a + s), -p_hi);
          return h(a + s) * std::pow(u, expo) * hi * k;
        },
        0.0, top, split_tol);
  } else {
    result += integrate(
        [&h, b, p_hi](double x) {
          return h(x) * (p_hi == 0.0 ? 1.0 : std::pow(b - x, -p_hi));
        },
        a, mid, split_tol);
  }

  if (p_hi != 0.0) {
    double k = edge_order(p_hi);
    double top = std::pow(b - mid, 1.0 / k);
    double expo = k * (1.0 - p_hi) - 1.0;
    result += integrate(
        [&h, a, b, k, p_lo, expo](double u) {
          double s = std::pow(u, k);
          double lo = p_lo == 0.0 ? 1.0 : std::pow((b - s) - a, -p_lo);
          return h(b - s) * std::pow(u, expo) * lo * k;
        },
        0.0, top, split_tol);
  } else {
    result += integrate(
        [&h, a, p_lo](double x) {
          return h(x) * (p_lo == 0.0 ? 1.0 : std::pow(x - a, -p_lo));
        },
        mid, b, split_tol);
  }
  return result;
}

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
  if (f.values.size() < 2 || g.values.size() < 2)
    throw InvalidGrid("convolve: grids need at least two samples");
  double scale = std::max(std::fabs(f.step), std::fabs(g.step));
  if (std::fabs(f.step - g.step) > 1e-12 * scale)
    throw GridMismatch("convolve: grid steps differ");

  std::size_t nf = f.values.size();
  std::size_t ng = g.values.size();
  std::vector<double> grev(ng);
  for (std::size_t j = 0; j < ng; ++j) grev[j] = g.values[ng - 1 - j];

  GridFunction out;
  out.start = f.start + g.start;
  out.step = f.step;
  out.values.assign(nf + ng - 1, 0.0);
  for (std::size_t n = 0; n < out.values.size(); ++n) {
    std::size_t i_lo = n >= ng - 1 ? n - (ng - 1) : 0;
    std::size_t i_hi = std::min(n, nf - 1);
    std::size_t count = i_hi - i_lo + 1;
    double s = simd::dot(f.values.data() + i_lo, grev.data() + (ng - 1 - n + i_lo), count);
    // Trapezoid endpoint halving on the common support [i_lo, i_hi].
    s -= 0.5 * (f.values[i_lo] * g.values[n - i_lo] + f.values[i_hi] * g.values[n - i_hi]);
    out.values[n] = f.step * s;
  }
  return out;
}

LaplaceResult laplace_eval(const GridFunction& f, double lambda,
                           std::optional<ExponentialTail> tail) {
  if (!(lambda > 0.0)) throw DomainError("laplace_eval: lambda must be positive");
  if (f.values.size() < 2) throw InvalidGrid("laplace_eval: grid too short");
  // Each sample owns the cell [t_k - step/2, t_k + step/2].
  double acc = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    acc += f.values[k] * std::exp(-lambda * f.time_at(k));
  }
  LaplaceResult res;
  res.value = f.step * acc;
  double t_last = f.time_at(f.values.size() - 1);
  double last_term = f.step * std::fabs(f.values.back()) * std::exp(-lambda * t_last);
  if (tail) {
    double r = tail->rate;
    res.value += f.values.back() * std::exp(-lambda * t_last) *
                 std::exp(-(lambda + r) * 0.5 * f.step) / (lambda + r);
  } else {
    res.coverage_warning = last_term > 1e-9 * std::max(std::fabs(res.value), 1e-300);
  }
  return res;
}

InversionResult laplace_invert(const std::function<double(double)>& phi, double t,
                               int order) {
  if (order < 8 || order > 20 || order % 2 != 0)
    throw DomainError("laplace_invert: order must be even in [8, 20]");
  if (!(t > 0.0)) throw DomainError("laplace_invert: t must be positive");

  // 20! and below are exact in the 64-bit long double mantissa.
  static const std::array<long double, 21> fact = [] {
    std::array<long double, 21> f{};
    f[0] = 1.0L;
    for (int i = 1; i <= 20; ++i) f[i] = f[i - 1] * i;
    return f;
  }();

  auto stehfest = [&phi, t](int n) {
    int m = n / 2;
    long double ln2_over_t = 0.6931471805599453094172321214581766L / static_cast<long double>(t);
    long double acc = 0.0L;
    for (int k = 1; k <= n; ++k) {
      long double vk = 0.0L;
      for (int j = (k + 1) / 2; j <= std::min(k, m); ++j) {
        long double term = std::pow(static_cast<long double>(j), m) * fact[2 * j] /
                           (fact[m - j] * fact[j] * fact[j - 1] * fact[k - j] * fact[2 * j - k]);
        vk += term;
      }
      if ((m + k) % 2 != 0) vk = -vk;
      acc += vk * static_cast<long double>(phi(static_cast<double>(k * ln2_over_t)));
    }
    return static_cast<double>(ln2_over_t * acc);
  };

  double value = stehfest(order);
  double prev = stehfest(order - 2);
  double spread = std::fabs(value - prev) / std::max(std::fabs(value), 1e-300);
  if (spread > 0.10)
    throw UnstableInversion("laplace_invert: consecutive-order spread exceeds 10%");
  return {value, spread};
}

double ks_statistic(const std::vector<double>& sorted_samples,
                    const std::function<double(double)>& cdf) {
  if (sorted_samples.empty()) throw EmptySample("ks_statistic: no samples");
  double n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    double F = cdf(sorted_samples[i]);
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(F - lo, hi - F));
  }
  return d;
}

}  // namespace argmin
