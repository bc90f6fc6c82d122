#include "argmin/laws.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "argmin/errors.hpp"
#include "argmin/numerics.hpp"
#include "argmin/pathsim.hpp"

namespace argmin {

namespace {

constexpr double kPi = 3.14159265358979323846;

double pos(double v) { return v > 0.0 ? v : 0.0; }

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw DomainError(std::string(what) + ": level outside [0,1]");
  }
}

// Density part of the transition kernel over time t, started at x, evaluated
// at y. Total in y: zero off-support. The three regimes share this routine so
// that kernel composition never allocates per-point kernels.
double brownian_density_point(double x, double t, double y) {
  if (!(y > 0.0) || !(y < 1.0)) {
    return 0.0;
  }
  if (t > 1.0) {
    return 1.0 / (kPi * std::sqrt(y * (1.0 - y)));
  }
  if (t <= x) {
    double w = y + t - 1.0;
    if (w <= 0.0) {
      return 0.0;
    }
    if (x == 1.0) {
      // The general form below is 0/0 at the left support edge; started from
      // 1 the kernel is the arcsine law squeezed into (1-t, 1).
      return 1.0 / (kPi * std::sqrt(w * (1.0 - y)));
    }
    double denom = y + t - x;
    assert(denom > 0.0);
    return std::sqrt(w) / (kPi * denom * std::sqrt(1.0 - y));
  }
  double denom = y + t - x;
  assert(denom > 0.0);
  double bracket = std::sqrt((1.0 - x) * (t - x)) + std::sqrt(y * pos(y + t - 1.0));
  return bracket / (kPi * denom * std::sqrt(y * (1.0 - y)));
}

double stable_density_point(double rho, double x, double t, double y) {
  if (!(y > 0.0) || !(y < 1.0)) {
    return 0.0;
  }
  double sp = std::sin(kPi * rho) / kPi;
  if (t > 1.0) {
    return sp * std::pow(y, -rho) * std::pow(1.0 - y, rho - 1.0);
  }
  if (t <= x) {
    double w = y + t - 1.0;
    if (w <= 0.0) {
      return 0.0;
    }
    if (x == 1.0) {
      return sp * std::pow(w, -rho) * std::pow(1.0 - y, rho - 1.0);
    }
    double denom = y + t - x;
    assert(denom > 0.0);
    return sp * std::pow(w, 1.0 - rho) * std::pow(1.0 - y, rho - 1.0) / denom;
  }
  double denom = y + t - x;
  assert(denom > 0.0);
  double bracket = std::pow(t - x, rho) * std::pow(1.0 - x, 1.0 - rho) +
                   std::pow(y, rho) * std::pow(pos(y + t - 1.0), 1.0 - rho);
  return sp * std::pow(y, -rho) * std::pow(1.0 - y, rho - 1.0) * bracket / denom;
}

// Shared regime layout; the two kernels differ only in the pointwise formula
// and the edge exponents (rho, 1-rho). Alongside the density each regime
// records its exact edge factoring: every branch of both kernels is a sum of
// terms sin(pi rho)/pi * smooth(y) * (y-a)^{-p_lo} (b-y)^{-p_hi} with smooth
// bounded, so the mass integrals never touch the assembled density.
template <typename Density>
MixedKernel assemble_kernel(double x, double t, double rho, Density&& density_point,
                            double atom_mass) {
  const double sp = std::sin(kPi * rho) / kPi;
  MixedKernel kernel;
  kernel.density = std::forward<Density>(density_point);
  if (t > 1.0) {
    kernel.support_lo = 0.0;
    kernel.support_hi = 1.0;
    kernel.edge_power_lo = rho;
    kernel.edge_power_hi = 1.0 - rho;
    kernel.mass_terms.push_back(
        {[sp](double) { return sp; }, 0.0, 1.0, rho, 1.0 - rho});
    return kernel;
  }
  if (t <= x) {
    kernel.support_lo = 1.0 - t;
    kernel.support_hi = 1.0;
    kernel.edge_power_hi = 1.0 - rho;
    if (x == 1.0) {
      kernel.edge_power_lo = rho;  // squeezed arcsine blows up at both edges
      kernel.mass_terms.push_back(
          {[sp](double) { return sp; }, 1.0 - t, 1.0, rho, 1.0 - rho});
    } else {
      kernel.edge_power_lo = -(1.0 - rho);  // vanishing fractional edge
      kernel.atom = MixedKernel::Atom{x - t, atom_mass};
      kernel.mass_terms.push_back({[sp, x, t](double y) { return sp / (y + t - x); },
                                   1.0 - t, 1.0, -(1.0 - rho), 1.0 - rho});
    }
    return kernel;
  }
  kernel.support_lo = 0.0;
  kernel.support_hi = 1.0;
  kernel.edge_power_lo = rho;
  kernel.edge_power_hi = 1.0 - rho;
  if (t < 1.0) {
    kernel.kinks.push_back(1.0 - t);
  }
  // The bracket splits into the no-revival part, supported on all of (0,1),
  // and the revival part that switches on at 1-t with a vanishing fractional
  // edge; as a sum of weighted terms the kink needs no special handling.
  const double lead = sp * std::pow(t - x, rho) * std::pow(1.0 - x, 1.0 - rho);
  kernel.mass_terms.push_back(
      {[lead, x, t](double y) { return lead / (y + t - x); }, 0.0, 1.0, rho, 1.0 - rho});
  kernel.mass_terms.push_back({[sp, x, t](double y) { return sp / (y + t - x); },
                               1.0 - t, 1.0, -(1.0 - rho), 1.0 - rho});
  return kernel;
}

}  // namespace

double kernel_mass(const MixedKernel& kernel, double tol) {
  if (!(tol > 0.0)) {
    throw DomainError("kernel_mass: tolerance must be positive");
  }
  double mass = kernel.atom ? kernel.atom->mass : 0.0;
  if (!kernel.mass_terms.empty()) {
    double piece_tol = tol / static_cast<double>(kernel.mass_terms.size());
    for (const auto& term : kernel.mass_terms) {
      mass += integrate_weighted(term.smooth, term.a, term.b, piece_tol, term.p_lo,
                                 term.p_hi);
    }
    return mass;
  }
  std::vector<double> cuts;
  cuts.push_back(kernel.support_lo);
  for (double k : kernel.kinks) {
    if (k > kernel.support_lo && k < kernel.support_hi) {
      cuts.push_back(k);
    }
  }
  cuts.push_back(kernel.support_hi);
  std::sort(cuts.begin(), cuts.end());
  double piece_tol = tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // Interior cuts are square-root-type kinks; -0.5 asks for the mild
    // flattening substitution on that side.
    double p_lo = (i == 0) ? kernel.edge_power_lo : -0.5;
    double p_hi = (i + 2 == cuts.size()) ? kernel.edge_power_hi : -0.5;
    mass += integrate_singular(kernel.density, cuts[i], cuts[i + 1], piece_tol, p_lo,
                               p_hi);
  }
  return mass;
}

double arcsine_density(double x) {
  if (!(x > 0.0) || !(x < 1.0)) {
    throw DomainError("arcsine_density: x outside (0,1)");
  }
  return 1.0 / (kPi * std::sqrt(x * (1.0 - x)));
}

double arcsine_cdf(double x) {
  if (x <= 0.0) {
    return 0.0;
  }
  if (x >= 1.0) {
    return 1.0;
  }
  return (2.0 / kPi) * std::asin(std::sqrt(x));
}

double survival_no_jump(double x, double y) {
  check_unit_interval(x, "survival_no_jump");
  check_unit_interval(y, "survival_no_jump");
  if (y > x) {
    throw DomainError("survival_no_jump: need y <= x");
  }
  if (x == y) {
    return 1.0;
  }
  return std::sqrt((1.0 - x) / (1.0 - y));
}

double jump_rate_to_one(double x) {
  if (!(x >= 0.0) || !(x < 1.0)) {
    throw DomainError("jump_rate_to_one: x outside [0,1)");
  }
  return 1.0 / (2.0 * (1.0 - x));
}

double levy_measure_from_zero(double y) {
  if (!(y > 0.0) || !(y < 1.0)) {
    throw DomainError("levy_measure_from_zero: y outside (0,1)");
  }
  return 1.0 / std::sqrt(2.0 * kPi * y * y * y * (1.0 - y));
}

double hit_one_density(double x, double t) {
  if (!(x > 0.0) || !(x < 1.0) || !(t > 0.0) || !(t <= x)) {
    throw DomainError("hit_one_density: need 0 < t <= x < 1");
  }
  return jump_rate_to_one(x - t) * survival_no_jump(x, x - t);
}

MixedKernel transition_kernel(double x, double t) {
  check_unit_interval(x, "transition_kernel");
  if (!(t > 0.0)) {
    throw DomainError("transition_kernel: time must be positive");
  }
  double atom_mass = (t <= x && x < 1.0) ? survival_no_jump(x, x - t) : 0.0;
  return assemble_kernel(
      x, t, 0.5, [x, t](double y) { return brownian_density_point(x, t, y); },
      atom_mass);
}

double chapman_kolmogorov_defect(double x, double s, double t, std::size_t grid) {
  check_unit_interval(x, "chapman_kolmogorov_defect");
  if (!(s > 0.0) || !(t > 0.0) || grid < 2) {
    throw DomainError("chapman_kolmogorov_defect: need s, t > 0 and grid >= 2");
  }
  MixedKernel first = transition_kernel(x, s);
  MixedKernel direct = transition_kernel(x, s + t);
  MixedKernel from_atom;
  double atom_mass = 0.0;
  if (first.atom) {
    atom_mass = first.atom->mass;
    from_atom = transition_kernel(first.atom->location, t);
  }

  // z-integration pieces of the first kernel's density: its own edge powers
  // at the support limits, square-root kinks at interior cuts, and an extra
  // cut at z = t where the second kernel switches regime.
  std::vector<double> cuts;
  cuts.push_back(first.support_lo);
  for (double k : first.kinks) {
    cuts.push_back(k);
  }
  if (t > first.support_lo && t < first.support_hi) {
    cuts.push_back(t);
  }
  cuts.push_back(first.support_hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double defect = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    double y = (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
    double composed = 0.0;
    if (first.atom) {
      composed += atom_mass * from_atom.density(y);
    }
    auto integrand = [&first, t, y](double z) {
      return first.density(z) * brownian_density_point(z, t, y);
    };
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      double p_lo = (c == 0) ? first.edge_power_lo : -0.5;
      double p_hi = (c + 2 == cuts.size()) ? first.edge_power_hi : -0.5;
      composed += integrate_singular(integrand, cuts[c], cuts[c + 1], 1e-7, p_lo, p_hi);
    }
    if (y + t <= 1.0) {
      // Mass sitting at z = y + t that rides the second kernel's atom down.
      composed += first.density(y + t) * survival_no_jump(y + t, y);
    }
    defect = std::max(defect, std::fabs(composed - direct.density(y)));
  }
  return defect;
}

IntertwiningGap intertwining_gap(double t) {
  if (!(t > 0.0) || !(t <= 1.0)) {
    throw DomainError("intertwining_gap: need t in (0,1]");
  }
  IntertwiningGap gap;
  gap.lhs = std::sqrt(kPi * (1.0 - t) / 2.0);
  // weight (y-(1-t))^{1/2} (1-y)^{-1/2}; the smooth factor is 1/sqrt(y)
  double integral = integrate_weighted([](double y) { return 1.0 / std::sqrt(y); },
                                       1.0 - t, 1.0, 1e-12, -0.5, 0.5);
  gap.rhs = gap.lhs + integral / std::sqrt(2.0 * kPi);
  return gap;
}

StableParams::StableParams(double alpha_in, double beta_in)
    : alpha(alpha_in), beta(beta_in), rho(positivity_parameter(alpha_in, beta_in)) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw SubordinatorRejected("StableParams: X or -X is a subordinator");
  }
}

double stable_stationary_density(const StableParams& params, double x) {
  if (!(x > 0.0) || !(x < 1.0)) {
    throw DomainError("stable_stationary_density: x outside (0,1)");
  }
  return std::sin(kPi * params.rho) / kPi * std::pow(x, -params.rho) *
         std::pow(1.0 - x, params.rho - 1.0);
}

double stable_jump_rate(const StableParams& params, double x) {
  if (!(x >= 0.0) || !(x < 1.0)) {
    throw DomainError("stable_jump_rate: x outside [0,1)");
  }
  return (1.0 - params.rho) / (1.0 - x);
}

double stable_survival_no_jump(const StableParams& params, double x, double y) {
  check_unit_interval(x, "stable_survival_no_jump");
  check_unit_interval(y, "stable_survival_no_jump");
  if (y > x) {
    throw DomainError("stable_survival_no_jump: need y <= x");
  }
  if (x == y) {
    return 1.0;
  }
  return std::pow((1.0 - x) / (1.0 - y), 1.0 - params.rho);
}

MixedKernel stable_transition_kernel(const StableParams& params, double x, double t) {
  check_unit_interval(x, "stable_transition_kernel");
  if (!(t > 0.0)) {
    throw DomainError("stable_transition_kernel: time must be positive");
  }
  double rho = params.rho;
  double atom_mass =
      (t <= x && x < 1.0) ? stable_survival_no_jump(params, x, x - t) : 0.0;
  return assemble_kernel(
      x, t, rho, [rho, x, t](double y) { return stable_density_point(rho, x, t, y); },
      atom_mass);
}

KernelTabulation tabulate_kernel(const MixedKernel& kernel, std::size_t points) {
  if (points < 1) {
    throw DomainError("tabulate_kernel: need at least one point");
  }
  KernelTabulation tab;
  tab.y.resize(points);
  tab.density.resize(points);
  double span = kernel.support_hi - kernel.support_lo;
  for (std::size_t i = 0; i < points; ++i) {
    double y = kernel.support_lo +
               span * (static_cast<double>(i) + 0.5) / static_cast<double>(points);
    tab.y[i] = y;
    tab.density[i] = kernel.density(y);
  }
  tab.atom = kernel.atom;
  return tab;
}

}  // namespace argmin
