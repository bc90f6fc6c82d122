#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "argmin/numerics.hpp"
#include "argmin/rng.hpp"

namespace argmin {

struct CheckResult {
  std::string description;
  FitReport report;
};

struct Experiment {
  std::string name;
  std::map<std::string, std::string> params;
  std::size_t replicas = 0;
  double dt = 0.0;
  double horizon = 0.0;
  SeedSpec seed;
  std::vector<CheckResult> checks;

  bool passed() const;
};

// Two-sample Kolmogorov-Smirnov statistic; copies are sorted internally.
double two_sample_ks(std::vector<double> xs, std::vector<double> ys);

enum class PathDriver { brownian, cauchy };

// Marginal of the argmin location at t_eval across independent paths,
// KS-tested against the arcsine CDF (also the Cauchy-driven law).
Experiment exp_stationary_marginal(std::size_t samples, double t_eval, double dt,
                                   SeedSpec seed, PathDriver driver = PathDriver::brownian);

// Rejection-conditions stationary paths into |alpha_0 - x0| < 0.005, then
// follows the location over time t: atom frequency vs the no-jump survival
// mass and KS of the continuous part against the regime density.
Experiment exp_transition_kernel(double x0, double t, std::size_t samples, double dt,
                                 SeedSpec seed);

// (a,b)-minima of long paths vs the renewal laws: gap mean, gap KS against
// the convolution-series density, first-arrival mean, delay KS, and the
// successive-gap correlation as an independence proxy.
Experiment exp_renewal_gaps(double a, double b, double horizon, double dt, SeedSpec seed);

// Two-sample KS for the three distributional identities tying the first
// (1,1)-minimum to ladder times: T1-1 vs J+J', T1 vs J+1{J<1}Delta,
// T1-1 vs J+1{J<=U^2}Delta.
Experiment exp_identities_in_law(std::size_t samples, double dt, SeedSpec seed);

// Gap anatomy vs the independent-pieces law: (G-T), (T+ - D) against the J
// distribution, (D-G) against its closed density, geometric N, meander
// increment moments, and the first-minimum level moments.
Experiment exp_decomposition(std::size_t samples, double dt, SeedSpec seed);

struct SuiteConfig {
  std::vector<std::string> experiments;  // empty = none, {"default"} = all
  std::uint64_t master_seed = 42;
  double dt = 1e-3;
  std::size_t samples = 0;  // 0 = per-experiment defaults
  int threads = 1;
  bool timings = false;
};

struct SuiteReport {
  std::vector<Experiment> experiments;
  std::vector<double> runtime_seconds;  // parallel to experiments
  bool all_passed = true;
};

// Runs the selected experiments replica-parallel with deterministic
// substreams; merge order is fixed by stream index, so reports are
// byte-identical across thread counts.
SuiteReport run_suite(const SuiteConfig& config);

// JSON rendering; runtime_seconds is emitted as null unless timings is set,
// keeping repeated runs byte-identical.
std::string suite_report_json(const SuiteReport& report, int precision, bool timings);

}  // namespace argmin
