#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "argmin/rng.hpp"

namespace argmin {

struct SampledPath {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> values;  // values[0] is the value at t0

  std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
  double horizon() const { return static_cast<double>(steps()) * dt; }
};

struct IncrementModel {
  enum class Kind { gaussian, rademacher, generic_continuous, stable };

  Kind kind = Kind::gaussian;
  // generic_continuous: draws one increment; theta is the walk's common
  // positivity probability P(S_n > 0), needed by the chain laws.
  std::function<double(Rng&)> sampler;
  double theta = 0.5;
  // stable:
  double alpha = 2.0;
  double beta = 0.0;

  static IncrementModel gaussian_model();
  static IncrementModel rademacher_model();
  static IncrementModel generic_continuous_model(std::function<double(Rng&)> sampler,
                                                 double theta);
  static IncrementModel stable_model(double alpha, double beta);
};

// Partial sums of sqrt(dt)-scaled standard normals; length ceil(horizon/dt)+1.
SampledPath simulate_brownian(double horizon, double dt, SeedSpec seed);

// Partial sums S_0..S_n at dt=1. Throws ModelMismatch for a stable model.
SampledPath simulate_walk(const IncrementModel& model, std::size_t n, SeedSpec seed);

// Stable Levy path: Chambers-Mallows-Stuck increments scaled by dt^{1/alpha}
// (alpha=1 adds the (2 beta/pi) dt log dt drift of the scaling relation).
// Throws SubordinatorRejected when X or -X would be a subordinator.
SampledPath simulate_stable(double alpha, double beta, double horizon, double dt,
                            SeedSpec seed);

// rho = 1/2 + arctan(beta tan(pi alpha/2)) / (pi alpha).
double positivity_parameter(double alpha, double beta);

// Binary dump: header (t0 f64, dt f64, n u64) then n+1 f64 values, little-endian.
void write_path(const SampledPath& path, std::ostream& out);
SampledPath read_path(std::istream& in);

}  // namespace argmin
