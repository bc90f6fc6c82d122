#include "argmin/pathsim.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <utility>

#include "argmin/errors.hpp"

namespace argmin {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t step_count(double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon >= dt)) {
    throw InvalidGrid("simulate: need dt > 0 and horizon >= dt");
  }
  // The -1e-9 fuzz keeps horizon/dt from ceiling up when the quotient is an
  // integer up to rounding (e.g. 1.0/1e-3).
  double raw = std::ceil(horizon / dt - 1e-9);
  return static_cast<std::size_t>(raw);
}

void validate_stable_params(double alpha, double beta) {
  if (!(alpha > 0.0) || !(alpha <= 2.0) || !(beta >= -1.0) || !(beta <= 1.0)) {
    throw DomainError("stable: need alpha in (0,2] and beta in [-1,1]");
  }
}

}  // namespace

IncrementModel IncrementModel::gaussian_model() {
  IncrementModel m;
  m.kind = Kind::gaussian;
  m.theta = 0.5;
  return m;
}

IncrementModel IncrementModel::rademacher_model() {
  IncrementModel m;
  m.kind = Kind::rademacher;
  m.theta = 0.5;
  return m;
}

IncrementModel IncrementModel::generic_continuous_model(
    std::function<double(Rng&)> sampler, double theta) {
  if (!sampler) {
    throw DomainError("generic_continuous_model: sampler required");
  }
  if (!(theta > 0.0) || !(theta < 1.0)) {
    throw DomainError("generic_continuous_model: need theta in (0,1)");
  }
  IncrementModel m;
  m.kind = Kind::generic_continuous;
  m.sampler = std::move(sampler);
  m.theta = theta;
  return m;
}

IncrementModel IncrementModel::stable_model(double alpha, double beta) {
  validate_stable_params(alpha, beta);
  IncrementModel m;
  m.kind = Kind::stable;
  m.alpha = alpha;
  m.beta = beta;
  return m;
}

SampledPath simulate_brownian(double horizon, double dt, SeedSpec seed) {
  std::size_t n = step_count(horizon, dt);
  SampledPath path;
  path.t0 = 0.0;
  path.dt = dt;
  path.values.resize(n + 1);
  path.values[0] = 0.0;
  Rng rng(seed);
  double scale = std::sqrt(dt);
  for (std::size_t k = 0; k < n; ++k) {
    path.values[k + 1] = path.values[k] + scale * rng.normal();
  }
  return path;
}

SampledPath simulate_walk(const IncrementModel& model, std::size_t n, SeedSpec seed) {
  if (model.kind == IncrementModel::Kind::stable) {
    throw ModelMismatch("simulate_walk: stable increments need simulate_stable");
  }
  if (n < 1) {
    throw DomainError("simulate_walk: need n >= 1");
  }
  if (model.kind == IncrementModel::Kind::generic_continuous && !model.sampler) {
    throw DomainError("simulate_walk: generic model without sampler");
  }
  SampledPath path;
  path.t0 = 0.0;
  path.dt = 1.0;
  path.values.resize(n + 1);
  path.values[0] = 0.0;
  Rng rng(seed);
  for (std::size_t k = 0; k < n; ++k) {
    double inc = 0.0;
    switch (model.kind) {
      case IncrementModel::Kind::gaussian:
        inc = rng.normal();
        break;
      case IncrementModel::Kind::rademacher:
        inc = static_cast<double>(rng.sign());
        break;
      case IncrementModel::Kind::generic_continuous:
        inc = model.sampler(rng);
        break;
      case IncrementModel::Kind::stable:
        break;  // unreachable, rejected above
    }
    path.values[k + 1] = path.values[k] + inc;
  }
  return path;
}

SampledPath simulate_stable(double alpha, double beta, double horizon, double dt,
                            SeedSpec seed) {
  validate_stable_params(alpha, beta);
  if (alpha < 1.0 && (beta == 1.0 || beta == -1.0)) {
    throw SubordinatorRejected("simulate_stable: X or -X is a subordinator");
  }
  std::size_t n = step_count(horizon, dt);
  SampledPath path;
  path.t0 = 0.0;
  path.dt = dt;
  path.values.resize(n + 1);
  path.values[0] = 0.0;
  Rng rng(seed);
  double scale = std::pow(dt, 1.0 / alpha);
  // At alpha=1 the one-parameter scaling breaks and X_{dt} gathers an extra
  // deterministic drift (2 beta / pi) dt log dt.
  double drift = (alpha == 1.0 && beta != 0.0)
                     ? (2.0 * beta / kPi) * dt * std::log(dt)
                     : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    path.values[k + 1] = path.values[k] + scale * rng.stable(alpha, beta) + drift;
  }
  return path;
}

double positivity_parameter(double alpha, double beta) {
  validate_stable_params(alpha, beta);
  if (beta == 0.0) {
    return 0.5;
  }
  if (alpha == 2.0) {
    return 0.5;  // tan(pi) = 0, skew irrelevant
  }
  if (alpha == 1.0) {
    // tan(pi/2) blows up; the formula's limit is the boundary value.
    return beta > 0.0 ? 1.0 : 0.0;
  }
  if (alpha < 1.0 && (beta == 1.0 || beta == -1.0)) {
    // arctan(tan(pi alpha/2)) = pi alpha/2 exactly here; return the boundary
    // value rather than a float one ulp off it.
    return beta > 0.0 ? 1.0 : 0.0;
  }
  return 0.5 + std::atan(beta * std::tan(kPi * alpha / 2.0)) / (kPi * alpha);
}

void write_path(const SampledPath& path, std::ostream& out) {
  auto put_f64 = [&out](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) {
      buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFFu);
    }
    out.write(reinterpret_cast<const char*>(buf), 8);
  };
  auto put_u64 = [&out](std::uint64_t bits) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) {
      buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFFu);
    }
    out.write(reinterpret_cast<const char*>(buf), 8);
  };
  put_f64(path.t0);
  put_f64(path.dt);
  put_u64(static_cast<std::uint64_t>(path.steps()));
  for (double v : path.values) {
    put_f64(v);
  }
  if (!out) {
    throw Error("write_path: stream failure");
  }
}

SampledPath read_path(std::istream& in) {
  auto get_u64 = [&in]() {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) {
      throw InvalidGrid("read_path: truncated stream");
    }
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
      bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    }
    return bits;
  };
  auto get_f64 = [&get_u64]() {
    std::uint64_t bits = get_u64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  };
  SampledPath path;
  path.t0 = get_f64();
  path.dt = get_f64();
  std::uint64_t n = get_u64();
  if (!(path.dt > 0.0) || n > (1ull << 40)) {
    throw InvalidGrid("read_path: corrupt header");
  }
  path.values.resize(static_cast<std::size_t>(n) + 1);
  for (auto& v : path.values) {
    v = get_f64();
  }
  return path;
}

}  // namespace argmin
