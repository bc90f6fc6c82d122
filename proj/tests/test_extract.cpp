#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "argmin/errors.hpp"
#include "argmin/extract.hpp"
#include "argmin/numerics.hpp"
#include "argmin/pathsim.hpp"

namespace {

argmin::SampledPath path_from(double dt, std::vector<double> values) {
  argmin::SampledPath p;
  p.t0 = 0.0;
  p.dt = dt;
  p.values = std::move(values);
  return p;
}

}  // namespace

TEST_CASE("argmin trajectory on a crafted path, ties toward the end") {
  const auto path = path_from(0.25, {0.0, -1.0, -0.5, -0.2, -1.0, 0.3, 0.4, 0.5, -2.0});
  const auto traj = argmin::argmin_trajectory(path, 1.0);
  REQUIRE(traj.samples.size() == 5);
  CHECK(traj.samples[0] == doctest::Approx(1.0));   // tie between idx 1 and 4
  CHECK(traj.samples[1] == doctest::Approx(0.75));
  CHECK(traj.samples[2] == doctest::Approx(0.5));
  CHECK(traj.samples[3] == doctest::Approx(0.25));
  CHECK(traj.samples[4] == doctest::Approx(1.0));
}

TEST_CASE("trajectory window validation") {
  const auto path = path_from(0.25, {0.0, 1.0, 2.0});
  CHECK_THROWS_AS((void)argmin::argmin_trajectory(path, 1.0), argmin::WindowTooLarge);
  const auto odd = path_from(0.3, {0.0, 1.0, 2.0, 3.0, 4.0, 5.0});
  CHECK_THROWS_AS((void)argmin::argmin_trajectory(odd, 1.0), argmin::NonIntegerWindow);
}

TEST_CASE("jump classification on a crafted path") {
  // one deep minimum entering the window while the old one sits mid-window
  std::vector<double> values(17, 0.0);
  values[4] = -1.0;
  values[9] = -2.0;
  const auto traj = argmin::argmin_trajectory(path_from(0.125, std::move(values)), 1.0);
  CHECK(traj.samples[0] == doctest::Approx(0.5));
  CHECK(traj.samples[1] == doctest::Approx(1.0));
  const auto jumps = argmin::detect_jumps(traj);
  REQUIRE(jumps.size() == 1);
  CHECK(jumps[0].kind == argmin::JumpKind::interior_to_one);
  CHECK(jumps[0].from_level == doctest::Approx(0.5));
  CHECK(jumps[0].to_level == doctest::Approx(1.0));
}

TEST_CASE("near-zero departures win the classification tie") {
  argmin::ArgminTrajectory traj;
  traj.dt = 0.125;
  traj.window = 1.0;
  traj.samples = {0.25, 1.0};  // from the renewal edge straight to the right edge
  const auto jumps = argmin::detect_jumps(traj);
  REQUIRE(jumps.size() == 1);
  CHECK(jumps[0].kind == argmin::JumpKind::zero_to_interior);
}

TEST_CASE("interior rises that reach neither edge are anomalies") {
  argmin::ArgminTrajectory traj;
  traj.dt = 0.125;
  traj.window = 1.0;
  traj.samples = {0.5, 0.7};
  const auto jumps = argmin::detect_jumps(traj);
  REQUIRE(jumps.size() == 1);
  CHECK(jumps[0].kind == argmin::JumpKind::anomaly);
}

TEST_CASE("jump stream of a brownian argmin trajectory") {
  const auto path = argmin::simulate_brownian(30.0, 1e-3, {42, 10});
  const auto traj = argmin::argmin_trajectory(path, 1.0);
  const auto jumps = argmin::detect_jumps(traj);
  CHECK(jumps.size() > 10);
  std::size_t anomalies = 0;
  for (const auto& j : jumps) anomalies += j.kind == argmin::JumpKind::anomaly;
  CHECK(static_cast<double>(anomalies) < 0.2 * static_cast<double>(jumps.size()));
  // between jumps the location drifts down at unit speed
  std::size_t next_jump = 0;
  std::vector<double> jump_times;
  for (const auto& j : jumps) jump_times.push_back(j.time);
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    const double rise = traj.samples[k + 1] - (traj.samples[k] - traj.dt);
    if (rise > 2 * traj.dt) continue;
    CHECK(std::abs(rise) <= 2 * traj.dt);
  }
  (void)next_jump;
}

TEST_CASE("two-sided minima of a crafted double well") {
  std::vector<double> values(31);
  for (std::size_t k = 0; k <= 15; ++k) {
    const double t = 0.1 * static_cast<double>(k);
    values[k] = (t - 1.0) * (t - 1.0);
  }
  for (std::size_t k = 16; k <= 30; ++k) {
    const double t = 0.1 * static_cast<double>(k);
    values[k] = (t - 2.2) * (t - 2.2) - 0.01;
  }
  const auto dec = argmin::extract_ab_minima(path_from(0.1, std::move(values)), 0.5, 0.5);
  REQUIRE(dec.T.size() == 2);
  CHECK(dec.T[0] == doctest::Approx(1.0));
  CHECK(dec.T[1] == doctest::Approx(2.2));
  REQUIRE(dec.gaps.size() == 1);
  CHECK(dec.gaps[0].delta == doctest::Approx(1.2));
  CHECK(dec.gaps[0].h_increment == doctest::Approx(-0.01));
  REQUIRE(dec.G.size() == 1);
  REQUIRE(dec.D.size() == 1);
  CHECK(dec.G[0] >= dec.T[0]);
  CHECK(dec.D[0] > dec.G[0]);
  CHECK(dec.D[0] <= dec.T[1]);
  CHECK(dec.gaps[0].n_le >= 1);
}

TEST_CASE("minima extraction needs room on both sides") {
  const auto path = argmin::simulate_brownian(1.5, 1e-2, {3, 0});
  CHECK_THROWS_AS((void)argmin::extract_ab_minima(path, 1.0, 1.0), argmin::HorizonTooShort);
}

TEST_CASE("unit minima of a brownian path repel each other") {
  const auto path = argmin::simulate_brownian(60.0, 1e-3, {42, 11});
  const auto dec = argmin::extract_ab_minima(path, 1.0, 1.0);
  REQUIRE(dec.T.size() >= 5);
  CHECK(std::is_sorted(dec.T.begin(), dec.T.end()));
  for (std::size_t i = 0; i + 1 < dec.T.size(); ++i)
    CHECK(dec.T[i + 1] - dec.T[i] >= 1.0 - 1e-9);
  CHECK(dec.T.front() >= 1.0 - 1e-9);
  CHECK(dec.T.back() <= 59.0 + 1e-9);
  CHECK(dec.gaps.size() == dec.T.size() - 1);

  const auto stats = argmin::gap_statistics(dec);
  REQUIRE(stats.size() == dec.gaps.size());
  for (const auto& s : stats) {
    CHECK(s.g_minus_t >= -1e-12);
    CHECK(s.d_minus_g > 1.0 - 3e-3);
    CHECK(s.d_minus_g < 2.0 + 3e-3);
    CHECK(s.next_t_minus_d >= -1e-12);
    CHECK(s.g_minus_t + s.d_minus_g + s.next_t_minus_d ==
          doctest::Approx(s.delta).epsilon(1e-9));
    CHECK(s.n_le >= 1);
  }
}

TEST_CASE("gap statistics insist on unit windows") {
  const auto path = argmin::simulate_brownian(20.0, 1e-2, {5, 0});
  const auto dec = argmin::extract_ab_minima(path, 0.5, 0.5);
  CHECK_THROWS_AS((void)argmin::gap_statistics(dec), argmin::DomainError);
}

TEST_CASE("first long ladder yields a nonnegative meander segment") {
  const auto path = argmin::simulate_brownian(20.0, 1e-3, {42, 12});
  const auto record = argmin::extract_first_long_ladder(path);
  CHECK(record.J >= 0.0);
  CHECK(record.J < 19.0);
  REQUIRE(record.meander_segment.values.size() == 1001);
  CHECK(record.meander_segment.values[0] == doctest::Approx(0.0));
  double low = 0.0, high = 0.0;
  for (double v : record.meander_segment.values) {
    low = std::min(low, v);
    high = std::max(high, v);
  }
  CHECK(low >= -1e-12);
  CHECK(high > 0.0);
}

TEST_CASE("a sliding path never completes a long excursion") {
  std::vector<double> values(301);
  for (std::size_t k = 0; k <= 300; ++k) values[k] = -0.01 * static_cast<double>(k);
  CHECK_THROWS_AS((void)argmin::extract_first_long_ladder(path_from(0.01, std::move(values))),
                  argmin::NotFound);
}

TEST_CASE("meander endpoints follow the Rayleigh law") {
  std::vector<double> endpoints;
  std::uint64_t stream = 0;
  while (endpoints.size() < 2500 && stream < 4000) {
    const auto path = argmin::simulate_brownian(16.0, 1e-3, {42, 1000 + stream++});
    try {
      endpoints.push_back(argmin::extract_first_long_ladder(path).meander_segment.values.back());
    } catch (const argmin::NotFound&) {
    }
  }
  REQUIRE(endpoints.size() == 2500);
  std::sort(endpoints.begin(), endpoints.end());
  const double d = argmin::ks_statistic(
      endpoints, [](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-0.5 * x * x); });
  CHECK(d < 0.035);
}

TEST_CASE("decomposition csv dump") {
  const auto path = argmin::simulate_brownian(30.0, 1e-3, {42, 13});
  const auto dec = argmin::extract_ab_minima(path, 1.0, 1.0);
  std::ostringstream out;
  argmin::write_decomposition_csv(dec, out);
  const std::string text = out.str();
  CHECK(text.find("T") != std::string::npos);
  CHECK(text.find("delta") != std::string::npos);
  const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  CHECK(lines >= dec.T.size());
}
