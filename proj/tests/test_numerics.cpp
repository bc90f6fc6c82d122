#include "doctest.h"

#include <cmath>
#include <vector>

#include "argmin/errors.hpp"
#include "argmin/numerics.hpp"

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("erf matches reference values") {
  // mpmath, 50 digits, rounded to double
  CHECK(argmin::erf(0.3) == doctest::Approx(0.328626759459127428).epsilon(1e-15));
  CHECK(argmin::erf(0.5) == doctest::Approx(0.520499877813046538).epsilon(1e-15));
  CHECK(argmin::erf(1.0) == doctest::Approx(0.842700792949714869).epsilon(1e-15));
  CHECK(argmin::erf(2.0) == doctest::Approx(0.995322265018952734).epsilon(1e-15));
  CHECK(argmin::erf(0.0) == 0.0);
  CHECK(argmin::erf(-1.0) == -argmin::erf(1.0));
}

TEST_CASE("erfc complements erf and stays accurate in the far tail") {
  for (double x : {0.1, 0.7, 1.3, 2.5}) {
    CHECK(argmin::erfc(x) == doctest::Approx(1.0 - argmin::erf(x)).epsilon(1e-14));
  }
  CHECK(argmin::erfc(6.0) == doctest::Approx(std::erfc(6.0)).epsilon(1e-12));
  CHECK(argmin::erfc(6.0) > 0.0);
}

TEST_CASE("fit reports derive pass from value vs threshold") {
  const auto good = argmin::make_fit_report(argmin::StatisticName::KS, 0.01, 100, 0.02);
  CHECK(good.pass);
  const auto bad = argmin::make_fit_report(argmin::StatisticName::mean_diff, 0.03, 100, 0.02);
  CHECK_FALSE(bad.pass);
  CHECK(std::string(argmin::statistic_name_label(argmin::StatisticName::KS)) == "KS");
  CHECK(std::string(argmin::statistic_name_label(argmin::StatisticName::chi_square)) ==
        "chi_square");
  CHECK(std::string(argmin::statistic_name_label(argmin::StatisticName::mean_diff)) ==
        "mean_diff");
}

TEST_CASE("adaptive quadrature hits analytic integrals") {
  const double cubic = argmin::integrate([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12);
  CHECK(cubic == doctest::Approx(4.0).epsilon(1e-12));
  const double sine = argmin::integrate([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
  CHECK(sine == doctest::Approx(2.0).epsilon(1e-12));
  const double expdec =
      argmin::integrate([](double x) { return std::exp(-x); }, 0.0, 30.0, 1e-12);
  CHECK(expdec == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("singular quadrature flattens endpoint power blowups") {
  const double half = argmin::integrate_singular(
      [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 0.5, 0.0);
  CHECK(half == doctest::Approx(2.0).epsilon(1e-9));
  const double beta_half = argmin::integrate_singular(
      [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0, 1.0, 1e-10, 0.5, 0.5);
  CHECK(beta_half == doctest::Approx(kPi).epsilon(1e-9));
  // shifted interval, singular only at the right edge
  const double edge = argmin::integrate_singular(
      [](double x) { return 1.0 / std::cbrt(2.0 - x); }, 1.0, 2.0, 1e-10, 0.0, 1.0 / 3.0);
  CHECK(edge == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("weighted quadrature reaches tight tolerances at O(1) edges") {
  // beta(1/2,1/2): pure weight, smooth factor 1
  const double beta_half = argmin::integrate_weighted([](double) { return 1.0; }, 0.0, 1.0,
                                                      1e-12, 0.5, 0.5);
  CHECK(beta_half == doctest::Approx(kPi).epsilon(1e-12));
  // beta(3/2,1/2) on a shifted interval: vanishing left edge, blow-up right edge
  const double beta_32 = argmin::integrate_weighted([](double) { return 1.0; }, 1.0, 2.0,
                                                    1e-12, -0.5, 0.5);
  CHECK(beta_32 == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  // non-constant smooth factor: int x * x^{-1/2} over [0,2]
  const double grown = argmin::integrate_weighted([](double x) { return x; }, 0.0, 2.0,
                                                  1e-12, 0.5, 0.0);
  CHECK(grown == doctest::Approx(2.0 * std::sqrt(2.0) * 2.0 / 3.0).epsilon(1e-12));
  // orientation flip negates
  const double flipped = argmin::integrate_weighted([](double) { return 1.0; }, 1.0, 0.0,
                                                    1e-12, 0.5, 0.5);
  CHECK(flipped == doctest::Approx(-kPi).epsilon(1e-12));
}

TEST_CASE("grid convolution reproduces the triangle") {
  argmin::GridFunction box;
  box.start = 0.0;
  box.step = 0.01;
  box.values.assign(101, 1.0);  // indicator of [0,1]
  const auto tri = argmin::convolve(box, box);
  CHECK(tri.size() == 201);
  CHECK(tri.step == doctest::Approx(0.01));
  CHECK(tri.values[50] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(tri.values[100] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tri.values[150] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(tri.values[0] == doctest::Approx(0.0));

  argmin::GridFunction other = box;
  other.step = 0.02;
  CHECK_THROWS_AS((void)argmin::convolve(box, other), argmin::GridMismatch);
}

TEST_CASE("grid Laplace transform with analytic tail") {
  // midpoint samples of cells [0,h], [h,2h], ...: the cell-centered layout
  // the evaluator's Riemann sum is designed for
  argmin::GridFunction f;
  f.start = 5e-4;
  f.step = 1e-3;
  f.values.resize(20000);
  for (std::size_t k = 0; k < f.values.size(); ++k) f.values[k] = std::exp(-f.time_at(k));
  const auto res = argmin::laplace_eval(f, 1.0, argmin::ExponentialTail{1.0});
  CHECK(res.value == doctest::Approx(0.5).epsilon(1e-5));
  CHECK_FALSE(res.coverage_warning);

  argmin::GridFunction flat;
  flat.start = 0.0;
  flat.step = 1e-2;
  flat.values.assign(101, 1.0);
  const auto truncated = argmin::laplace_eval(flat, 0.5);
  CHECK(truncated.coverage_warning);
}

TEST_CASE("Gaver-Stehfest inverts smooth transforms") {
  const auto exp_inv =
      argmin::laplace_invert([](double l) { return 1.0 / (1.0 + l); }, 1.0, 16);
  CHECK(exp_inv.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-7));
  CHECK(exp_inv.spread < 0.1);
  const auto ramp = argmin::laplace_invert([](double l) { return 1.0 / (l * l); }, 2.5, 16);
  CHECK(ramp.value == doctest::Approx(2.5).epsilon(1e-7));
}

TEST_CASE("KS statistic against a known empirical gap") {
  const std::vector<double> sorted{0.25, 0.5, 0.75};
  const double d = argmin::ks_statistic(sorted, [](double x) { return x; });
  CHECK(d == doctest::Approx(0.25).epsilon(1e-12));
  // perfectly placed quantiles halve the distance
  const std::vector<double> centered{0.25, 0.75};
  CHECK(argmin::ks_statistic(centered, [](double x) { return x; }) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("grid function indexing") {
  argmin::GridFunction g;
  g.start = 1.5;
  g.step = 0.25;
  g.values = {0.0, 1.0, 2.0};
  CHECK(g.size() == 3);
  CHECK(g.time_at(2) == doctest::Approx(2.0));
}
