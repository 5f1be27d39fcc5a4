#include <doctest.h>

#include <cmath>
#include <numbers>

#include "genfrac/errors.hpp"
#include "genfrac/laplace_inversion.hpp"
#include "genfrac/relaxation.hpp"
#include "oracles.hpp"

using namespace genfrac;

TEST_SUITE("laplace_inversion") {
  TEST_CASE("elementary pairs") {
    CHECK(invert([](cplx s) { return 1.0 / s; }, 1.0).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(invert([](cplx s) { return 1.0 / (s + 2.0); }, 1.0).value ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
    CHECK(invert([](cplx s) { return 1.0 / std::sqrt(s); }, 1.0).value ==
          doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-10));
  }

  TEST_CASE("relaxation transform against the series oracle") {
    const double a = 0.6;
    const auto F = [&](cplx s) { return std::pow(s, a - 1.0) / (std::pow(s, a) + 1.0); };
    const auto ref = oracle::ml_series(a, 1.0, -1.0);
    REQUIRE(ref);
    CHECK(oracle::rel(invert(F, 1.0).value, *ref) < 1e-10);
  }

  TEST_CASE("grid inversion") {
    const std::vector<double> t1{0.5, 1, 2}, t2{1, 2, 3}, t3{0.1, 1, 10};
    for (const auto& r : invert_grid([](cplx s) { return 1.0 / s; }, t1)) CHECK(r.value == doctest::Approx(1.0));
    const auto lin = invert_grid([](cplx s) { return 1.0 / (s * s); }, t2);
    for (int i = 0; i < 3; ++i) CHECK(lin[i].value == doctest::Approx(t2[i]).epsilon(1e-10));
    const auto ex = invert_grid([](cplx s) { return 1.0 / (s + 1.0); }, t3, {}, {.abscissa = -1.0});
    for (int i = 0; i < 3; ++i) CHECK(oracle::rel(ex[i].value, std::exp(-t3[i])) < 1e-10);
    const std::vector<double> bad{1, 0.5};
    CHECK_THROWS_AS(invert_grid([](cplx s) { return 1.0 / s; }, bad), DomainError);
  }

  TEST_CASE("exponential sums over six decades") {
    const auto F = [](cplx s) { return 2.0 / (s + 0.5) - 1.0 / (s + 3.0) + 0.5 / (s + 0.01); };
    const auto f = [](double t) { return 2 * std::exp(-0.5 * t) - std::exp(-3.0 * t) + 0.5 * std::exp(-0.01 * t); };
    for (double t : geometric_grid(1e-3, 1e3, 25)) {
      const auto r = invert(F, t, {}, {.abscissa = -0.01});
      CHECK(oracle::rel(r.value, f(t)) < 1e-10);
    }
  }

  TEST_CASE("error estimate shrinks as nodes double") {
    const auto F = [](cplx s) { return 1.0 / (std::sqrt(s) + 1.0); };
    double prev = INFINITY;
    for (int n : {16, 32, 64}) {
      ContourConfig cfg;
      cfg.nodes = n;
      cfg.working_tolerance = 1e-3;
      const auto r = invert(F, 1.0, cfg);
      CHECK(r.error < prev);
      prev = r.error;
    }
  }

  TEST_CASE("talbot contour") {
    ContourConfig cfg;
    cfg.method = ContourMethod::FixedTalbot;
    cfg.nodes = 32;
    // The M/2 comparison is pessimistic for Talbot in double precision.
    cfg.working_tolerance = 1e-8;
    CHECK(oracle::rel(invert([](cplx s) { return 1.0 / (s + 1.0); }, 2.0, cfg).value, std::exp(-2.0)) < 1e-10);
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(invert([](cplx s) { return 1.0 / s; }, 0.0), DomainError);
    CHECK_THROWS_AS(invert([](cplx s) { return 1.0 / s; }, -1.0), DomainError);
    ContourConfig bad;
    bad.nodes = 4;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = {};
    bad.working_tolerance = 1e-16;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    CHECK_THROWS_AS(contour_method_from_string("stehfest"), ValidationError);
  }

  TEST_CASE("unattainable tolerance raises AccuracyError") {
    ContourConfig cfg;
    cfg.nodes = 8;
    cfg.working_tolerance = 1e-13;
    CHECK_THROWS_AS(invert([](cplx s) { return 1.0 / (std::pow(s, 0.3) + 1.0); }, 1.0, cfg), AccuracyError);
  }

  TEST_CASE("logarithmic form avoids overflow") {
    // e^{-sqrt s} <-> exp(-1/(4t)) / (2 sqrt(pi) t^{3/2})
    for (double t : {0.02, 0.1, 1.0}) {
      const auto r = invert_log([](cplx s) { return -std::sqrt(s); }, t, {}, {.min_crossing = 1.0 / (4 * t * t)});
      const double exact = std::exp(-1.0 / (4 * t)) / (2 * std::sqrt(std::numbers::pi) * std::pow(t, 1.5));
      CHECK(oracle::rel(r.value, exact) < 1e-9);
    }
  }
}
