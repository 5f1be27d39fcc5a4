#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "genfrac/diffusion.hpp"
#include "genfrac/errors.hpp"
#include "genfrac/inverse_source.hpp"
#include "genfrac/mittag_leffler.hpp"
#include "oracles.hpp"

using namespace genfrac;
using std::numbers::pi;

namespace {

SpectralSource constant_mode(const Domain1D& d, int n, double c = 1.0) {
  return [=](double) {
    std::vector<double> v(d.n_modes, 0.0);
    v[n - 1] = c;
    return v;
  };
}

}  // namespace

TEST_SUITE("diffusion") {
  TEST_CASE("eigensystem") {
    CHECK(eigenvalue({1.0, 4}, 1) == doctest::Approx(pi * pi).epsilon(1e-15));
    CHECK(eigenvalue({pi, 4}, 3) == doctest::Approx(9.0).epsilon(1e-15));
    const auto es = eigensystem({2.0, 16});
    for (std::size_t i = 1; i < es.eigenvalues.size(); ++i) CHECK(es.eigenvalues[i] > es.eigenvalues[i - 1]);
    CHECK_THROWS_AS(eigenvalue({1.0, 4}, 5), DomainError);
    CHECK_THROWS_AS((Domain1D{0.0, 4}.validate()), DomainError);
    CHECK_THROWS_AS((Domain1D{1.0, 0}.validate()), DomainError);
  }

  TEST_CASE("orthonormality by Gauss-Legendre") {
    const Domain1D d{1.7, 8};
    using G = boost::math::quadrature::gauss<double, 30>;
    for (int m = 1; m <= 8; ++m)
      for (int n = 1; n <= 8; ++n) {
        const double ip =
            G::integrate([&](double x) { return eigenfunction(d, m, x) * eigenfunction(d, n, x); }, 0.0, d.L);
        CHECK(std::abs(ip - (m == n ? 1.0 : 0.0)) < 1e-13);
      }
  }

  TEST_CASE("projection") {
    const Domain1D d{1.0, 64};
    const auto p2 = project(d, [&](double x) { return eigenfunction(d, 2, x); });
    for (int n = 1; n <= 64; ++n) CHECK(std::abs(p2.coeffs[n - 1] - (n == 2 ? 1.0 : 0.0)) < 1e-13);

    // int_0^1 x(1-x) sqrt2 sin(n pi x) dx = 2 sqrt2 (1 - (-1)^n) / (n pi)^3
    const auto pq = project(d, [](double x) { return x * (1 - x); });
    for (int n = 1; n <= 64; ++n) {
      const double exact = 2 * std::sqrt(2.0) * (1 - std::pow(-1.0, n)) / std::pow(n * pi, 3);
      CHECK(std::abs(pq.coeffs[n - 1] - exact) < 1e-15);
    }
    // Independent quadrature of the same coefficients.
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    for (int n : {1, 3, 7}) {
      const double q = GK::integrate([&](double x) { return x * (1 - x) * eigenfunction(d, n, x); }, 0.0, 1.0);
      CHECK(std::abs(pq.coeffs[n - 1] - q) < 1e-15);
    }
    const auto z = project(d, [](double) { return 0.0; });
    for (double c : z.coeffs) CHECK(c == 0.0);
  }

  TEST_CASE("projection from samples") {
    const Domain1D d{1.0, 8};
    std::vector<double> s(257);
    for (int j = 0; j < 257; ++j) {
      const double x = j / 256.0;
      s[j] = x * (1 - x);
    }
    const auto p = project_samples(d, s);
    CHECK(std::abs(p.coeffs[0] - 4 * std::sqrt(2.0) / std::pow(pi, 3)) < 1e-5);
    CHECK_THROWS_AS(project_samples(d, std::vector<double>(32, 0.0)), QuadratureError);
  }

  TEST_CASE("synthesis and norms") {
    const Domain1D d{2.0, 12};
    const auto f = random_field(d, 12, 3);
    using G = boost::math::quadrature::gauss<double, 30>;
    double sq = 0.0;
    for (int p = 0; p < 12; ++p)
      sq += G::integrate([&](double x) { return f(x) * f(x); }, p * d.L / 12, (p + 1) * d.L / 12);
    CHECK(std::abs(std::sqrt(sq) - f.l2_norm()) < 1e-12 * f.l2_norm());
    const auto back = project(d, [&](double x) { return f(x); });
    for (int n = 0; n < 12; ++n) CHECK(std::abs(back.coeffs[n] - f.coeffs[n]) < 1e-13);
    CHECK(f.h2_norm() > f.l2_norm());
  }

  TEST_CASE("projection of a smooth function converges as N grows") {
    auto f = [](double x) { return x * x * (1 - x) * std::exp(x); };
    double prev = INFINITY;
    for (int N : {4, 8, 16, 32}) {
      const Domain1D d{1.0, N};
      const auto p = project(d, f);
      using G = boost::math::quadrature::gauss<double, 30>;
      double err = 0.0;
      for (int q = 0; q < 8; ++q)
        err += G::integrate([&](double x) { return std::pow(f(x) - p(x), 2); }, q / 8.0, (q + 1) / 8.0);
      CHECK(std::sqrt(err) < prev);
      prev = std::sqrt(err);
    }
    CHECK(prev < 1e-4);
  }

  TEST_CASE("direct problem, single modes") {
    const Domain1D d{1.0, 16};
    const auto k = KernelSpec::single_term(0.5);
    const double l1 = pi * pi;
    const auto a = SpectralField::mode(d, 1);
    for (double t : {0.01, 0.3, 2.0}) {
      const auto r = solve_direct(k, d, a, {}, t);
      CHECK(oracle::rel(r.coeffs[0], ml_fundamental(0.5, l1, t)) < 1e-10);
      for (int n = 2; n <= 16; ++n) CHECK(r.coeffs[n - 1] == 0.0);
    }
    const auto r0 = solve_direct(k, d, random_field(d, 16, 9), {}, 0.0);
    CHECK(r0.coeffs == random_field(d, 16, 9).coeffs);

    const auto src = solve_direct(k, d, SpectralField::zero(d), constant_mode(d, 1), 0.7);
    CHECK(oracle::rel(src.coeffs[0], (1 - ml_fundamental(0.5, l1, 0.7)) / l1) < 1e-9);
    for (int n = 2; n <= 16; ++n) CHECK(std::abs(src.coeffs[n - 1]) < 1e-12);
  }

  TEST_CASE("initial data decay") {
    const Domain1D d{1.0, 24};
    const auto a = random_field(d, 24, 11);
    for (const auto& k : {KernelSpec::multi_term({{1, 0.8}, {0.5, 0.3}}), KernelSpec::distributed_uniform()})
      for (double t : {1e-3, 0.1, 1.0}) {
        const auto r = solve_direct(k, d, a, {}, t);
        for (int n = 0; n < 24; ++n) CHECK(std::abs(r.coeffs[n]) <= std::abs(a.coeffs[n]));
      }
  }

  TEST_CASE("space-time source through projection") {
    const Domain1D d{1.0, 8};
    const auto k = KernelSpec::single_term(0.5);
    const auto F = project_source(d, [&](double x, double) { return 3.0 * eigenfunction(d, 2, x); });
    const auto r = solve_direct(k, d, SpectralField::zero(d), F, 1.0);
    const double l2 = 4 * pi * pi;
    CHECK(oracle::rel(r.coeffs[1], 3.0 * (1 - ml_fundamental(0.5, l2, 1.0)) / l2) < 1e-9);
  }

  TEST_CASE("errors carry the mode index") {
    const Domain1D d{1.0, 4};
    ContourConfig cfg;
    cfg.nodes = 8;
    cfg.working_tolerance = 1e-13;
    try {
      solve_direct(KernelSpec::single_term(0.3), d, SpectralField::mode(d, 3), {}, 1.0, cfg);
      FAIL("expected an accuracy failure");
    } catch (const AccuracyError& e) {
      CHECK(std::string(e.what()).find("mode 3") != std::string::npos);
    }
    const Domain1D other{2.0, 4};
    CHECK_THROWS_AS(solve_direct(KernelSpec::single_term(0.3), d, SpectralField::zero(other), {}, 1.0), DomainError);
  }

  TEST_CASE("regularity estimate") {
    const Domain1D d{1.0, 16};
    const auto k = KernelSpec::single_term(0.5);
    // Constant source in mode 1: lambda_1 u_1(t) = 1 - E_{1/2}(-pi^2 sqrt t).
    const auto r = regularity_check(k, d, constant_mode(d, 1), 1.0);
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    // t = s^2 removes the square-root behaviour at 0.
    const double lhs2 = GK::integrate(
        [](double s) {
          const double w = 1 - oracle::erfcx(pi * pi * s);
          return 2 * s * w * w;
        },
        0.0, 1.0, 15, 1e-14);
    CHECK(oracle::rel(r.lhs, std::sqrt(lhs2)) < 1e-8);
    CHECK(oracle::rel(r.rhs, 1.0) < 1e-8);
    CHECK(r.pass);

    const auto zero = regularity_check(k, d, [&](double) { return std::vector<double>(16, 0.0); }, 1.0);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == 0.0);
    CHECK(zero.pass);
  }
}
