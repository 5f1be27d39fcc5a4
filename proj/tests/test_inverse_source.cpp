#include <doctest.h>

#include <cmath>
#include <numbers>

#include "genfrac/errors.hpp"
#include "genfrac/inverse_source.hpp"
#include "genfrac/relaxation.hpp"
#include "oracles.hpp"

using namespace genfrac;
using std::numbers::pi;

namespace {

InverseProblem problem(const KernelSpec& k, int N, TimeProfile q = TimeProfile::constant(1.0), double q0 = 1.0) {
  const Domain1D d{1.0, N};
  return {k, d, std::move(q), q0, 1.0, SpectralField::zero(d)};
}

TimeProfile ramp() {
  return TimeProfile::function([](double t) { return 1 + t / 2; }, "1 + t/2");
}

}  // namespace

TEST_SUITE("inverse_source") {
  TEST_CASE("Q_n for constant and ramp profiles") {
    const auto k = KernelSpec::single_term(0.5);
    const double l = pi * pi;
    CHECK(compute_Qn(k, l, TimeProfile::constant(1.0), 1.0) == integral_v(k, l, 1.0));
    CHECK(oracle::rel(compute_Qn(k, l, TimeProfile::constant(1.0), 1.0), (1 - oracle::erfcx(l)) / l) < 1e-10);
    const auto one = TimeProfile::function([](double) { return 1.0; });
    CHECK(oracle::rel(compute_Qn(k, l, one, 1.0), integral_v(k, l, 1.0)) < 1e-9);
    for (double lam : {l, 100 * l}) {
      const double iv = integral_v(k, lam, 1.0), Q = compute_Qn(k, lam, ramp(), 1.0);
      CHECK(Q >= iv);
      CHECK(Q <= 1.5 * iv);
    }
    CHECK_THROWS_AS(compute_Qn(k, l, TimeProfile::constant(-1.0), 1.0), ConsistencyError);
  }

  TEST_CASE("time profile") {
    const auto q = ramp();
    CHECK(q.sup_norm(1.0) == 1.5);
    CHECK(q.sampled_min(1.0) == 1.0);
    CHECK_FALSE(q.constant_value());
    CHECK(*TimeProfile::constant(2.0).constant_value() == 2.0);
    auto p = problem(KernelSpec::single_term(0.5), 4, ramp(), 1.2);
    CHECK_THROWS_AS(p.validate(), DomainError);
  }

  TEST_CASE("Q_n bounds") {
    for (const auto& k : {KernelSpec::single_term(0.5), KernelSpec::distributed_uniform()}) {
      const auto r = check_Qn_bounds(problem(k, 64));
      CHECK(r.pass);
      CHECK(r.violations.empty());
      CHECK(oracle::rel(r.lambda[0] * r.Qn[0], r.C.lower) < 1e-12);
      for (int n = 0; n < 64; ++n) CHECK(r.lambda[n] * r.Qn[n] < r.C.upper);
    }
    auto bad = problem(KernelSpec::single_term(0.5), 4);
    bad.T = -1.0;
    const auto r = check_Qn_bounds(bad);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.violations.empty());
  }

  TEST_CASE("forward map and reconstruction") {
    auto p = problem(KernelSpec::multi_term({{1, 0.8}, {0.5, 0.3}}), 24);
    const auto Q = compute_all_Qn(p);
    const auto zero = forward_map(SpectralField::zero(p.domain), Q);
    for (double c : zero.coeffs) CHECK(c == 0.0);
    const auto h1 = forward_map(p, SpectralField::mode(p.domain, 1));
    CHECK(h1.coeffs[0] == Q[0]);
    for (int n = 1; n < 24; ++n) CHECK(h1.coeffs[n] == 0.0);

    const auto f = random_field(p.domain, 16, 5);
    p.h = forward_map(f, Q);
    const auto r = reconstruct(p);
    CHECK(r.cutoff == 24);
    for (int n = 0; n < 24; ++n) CHECK(std::abs(r.f.coeffs[n] - f.coeffs[n]) <= 1e-6 * std::abs(f.coeffs[n]) + 1e-15);
    CHECK(r.residual < 1e-15);

    p.h = SpectralField::zero(p.domain);
    for (double c : reconstruct(p).f.coeffs) CHECK(c == 0.0);

    CHECK_THROWS_AS(reconstruct(p, {.cutoff = 25}), DomainError);
  }

  TEST_CASE("noise amplification in the highest mode") {
    auto p = problem(KernelSpec::single_term(0.5), 32);
    const auto Q = compute_all_Qn(p);
    const auto C = stability_constants(p);
    const double delta = 1e-3;
    p.h = forward_map(SpectralField::mode(p.domain, 1), Q);
    p.h.coeffs[31] += delta;
    const auto r = reconstruct(p);
    CHECK(oracle::rel(r.f.coeffs[0], 1.0) < 1e-12);
    const double amp = r.f.coeffs[31] / delta;
    CHECK(oracle::rel(amp, 1 / Q[31]) < 1e-12);
    const double lN = eigenvalue(p.domain, 32);
    CHECK(amp >= lN / C.upper);
    CHECK(amp <= lN / C.lower);
  }

  TEST_CASE("discrepancy principle") {
    auto p = problem(KernelSpec::single_term(0.5), 32);
    const auto Q = compute_all_Qn(p);
    const auto f = random_field(p.domain, 6, 2);
    const double delta = 1e-4;
    p.h = forward_map(f, Q);
    const auto noise = gaussian_noise(p.domain, delta, 17);
    for (int n = 0; n < 32; ++n) p.h.coeffs[n] += noise.coeffs[n];
    const auto r = reconstruct(p, {.noise_level = delta});
    CHECK(r.residual <= 1.1 * delta);
    CHECK(r.cutoff < 32);
    const auto previous = reconstruct(p, {.cutoff = r.cutoff - 1});
    CHECK(previous.residual > 1.1 * delta);
  }

  TEST_CASE("stability bound") {
    CHECK(stability_bound(1, 0, 1) == 0.0);
    CHECK(stability_bound(1, 1, 1) == 1.0);
    CHECK(stability_bound(3, 8, 0.5) == doctest::Approx(2 * stability_bound(3, 2, 0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(stability_bound(0, 1, 1), DomainError);
    CHECK_THROWS_AS(stability_bound(1, 1, 0), DomainError);
    CHECK_THROWS_AS(stability_bound(1, -1, 1), DomainError);
  }

  TEST_CASE("regularity sandwich") {
    const auto p = problem(KernelSpec::single_term(0.5), 32, ramp());
    const auto one = check_regularity_sandwich(p, SpectralField::mode(p.domain, 1));
    const double Q1 = compute_Qn(p.kernel, pi * pi, p.q, 1.0);
    CHECK(oracle::rel(one.h_h2, pi * pi * Q1) < 1e-12);
    CHECK(one.pass);
    CHECK(check_regularity_sandwich(p, random_field(p.domain, 16, 8)).pass);
    const auto z = check_regularity_sandwich(p, SpectralField::zero(p.domain));
    CHECK(z.pass);
    CHECK(z.h_h2 == 0.0);
    CHECK(z.lower == 0.0);
    CHECK(z.upper == 0.0);
  }

  TEST_CASE("random fields and noise") {
    const Domain1D d{1.0, 10};
    CHECK(random_field(d, 4, 1).coeffs == random_field(d, 4, 1).coeffs);
    CHECK(random_field(d, 4, 1).coeffs != random_field(d, 4, 2).coeffs);
    CHECK(random_field(d, 4, 1).coeffs[5] == 0.0);
    CHECK(gaussian_noise(d, 0.25, 4).l2_norm() == doctest::Approx(0.25).epsilon(1e-15));
  }
}
