// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "genfrac/diffusion.hpp"
#include "genfrac/inverse_source.hpp"
#include "genfrac/laplace_inversion.hpp"
#include "genfrac/mittag_leffler.hpp"
#include "genfrac/relaxation.hpp"

using namespace genfrac;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::abs(b);
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<KernelSpec> corpus() {
  return {KernelSpec::single_term(0.5), KernelSpec::multi_term({{1.0, 0.8}, {0.5, 0.3}}),
          KernelSpec::distributed_uniform()};
}

const char* label(const KernelSpec& k) {
  switch (k.type()) {
    case KernelType::SingleTerm: return "single";
    case KernelType::MultiTerm: return "multi";
    case KernelType::DistributedUniform: return "distributed";
    case KernelType::Custom: return "custom";
  }
  return "?";
}

TimeProfile ramp() {
  return TimeProfile::function([](double t) { return 1.0 + 0.5 * t; }, "1 + t/2");
}

InverseProblem problem(const KernelSpec& k, int N) {
  const Domain1D d{1.0, N};
  return {k, d, ramp(), 1.0, 1.0, SpectralField::zero(d)};
}

Outcome ml_equivalence() {
  double worst = 0.0;
  const auto grid = geometric_grid(1e-3, 1e3, 32);
  for (double a : {0.2, 0.5, 0.8}) {
    const auto k = KernelSpec::single_term(a);
    for (double lam : {0.1, 1.0, 10.0, 100.0})
      for (double t : grid) {
        worst = std::max(worst, rel(fundamental_u(k, lam, t), ml_fundamental(a, lam, t)));
        worst = std::max(worst, rel(impulse_v(k, lam, t), ml_impulse(a, lam, t)));
      }
  }
  return {worst <= 1e-8, fmt("max rel err %.2e (tol 1e-8)", worst)};
}

Outcome special_identities() {
  double e_exp = 0.0, e_cos = 0.0, e_erfc = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double z = -30.0 + 0.1 * i;
    e_exp = std::max(e_exp, rel(mittag_leffler(1, 1, z), std::exp(z)));
  }
  for (int i = 0; i <= 1000; ++i) {
    const double x = 0.01 * i;
    e_cos = std::max(e_cos, rel(mittag_leffler(2, 1, -x * x), std::cos(x)));
  }
  for (int i = 0; i <= 500; ++i) {
    const double x = 0.01 * i;
    e_erfc = std::max(e_erfc, rel(mittag_leffler(0.5, 1, -x), std::exp(x * x) * std::erfc(x)));
  }
  return {e_exp <= 1e-12 && e_cos <= 1e-10 && e_erfc <= 1e-8,
          fmt("exp %.2e (1e-12), cos %.2e (1e-10), erfc %.2e (1e-8)", e_exp, e_cos, e_erfc)};
}

Outcome structural_properties() {
  int runs = 0, failed = 0;
  double min_margin = INFINITY;
  for (const auto& k : corpus())
    for (double lam : {1.0, 10.0, 1e3, 1e6})
      for (double T : {0.1, 1.0, 10.0}) {
        const auto grid = geometric_grid(1e-3 * T, T, 32);
        const auto r = check_theorem_properties(k, lam, 1.0, T, grid);
        ++runs;
        if (!r.all_pass()) {
          ++failed;
          for (const auto& v : r.violations) std::printf("    %s lambda=%g T=%g: %s\n", label(k), lam, T, v.c_str());
        }
        min_margin = std::min(min_margin, r.bounds.integral_value - r.bounds.lower_C);
      }
  return {failed == 0, fmt("%d/%d instances pass, min(lambda*int v - C_lower) = %.3e", runs - failed, runs, min_margin)};
}

Outcome derivative_identity() {
  double worst = 0.0;
  for (const auto& k : corpus())
    for (double lam : {1.0, 10.0})
      for (double t : geometric_grid(1e-3, 1e3, 32)) {
        const double h = 1e-3 * t;
        const double du = (fundamental_u(k, lam, t + h) - fundamental_u(k, lam, t - h)) / (2 * h);
        worst = std::max(worst, rel(du, -lam * impulse_v(k, lam, t)));
      }
  return {worst <= 1e-4, fmt("max rel err %.2e (tol 1e-4)", worst)};
}

Outcome subordination() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& k : corpus())
    for (double t : {0.5, 1.0, 2.0}) {
      worst = std::max(worst, std::abs(phi_moment(k, t, 0.0).value - 1.0));
      for (double lam : {1.0, 10.0})
        worst = std::max(worst, std::abs(phi_moment(k, t, lam).value - fundamental_u(k, lam, t)));
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-6 && secs <= 60.0, fmt("max abs err %.2e (tol 1e-6), %.1fs (limit 60s)", worst, secs)};
}

Outcome regularity() {
  const Domain1D d{1.0, 16};
  bool ok = true;
  std::string detail;
  std::mt19937_64 rng(20241015);
  std::normal_distribution<double> normal;
  std::vector<double> c(8), w(8);
  for (int n = 0; n < 8; ++n) {
    c[n] = normal(rng);
    w[n] = normal(rng);
  }
  const SpectralSource F = [&](double t) {
    std::vector<double> v(d.n_modes, 0.0);
    for (int n = 0; n < 8; ++n) v[n] = c[n] + w[n] * std::sin(3.0 * t);
    return v;
  };
  for (const auto& k : corpus()) {
    const auto r = regularity_check(k, d, F, 1.0);
    const bool pass = r.lhs <= r.rhs * (1.0 + 1e-6);
    ok = ok && pass;
    detail += fmt("%s margin %.3f; ", label(k), 1.0 - r.lhs / r.rhs);
  }
  return {ok, detail};
}

Outcome round_trip() {
  double worst = 0.0;
  for (const auto& k : corpus()) {
    auto p = problem(k, 32);
    const auto f = random_field(p.domain, 16, 7);
    p.h = forward_map(p, f);
    const auto g = reconstruct(p).f;
    double num = 0.0;
    for (int n = 0; n < 32; ++n) num += std::pow(g.coeffs[n] - f.coeffs[n], 2);
    worst = std::max(worst, std::sqrt(num) / f.l2_norm());
  }
  return {worst <= 1e-6, fmt("max rel err %.2e (tol 1e-6)", worst)};
}

Outcome qn_bounds() {
  bool ok = true;
  std::string detail;
  for (const auto& k : corpus()) {
    const auto r = check_Qn_bounds(problem(k, 64));
    ok = ok && r.pass;
    for (const auto& v : r.violations) std::printf("    %s: %s\n", label(k), v.c_str());
    double lo = INFINITY, hi = 0.0;
    for (std::size_t n = 0; n < r.Qn.size(); ++n) {
      lo = std::min(lo, r.lambda[n] * r.Qn[n]);
      hi = std::max(hi, r.lambda[n] * r.Qn[n]);
    }
    detail += fmt("%s lambda*Q in [%.4f, %.4f] vs [%.4f, %.4f]; ", label(k), lo, hi, r.C.lower, r.C.upper);
  }
  return {ok, detail};
}

Outcome conditional_stability() {
  constexpr double E = 10.0;
  int cases = 0, held = 0;
  double worst_ratio = 0.0;
  for (const auto& k : corpus()) {
    auto p = problem(k, 32);
    const auto Q = compute_all_Qn(p);
    const auto C = stability_constants(p);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> size(0.05, 1.0);
    for (int s = 0; s < 20; ++s) {
      auto f = random_field(p.domain, 16, 1000 + s);
      const double scale = E * size(rng) / f.h2_norm();
      for (double& x : f.coeffs) x *= scale;
      const auto h = forward_map(f, Q);
      const double bound = stability_bound(E, h.l2_norm(), C.lower);
      ++cases;
      if (f.l2_norm() <= bound) ++held;
      worst_ratio = std::max(worst_ratio, f.l2_norm() / bound);
    }
  }
  return {held == cases, fmt("%d/%d cases hold, max ||f||/bound = %.3f", held, cases, worst_ratio)};
}

Outcome ill_posedness() {
  bool ok = true;
  std::string detail;
  constexpr double delta = 1e-6;
  for (const auto& k : corpus()) {
    auto p = problem(k, 64);
    const auto Q = compute_all_Qn(p);
    const auto C = stability_constants(p);
    const auto f = random_field(p.domain, 8, 5);
    const auto h = forward_map(f, Q);
    double rmin = INFINITY, rmax = 0.0;
    for (int n : {1, 8, 32, 64}) {
      p.h = h;
      p.h.coeffs[n - 1] += delta;
      const auto r = reconstruct(p, {.cutoff = 64});
      const double amp = std::abs(r.f.coeffs[n - 1] - f.coeffs[n - 1]) / delta;
      const double l = eigenvalue(p.domain, n);
      const double lo = l / C.upper, hi = l / C.lower;
      // The reconstruction error itself carries round-off of order eps |f_n| / delta.
      const double slack = 1e-6;
      rmin = std::min(rmin, amp / l);
      rmax = std::max(rmax, amp / l);
      const bool pass = amp >= lo * (1 - slack) && amp <= hi * (1 + slack);
      ok = ok && pass;
      if (!pass) std::printf("    %s n=%d: amplification %.6g outside [%.6g, %.6g]\n", label(k), n, amp, lo, hi);
    }
    detail += fmt("%s amp/lambda_n in [%.4f, %.4f] vs [%.4f, %.4f]; ", label(k), rmin, rmax, 1 / C.upper,
                  1 / C.lower);
  }
  return {ok, detail};
}

Outcome inversion_backbone() {
  double worst = 0.0;
  const auto grid = geometric_grid(1e-3, 1e3, 61);
  for (double lam : {0.1, 1.0, 10.0}) {
    const TransformTraits tr{.abscissa = -lam};
    for (double t : grid) {
      const double exact = std::exp(-lam * t);
      if (exact < 1e-300) continue;  // below the normal double range
      worst = std::max(worst, rel(invert([&](cplx s) { return 1.0 / (s + lam); }, t, {}, tr).value, exact));
    }
  }
  for (double t : grid) {
    worst = std::max(worst, rel(invert([](cplx s) { return 1.0 / (s * s); }, t).value, t));
    const double exact = t * std::exp(-t);
    if (exact < 1e-300) continue;
    worst = std::max(worst, rel(invert([](cplx s) { return 1.0 / ((s + 1.0) * (s + 1.0)); }, t, {}, {.abscissa = -1.0}).value,
                                exact));
  }
  return {worst <= 1e-10, fmt("max rel err %.2e (tol 1e-10)", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"mittag-leffler equivalence", ml_equivalence},
      {"special-function identities", special_identities},
      {"relaxation structure", structural_properties},
      {"derivative identity", derivative_identity},
      {"subordination", subordination},
      {"regularity estimate", regularity},
      {"inverse round trip", round_trip},
      {"Q_n bounds", qn_bounds},
      {"conditional stability", conditional_stability},
      {"ill-posedness", ill_posedness},
      {"inversion backbone", inversion_backbone},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu %-28s %6.1fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria passed in %.1fs\n", criteria.size() - failures, criteria.size(), total);
  return failures == 0 ? 0 : 1;
}
