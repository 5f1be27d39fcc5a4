#include "genfrac/laplace_inversion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "genfrac/errors.hpp"

namespace genfrac {

namespace {

using std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Weideman (2006) optimized Talbot contour:
// s(theta) = (N/t) (sigma + mu theta cot(alpha theta) + i nu theta).
constexpr double kTalbotSigma = -0.6122;
constexpr double kTalbotMu = 0.5017;
constexpr double kTalbotAlpha = 0.6407;
constexpr double kTalbotNu = 0.2645;

struct ContourSum {
  cplx value;       // already divided by 2 pi i and scaled by the node weight
  double abs_sum;   // sum of |terms| after the same scaling
};

void accumulate(ContourSum& acc, cplx term) {
  if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
    throw AccuracyError("laplace inversion: non-finite contour term (transform overflow on contour)");
  acc.value += term;
  acc.abs_sum += std::abs(term);
}

// Talbot crosses the real axis at (n/t) (sigma + mu/alpha).
constexpr double kTalbotCrossing = kTalbotSigma + kTalbotMu / kTalbotAlpha;

// e^{z t} F(shift + z), formed either directly or from log F.
using Integrand = std::function<cplx(cplx)>;

Integrand direct(const Transform& F, double t, double shift) {
  return [&F, t, shift](cplx z) { return std::exp(z * t) * F(shift + z); };
}

Integrand logarithmic(const Transform& logF, double t, double shift) {
  return [&logF, t, shift](cplx z) { return std::exp(z * t + logF(shift + z)); };
}

ContourSum talbot_sum(const Integrand& F, double t, int n, double min_crossing) {
  ContourSum acc{0.0, 0.0};
  const double scale = std::max(n / t, min_crossing / kTalbotCrossing);
  for (int k = 0; k < n; ++k) {
    const double theta = -pi + (k + 0.5) * 2.0 * pi / n;
    const double x = kTalbotAlpha * theta;
    const double sx = std::sin(x);
    const double cot = std::cos(x) / sx;
    const cplx z = scale * cplx(kTalbotSigma + kTalbotMu * theta * cot, kTalbotNu * theta);
    const cplx dz = scale * cplx(kTalbotMu * (cot - x / (sx * sx)), kTalbotNu);
    accumulate(acc, F(z) * dz);
  }
  // (1/2 pi i) * (2 pi / n)
  const cplx w = 1.0 / cplx(0.0, n);
  acc.value *= w;
  acc.abs_sum *= std::abs(w);
  return acc;
}

ContourSum hyperbola_sum(const Integrand& F, double t, int n, double sector, double min_crossing) {
  const int half = std::max(1, n / 2);
  const HyperbolaParameters p = hyperbola_parameters(half, sector);
  // crossing point is mu (1 - sin a)
  const double mu = std::max(p.mu_times_t / t, min_crossing / (1.0 - std::sin(p.a)));
  ContourSum acc{0.0, 0.0};
  for (int k = -half; k <= half; ++k) {
    const cplx w(-p.a, k * p.step);
    const cplx z = mu * (1.0 + std::sin(w));
    const cplx dz = cplx(0.0, mu) * std::cos(w);
    accumulate(acc, F(z) * dz);
  }
  const cplx wgt = p.step / cplx(0.0, 2.0 * pi);
  acc.value *= wgt;
  acc.abs_sum *= std::abs(wgt);
  return acc;
}

ContourSum scaled_sum(const Integrand& F, double t, ContourMethod method, int nodes,
                      const TransformTraits& traits) {
  switch (method) {
    case ContourMethod::FixedTalbot:
      if (traits.sector < pi * (1 - 1e-12))
        throw DomainError("FixedTalbot needs a transform bounded on the whole cut plane; "
                          "use HyperbolicContour for restricted sectors");
      return talbot_sum(F, t, nodes, traits.min_crossing);
    case ContourMethod::HyperbolicContour:
      return hyperbola_sum(F, t, nodes, std::min(traits.sector, pi), traits.min_crossing);
  }
  return {};
}

// Natural-log error model of the trapezoidal rule on the hyperbola family
// s = mu (1 + sin(iu - a +- d)), with c = a - d and a + d = delta.
double hyperbola_model(int half, double delta, double c, double h, double m) {
  const double a = 0.5 * (delta + c);
  const double d = 0.5 * (delta - c);
  const double upper = -2.0 * pi * d / h;
  const double lower = m * (1.0 - std::sin(c)) - 2.0 * pi * d / h +
                       0.5 * std::log(2.0 * pi / (m * std::sin(c)) + 1.0);
  const double trunc = m * (1.0 - std::sin(a) * std::cosh(half * h));
  const double round = std::log(kEps * 2.0 * half) + m * (1.0 - std::sin(a));
  return std::max({upper, lower, trunc, round});
}

template <class Fn>
double golden_min(Fn f, double lo, double hi, int iters, double* arg) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    }
  }
  *arg = f1 < f2 ? x1 : x2;
  return std::min(f1, f2);
}

HyperbolaParameters optimize_hyperbola(int half, double sector) {
  const double delta = std::min(sector, pi) - 0.5 * pi;
  HyperbolaParameters best;
  best.log_error = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 24; ++i) {
    const double c = delta * i / 24.0;
    auto over_m = [&](double h) {
      double log_m = 0.0;
      return golden_min([&](double lm) { return hyperbola_model(half, delta, c, h, std::exp(lm)); },
                        std::log(1e-3), std::log(1e4), 60, &log_m);
    };
    // coarse scan in log h, then golden refinement around the best cell
    double best_lh = 0.0, best_val = std::numeric_limits<double>::infinity();
    const double lh_lo = std::log(1e-4), lh_hi = std::log(4.0);
    const int scan = 48;
    for (int j = 0; j <= scan; ++j) {
      const double lh = lh_lo + (lh_hi - lh_lo) * j / scan;
      const double v = over_m(std::exp(lh));
      if (v < best_val) {
        best_val = v;
        best_lh = lh;
      }
    }
    const double cell = (lh_hi - lh_lo) / scan;
    double lh = best_lh;
    const double val = golden_min([&](double x) { return over_m(std::exp(x)); }, best_lh - cell,
                                  best_lh + cell, 40, &lh);
    if (val < best.log_error) {
      const double h = std::exp(lh);
      double log_m = 0.0;
      golden_min([&](double x) { return hyperbola_model(half, delta, c, h, std::exp(x)); },
                 std::log(1e-3), std::log(1e4), 60, &log_m);
      best = {0.5 * (delta + c), h, std::exp(log_m), val};
    }
  }
  return best;
}

bool acceptable(double err, double value, double tol) { return err <= tol * std::abs(value); }

}  // namespace

std::string to_string(ContourMethod m) {
  return m == ContourMethod::FixedTalbot ? "FixedTalbot" : "HyperbolicContour";
}

ContourMethod contour_method_from_string(std::string_view name) {
  if (name == "FixedTalbot" || name == "talbot") return ContourMethod::FixedTalbot;
  if (name == "HyperbolicContour" || name == "hyperbolic") return ContourMethod::HyperbolicContour;
  throw ValidationError("unknown inversion method '" + std::string(name) + "'");
}

void ContourConfig::validate() const {
  if (nodes < 8) throw ValidationError("contour nodes must be >= 8");
  if (!(working_tolerance > 1e-14 && working_tolerance < 1e-2))
    throw ValidationError("working tolerance must lie in (1e-14, 1e-2)");
  if (!(absolute_tolerance >= 0.0)) throw ValidationError("absolute tolerance must be nonnegative");
}

HyperbolaParameters hyperbola_parameters(int half_nodes, double sector) {
  if (half_nodes < 1) throw DomainError("hyperbola: need at least one node per side");
  if (!(sector > 0.5 * pi)) throw DomainError("hyperbola: sector must exceed pi/2");
  static std::mutex mutex;
  static std::map<std::pair<int, double>, HyperbolaParameters> cache;
  const auto key = std::make_pair(half_nodes, std::min(sector, pi));
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const auto p = optimize_hyperbola(half_nodes, key.second);
  std::lock_guard lock(mutex);
  cache.emplace(key, p);
  return p;
}

double contour_sum(const Transform& F, double t, ContourMethod method, int nodes,
                   const TransformTraits& traits) {
  if (!(t > 0.0)) throw DomainError("laplace inversion requires t > 0");
  const auto s = scaled_sum(direct(F, t, traits.abscissa), t, method, nodes, traits);
  return std::exp(traits.abscissa * t) * s.value.real();
}

namespace {

Inversion invert_integrand(const Integrand& F, double t, const ContourConfig& cfg,
                           const TransformTraits& traits) {

  int nodes = cfg.nodes;
  ContourSum fine = scaled_sum(F, t, cfg.method, nodes, traits);
  ContourSum coarse = scaled_sum(F, t, cfg.method, nodes / 2, traits);
  for (int attempt = 0;; ++attempt) {
    const double value = fine.value.real();
    const double roundoff = 64.0 * kEps * fine.abs_sum;
    if (std::abs(fine.value.imag()) > 1e-10 * std::abs(value) + roundoff) {
      std::ostringstream os;
      os << "laplace inversion: imaginary residue " << fine.value.imag() << " at t=" << t
         << " (transform not conjugate symmetric?)";
      throw DomainError(os.str());
    }
    const double err = std::max(std::abs(value - coarse.value.real()), roundoff);
    const double scale = std::exp(traits.abscissa * t);
    if (acceptable(err, value, cfg.working_tolerance) || value == 0.0 ||
        scale * err <= cfg.absolute_tolerance) {
      return {scale * value, scale * err, nodes};
    }
    if (attempt == 1) {
      std::ostringstream os;
      os.precision(3);
      os << "laplace inversion at t=" << t << ": error estimate " << err << " exceeds tolerance "
         << cfg.working_tolerance << " relative to |f|=" << std::abs(value) << " with " << nodes
         << " nodes";
      throw AccuracyError(os.str());
    }
    coarse = fine;
    nodes *= 2;
    fine = scaled_sum(F, t, cfg.method, nodes, traits);
  }
}

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << "laplace inversion requires finite t > 0, got " << t;
    throw DomainError(os.str());
  }
}

}  // namespace

Inversion invert(const Transform& F, double t, const ContourConfig& cfg, const TransformTraits& traits) {
  cfg.validate();
  check_time(t);
  return invert_integrand(direct(F, t, traits.abscissa), t, cfg, traits);
}

Inversion invert_log(const Transform& logF, double t, const ContourConfig& cfg, const TransformTraits& traits) {
  cfg.validate();
  check_time(t);
  return invert_integrand(logarithmic(logF, t, traits.abscissa), t, cfg, traits);
}

std::vector<Inversion> invert_grid(const Transform& F, std::span<const double> t_grid,
                                   const ContourConfig& cfg, const TransformTraits& traits) {
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("invert_grid: t grid must be strictly increasing");
  std::vector<Inversion> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    try {
      out.push_back(invert(F, t, cfg, traits));
    } catch (const AccuracyError& e) {
      std::ostringstream os;
      os << "at t=" << t << ": " << e.what();
      throw AccuracyError(os.str());
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "at t=" << t << ": " << e.what();
      throw DomainError(os.str());
    }
  }
  return out;
}

}  // namespace genfrac
