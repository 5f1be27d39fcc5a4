#include "genfrac/diffusion.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "genfrac/errors.hpp"

namespace genfrac {

namespace {

using boost::math::quadrature::gauss;

void check_mode(const Domain1D& d, int n) {
  if (n < 1 || n > d.n_modes) throw DomainError("mode index " + std::to_string(n) + " outside 1.." +
                                                std::to_string(d.n_modes));
}

void check_field(const Domain1D& d, const SpectralField& f, const char* what) {
  if (!(f.domain == d)) throw DomainError(std::string(what) + ": field lives on a different domain");
  if (f.coeffs.size() != static_cast<std::size_t>(d.n_modes))
    throw DomainError(std::string(what) + ": coefficient count does not match the domain");
}

// Rethrows a library error with the mode index prepended, keeping its type.
template <class Fn>
auto for_mode(int n, Fn&& fn) {
  const std::string tag = "mode " + std::to_string(n) + ": ";
  try {
    return fn();
  } catch (const AccuracyError& e) {
    throw AccuracyError(tag + e.what());
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(tag + e.what());
  } catch (const QuadratureError& e) {
    throw QuadratureError(tag + e.what());
  } catch (const DomainError& e) {
    throw DomainError(tag + e.what());
  }
}

std::vector<double> source_at(const Domain1D& d, const SpectralSource& F, double t) {
  auto c = F(t);
  if (c.size() != static_cast<std::size_t>(d.n_modes))
    throw DomainError("source returned " + std::to_string(c.size()) + " coefficients, expected " +
                      std::to_string(d.n_modes));
  for (double x : c)
    if (!std::isfinite(x)) throw DomainError("source is not finite at t = " + std::to_string(t));
  return c;
}

struct ModeConvolutions {
  std::vector<double> value;
  std::vector<double> error;
};

// (v(.; lambda_n) * F_n)(t) for every mode, doubling the cell count until all
// active modes agree between successive rules. The source is evaluated once
// per lag and shared across modes.
ModeConvolutions convolve_modes(const KernelSpec& kernel, const Domain1D& d, const SpectralSource& F, double t,
                                const ContourConfig& cfg, double tol = 1e-9, int max_cells = 512) {
  const int N = d.n_modes;
  ModeConvolutions out{std::vector<double>(N, 0.0), std::vector<double>(N, 0.0)};

  // values[i][n] = F_n(t - lag_i)
  auto sample = [&](const std::vector<double>& lags) {
    std::vector<std::vector<double>> by_mode(N, std::vector<double>(lags.size()));
    for (std::size_t i = 0; i < lags.size(); ++i) {
      const auto c = source_at(d, F, t - lags[i]);
      for (int n = 0; n < N; ++n) by_mode[n][i] = c[n];
    }
    return by_mode;
  };
  auto run = [&](int cells, std::vector<double>& value, std::vector<double>& scale) {
    const auto f = sample(convolution_lags(t, cells));
    for (int n = 0; n < N; ++n) {
      if (std::all_of(f[n].begin(), f[n].end(), [](double x) { return x == 0.0; })) {
        value[n] = scale[n] = 0.0;
        continue;
      }
      for_mode(n + 1, [&] {
        ImpulseConvolution rule(kernel, eigenvalue(d, n + 1), t, cfg, cells);
        double s = 0.0, a = 0.0;
        for (std::size_t i = 0; i < f[n].size(); ++i) {
          s += rule.weights()[i] * f[n][i];
          a += std::abs(rule.weights()[i] * f[n][i]);
        }
        value[n] = s;
        scale[n] = a;
      });
    }
  };

  int cells = 16;
  std::vector<double> prev(N), cur(N), scale(N);
  run(cells, prev, scale);
  while (cells < max_cells) {
    cells *= 2;
    run(cells, cur, scale);
    // Modes carrying only projection round-off are judged against the largest mode.
    const double floor = *std::max_element(scale.begin(), scale.end());
    bool ok = true;
    for (int n = 0; n < N; ++n) {
      out.error[n] = std::abs(cur[n] - prev[n]);
      ok = ok && out.error[n] <= tol * std::max({std::abs(cur[n]), scale[n], floor});
    }
    if (ok) {
      out.value = cur;
      return out;
    }
    std::swap(prev, cur);
  }
  throw QuadratureError("mode-wise convolution did not converge with " + std::to_string(max_cells) + " cells at t = " +
                        std::to_string(t));
}

// Lag cells whose edges contain every time node: geometric from 1e-14 T up,
// no cell wider than T/32, hence e_{c+1} <= 2 e_c past the first cell.
std::vector<double> graded_edges(std::span<const double> times) {
  const double T = times.back(), innermost = 1e-14 * T;
  std::vector<double> e{0.0};
  for (double g = innermost; g < T; g *= 2.0) e.push_back(g);
  for (int j = 1; j < 32; ++j) e.push_back(T * j / 32.0);
  e.insert(e.end(), times.begin(), times.end());
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

std::vector<double> bisect(const std::vector<double>& e) {
  std::vector<double> out{e[0], e[1]};
  for (std::size_t c = 1; c + 1 < e.size(); ++c) {
    out.push_back(0.5 * (e[c] + e[c + 1]));
    out.push_back(e[c + 1]);
  }
  return out;
}

// out[k][n] = (v(.; lambda_n) * F_n)(times[k]) for increasing times. One set of
// lag cells serves every time node, so the moments of v are computed once per
// mode; cells are bisected until successive rules agree.
std::vector<std::vector<double>> convolve_modes_at(const KernelSpec& kernel, const Domain1D& d,
                                                   const SpectralSource& F, std::span<const double> times,
                                                   const ContourConfig& cfg, double tol = 1e-9,
                                                   int max_bisections = 4) {
  const int N = d.n_modes;
  for (std::size_t k = 0; k < times.size(); ++k)
    if (!(times[k] > 0.0) || (k > 0 && !(times[k] > times[k - 1])))
      throw DomainError("time nodes must be positive and increasing");

  auto run = [&](const std::vector<double>& edges, std::vector<std::vector<double>>& scale) {
    std::vector<std::optional<ImpulseMoments>> moments(N);
    std::vector<std::vector<double>> value(times.size(), std::vector<double>(N, 0.0));
    scale.assign(times.size(), std::vector<double>(N, 0.0));
    auto moment = [&](int n) -> const ImpulseMoments& {
      if (!moments[n]) for_mode(n + 1, [&] { moments[n].emplace(kernel, eigenvalue(d, n + 1), edges, cfg); });
      return *moments[n];
    };
    std::size_t m = 1;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double t = times[k];
      while (edges[m] < t) ++m;  // edges[m] == t
      const auto f0 = source_at(d, F, t);
      for (int n = 0; n < N; ++n) {
        if (f0[n] == 0.0) continue;
        const double term = moment(n).mass0() * f0[n];
        value[k][n] += term;
        scale[k][n] += std::abs(term);
      }
      for (std::size_t c = 1; c < m; ++c) {
        const auto p = ImpulseMoments::cell_points(edges[c], edges[c + 1]);
        for (int j = 0; j < 5; ++j) {
          const auto f = source_at(d, F, t - p[j]);
          for (int n = 0; n < N; ++n) {
            if (f[n] == 0.0) continue;
            const double term = moment(n).cell_weights(c)[j] * f[n];
            value[k][n] += term;
            scale[k][n] += std::abs(term);
          }
        }
      }
    }
    return value;
  };

  auto edges = graded_edges(times);
  std::vector<std::vector<double>> scale;
  auto prev = run(edges, scale);
  for (int b = 0; b < max_bisections; ++b) {
    edges = bisect(edges);
    auto cur = run(edges, scale);
    bool ok = true;
    for (std::size_t k = 0; k < times.size() && ok; ++k) {
      const double floor = *std::max_element(scale[k].begin(), scale[k].end());
      for (int n = 0; n < N && ok; ++n)
        ok = std::abs(cur[k][n] - prev[k][n]) <= tol * std::max({std::abs(cur[k][n]), scale[k][n], floor});
    }
    if (ok) return cur;
    prev = std::move(cur);
  }
  throw QuadratureError("mode-wise convolution on the time grid did not converge after " +
                        std::to_string(max_bisections) + " bisections");
}

}  // namespace

void Domain1D::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("domain length must be positive and finite");
  if (n_modes < 1) throw DomainError("need at least one mode");
}

double eigenvalue(const Domain1D& d, int n) {
  check_mode(d, n);
  const double k = n * std::numbers::pi / d.L;
  return k * k;
}

double eigenfunction(const Domain1D& d, int n, double x) {
  check_mode(d, n);
  return std::sqrt(2.0 / d.L) * std::sin(n * std::numbers::pi * x / d.L);
}

Eigensystem eigensystem(const Domain1D& d) {
  d.validate();
  Eigensystem es{d, {}};
  es.eigenvalues.reserve(d.n_modes);
  for (int n = 1; n <= d.n_modes; ++n) es.eigenvalues.push_back(eigenvalue(d, n));
  return es;
}

SpectralField SpectralField::zero(const Domain1D& d) {
  d.validate();
  return {d, std::vector<double>(d.n_modes, 0.0)};
}

SpectralField SpectralField::mode(const Domain1D& d, int n) {
  auto f = zero(d);
  check_mode(d, n);
  f.coeffs[n - 1] = 1.0;
  return f;
}

double SpectralField::l2_norm() const {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return std::sqrt(s);
}

double SpectralField::h2_norm() const {
  double s = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    const double lc = eigenvalue(domain, static_cast<int>(n + 1)) * coeffs[n];
    s += lc * lc;
  }
  return std::sqrt(s);
}

double SpectralField::tail_norm() const {
  const std::size_t start = coeffs.size() - std::max<std::size_t>(1, coeffs.size() / 10);
  double s = 0.0;
  for (std::size_t n = start; n < coeffs.size(); ++n) s += coeffs[n] * coeffs[n];
  return std::sqrt(s);
}

double SpectralField::operator()(double x) const {
  const double norm = std::sqrt(2.0 / domain.L), w = std::numbers::pi * x / domain.L;
  double s = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) s += coeffs[n] * std::sin(static_cast<double>(n + 1) * w);
  return norm * s;
}

std::vector<double> SpectralField::sample(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(x.size());
  for (double xi : x) out.push_back((*this)(xi));
  return out;
}

SpectralField project(const Domain1D& d, const std::function<double(double)>& f) {
  d.validate();
  if (!f) throw DomainError("project: empty function");
  const auto& x = gauss<double, 10>::abscissa();
  const auto& w = gauss<double, 10>::weights();
  // Panels of width L/N carry half a wave of mode N; 10 nodes each.
  const int panels = std::max(8, d.n_modes);
  const double h = d.L / panels;
  auto out = SpectralField::zero(d);
  auto add = [&](double xi, double wi) {
    const double fx = f(xi);
    if (!std::isfinite(fx)) throw DomainError("project: function is not finite at x = " + std::to_string(xi));
    for (int n = 1; n <= d.n_modes; ++n) out.coeffs[n - 1] += wi * fx * eigenfunction(d, n, xi);
  };
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h, half = 0.5 * h;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        add(mid, half * w[i]);
      } else {
        add(mid - half * x[i], half * w[i]);
        add(mid + half * x[i], half * w[i]);
      }
    }
  }
  return out;
}

SpectralField project_samples(const Domain1D& d, std::span<const double> samples) {
  d.validate();
  if (samples.size() < 2) throw QuadratureError("project_samples: need at least two samples");
  const std::size_t intervals = samples.size() - 1;
  if (intervals < 4 * static_cast<std::size_t>(d.n_modes))
    throw QuadratureError("project_samples: " + std::to_string(samples.size()) +
                          " samples cannot resolve mode " + std::to_string(d.n_modes) + " (need at least " +
                          std::to_string(4 * d.n_modes + 1) + ")");
  const double h = d.L / static_cast<double>(intervals);
  auto out = SpectralField::zero(d);
  // Endpoint terms vanish with the sine basis.
  for (std::size_t j = 1; j < intervals; ++j) {
    const double xj = static_cast<double>(j) * h;
    for (int n = 1; n <= d.n_modes; ++n) out.coeffs[n - 1] += h * samples[j] * eigenfunction(d, n, xj);
  }
  return out;
}

SpectralSource project_source(const Domain1D& d, SpaceTimeFunction F) {
  d.validate();
  if (!F) throw DomainError("project_source: empty function");
  return [d, F = std::move(F)](double t) {
    return project(d, [&](double x) { return F(x, t); }).coeffs;
  };
}

SpectralField solve_direct(const KernelSpec& kernel, const Domain1D& d, const SpectralField& a,
                           const SpectralSource& F, double t, const ContourConfig& cfg) {
  d.validate();
  check_field(d, a, "solve_direct");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("solve_direct: t must be finite and nonnegative");
  if (t == 0.0) return a;

  auto out = SpectralField::zero(d);
  for (int n = 1; n <= d.n_modes; ++n) {
    if (a.coeffs[n - 1] == 0.0) continue;
    out.coeffs[n - 1] = a.coeffs[n - 1] * for_mode(n, [&] { return fundamental_u(kernel, eigenvalue(d, n), t, cfg); });
  }
  if (F) {
    const auto conv = convolve_modes(kernel, d, F, t, cfg);
    for (int n = 0; n < d.n_modes; ++n) out.coeffs[n] += conv.value[n];
  }
  return out;
}

RegularityReport regularity_check(const KernelSpec& kernel, const Domain1D& d, const SpectralSource& F, double T,
                                  const ContourConfig& cfg) {
  d.validate();
  if (!F) throw DomainError("regularity_check: empty source");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("regularity_check: T must be positive and finite");

  // Panels [T 2^{-k-1}, T 2^{-k}], k < 30, with 5 Gauss-Legendre nodes each.
  // The piece [0, T 2^{-30}] is dropped; it carries under 1e-9 of either side.
  constexpr int levels = 30;
  const auto& x = gauss<double, 5>::abscissa();
  const auto& w = gauss<double, 5>::weights();
  std::vector<std::pair<double, double>> quad;
  for (int k = 0; k < levels; ++k) {
    const double hi = T * std::ldexp(1.0, -k), lo = 0.5 * hi;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < x.size(); ++i) {
      quad.emplace_back(mid + half * x[i], half * w[i]);
      if (x[i] != 0.0) quad.emplace_back(mid - half * x[i], half * w[i]);
    }
  }
  std::sort(quad.begin(), quad.end());
  std::vector<double> times;
  for (const auto& q : quad) times.push_back(q.first);

  const auto u = convolve_modes_at(kernel, d, F, times, cfg);

  const int N = d.n_modes;
  RegularityReport r;
  r.mode_lhs.assign(N, 0.0);
  r.mode_rhs.assign(N, 0.0);
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const auto f = source_at(d, F, times[k]);
    for (int n = 0; n < N; ++n) {
      const double lu = eigenvalue(d, n + 1) * u[k][n];
      r.mode_lhs[n] += quad[k].second * lu * lu;
      r.mode_rhs[n] += quad[k].second * f[n] * f[n];
    }
  }
  double lhs = 0.0, rhs = 0.0;
  for (int n = 0; n < N; ++n) {
    lhs += r.mode_lhs[n];
    rhs += r.mode_rhs[n];
    r.mode_lhs[n] = std::sqrt(r.mode_lhs[n]);
    r.mode_rhs[n] = std::sqrt(r.mode_rhs[n]);
  }
  r.lhs = std::sqrt(lhs);
  r.rhs = std::sqrt(rhs);
  r.pass = r.lhs <= r.rhs * (1.0 + 1e-6);
  return r;
}

}  // namespace genfrac
