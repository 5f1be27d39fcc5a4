#include "genfrac/relaxation.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "genfrac/errors.hpp"

namespace genfrac {

namespace {

// Innermost lag cell [0, kInnermost t] of the product-integration rule.
constexpr double kInnermost = 1e-14;

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream os;
    os << "lambda must be positive and finite, got " << lambda;
    throw DomainError(os.str());
  }
}

std::string at(double lambda, double t) {
  std::ostringstream os;
  os.precision(6);
  os << " (lambda=" << lambda << ", t=" << t << ")";
  return os.str();
}

// 10-point Gauss-Legendre on [-1, 1].
struct GaussLegendre10 {
  std::array<double, 10> x{};
  std::array<double, 10> w{};
  GaussLegendre10() {
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    for (std::size_t i = 0; i < 5; ++i) {
      x[i] = -a[4 - i];
      w[i] = wt[4 - i];
      x[9 - i] = a[4 - i];
      w[9 - i] = wt[4 - i];
    }
  }
};

const GaussLegendre10& gl10() {
  static const GaussLegendre10 q;
  return q;
}

// Gauss-Lobatto points used for the interpolation of f on each cell.
const std::array<double, 5>& lobatto5() {
  static const std::array<double, 5> x{-1.0, -std::sqrt(3.0 / 7.0), 0.0, std::sqrt(3.0 / 7.0), 1.0};
  return x;
}

double lagrange(int j, double x) {
  const auto& n = lobatto5();
  double p = 1.0;
  for (int m = 0; m < 5; ++m)
    if (m != j) p *= (x - n[m]) / (n[j] - n[m]);
  return p;
}

// Cell edges on [0, t]: 0, then geometric edges of the first uniform cell, then uniform edges.
std::vector<double> cell_edges(double t, int cells) {
  const double H = t / cells;
  const int K = std::max(1, static_cast<int>(std::ceil(std::log2(H / (kInnermost * t)))));
  std::vector<double> e{0.0};
  for (int k = K; k >= 1; --k) e.push_back(std::ldexp(H, -k));
  e.push_back(H);
  for (int j = 2; j < cells; ++j) e.push_back(t * j / cells);
  if (cells > 1) e.push_back(t);
  return e;
}

double real_g(const KernelSpec& k, double s) { return k.g(cplx(s, 0.0)).real(); }

// g'(s) for real s > 0 by the complex-step derivative.
double g_prime(const KernelSpec& k, double s) {
  const double h = 1e-30 * s;
  return k.g(cplx(s, h)).imag() / h;
}

struct Saddle {
  double s = 0.0;
  double exponent = 0.0;  // s t - tau g(s)
};

// Real saddle of s t - tau g(s): t = tau g'(s). g' is decreasing for the
// admissible kernels, so bisection in log s suffices.
Saddle saddle_point(const KernelSpec& k, double t, double tau) {
  double lo = 1e-200, hi = 1e200;
  if (tau * g_prime(k, hi) > t) return {hi, hi * t - tau * real_g(k, hi)};
  if (tau * g_prime(k, lo) < t) return {0.0, 0.0};
  for (int i = 0; i < 200 && hi / lo > 1.0 + 1e-12; ++i) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    (tau * g_prime(k, mid) > t ? lo : hi) = mid;
  }
  return {lo, lo * t - tau * real_g(k, lo)};
}

// e^z - 1 without cancellation for small |z|.
cplx expm1(cplx z) {
  if (std::abs(z) < 1e-3) return z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0))));
  return std::exp(z) - 1.0;
}

// Exponent below which e^{s t} F(s) at the saddle underflows.
constexpr double kUnderflowExponent = -740.0;

// Densities are checked against an absolute floor tied to their natural
// size (g(1/t) for phi in tau, 1/t for psi in t); far tails only need that.
ContourConfig density_config(const ContourConfig& cfg, double scale) {
  ContourConfig c = cfg;
  c.absolute_tolerance = std::max(cfg.absolute_tolerance, 1e-11 * scale);
  return c;
}

}  // namespace

Inversion fundamental_u_detailed(const KernelSpec& kernel, double lambda, double t, const ContourConfig& cfg) {
  check_lambda(lambda);
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("fundamental_u: t must be finite and nonnegative");
  if (t == 0.0) return {1.0, 0.0, 0};
  auto F = [&](cplx s) {
    const cplx g = kernel.g(s);
    return g / (s * (g + lambda));
  };
  Inversion r = invert(F, t, cfg);
  const double tol = cfg.working_tolerance + r.error;
  if (r.value < -tol || r.value > 1.0 + tol) {
    std::ostringstream os;
    os.precision(17);
    os << "fundamental_u left [0,1]: " << r.value << at(lambda, t);
    throw ConsistencyError(os.str());
  }
  return r;
}

double fundamental_u(const KernelSpec& kernel, double lambda, double t, const ContourConfig& cfg) {
  return fundamental_u_detailed(kernel, lambda, t, cfg).value;
}

Inversion impulse_v_detailed(const KernelSpec& kernel, double lambda, double t, const ContourConfig& cfg) {
  check_lambda(lambda);
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("impulse_v: t must be positive and finite");
  Inversion r;
  if (lambda > real_g(kernel, 1.0 / t)) {
    // 1/(g+lambda) - 1/lambda: the constant only contributes a delta at t = 0,
    // and removing it avoids cancellation when v is small against 1/lambda.
    auto F = [&](cplx s) {
      const cplx g = kernel.g(s);
      return -g / (lambda * (g + lambda));
    };
    r = invert(F, t, cfg);
  } else {
    auto F = [&](cplx s) { return 1.0 / (kernel.g(s) + lambda); };
    r = invert(F, t, cfg);
  }
  if (r.value < -10.0 * r.error - std::numeric_limits<double>::min()) {
    std::ostringstream os;
    os.precision(17);
    os << "impulse_v negative beyond its error estimate: " << r.value << " +- " << r.error << at(lambda, t);
    throw ConsistencyError(os.str());
  }
  return r;
}

double impulse_v(const KernelSpec& kernel, double lambda, double t, const ContourConfig& cfg) {
  return impulse_v_detailed(kernel, lambda, t, cfg).value;
}

double integral_v(const KernelSpec& kernel, double lambda, double T, const ContourConfig& cfg) {
  check_lambda(lambda);
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("integral_v: T must be finite and nonnegative");
  if (T == 0.0) return 0.0;
  const double u = fundamental_u(kernel, lambda, T, cfg);
  if (u <= 0.5) return (1.0 - u) / lambda;
  // 1 - u is small: invert its transform lambda/(s(g+lambda)) instead of subtracting.
  auto F = [&](cplx s) { return 1.0 / (s * (kernel.g(s) + lambda)); };
  return invert(F, T, cfg).value;
}

std::vector<double> convolution_lags(double t, int cells) {
  if (!(t > 0.0)) throw DomainError("convolution: t must be positive");
  if (cells < 1) throw DomainError("convolution: need at least one cell");
  const auto e = cell_edges(t, cells);
  const auto& x = lobatto5();
  std::vector<double> lags{0.0, e[1]};
  for (std::size_t c = 1; c + 1 < e.size(); ++c) {
    const double mid = 0.5 * (e[c] + e[c + 1]), half = 0.5 * (e[c + 1] - e[c]);
    for (int j = 1; j < 4; ++j) lags.push_back(mid + half * x[j]);
    lags.push_back(e[c + 1]);
  }
  return lags;
}

ImpulseMoments::ImpulseMoments(const KernelSpec& kernel, double lambda, std::vector<double> edges,
                               const ContourConfig& cfg)
    : edges_(std::move(edges)) {
  check_lambda(lambda);
  if (edges_.size() < 2 || edges_[0] != 0.0) throw DomainError("moments: edges must start at 0 and hold one cell");
  for (std::size_t c = 1; c + 1 < edges_.size(); ++c)
    if (!(edges_[c + 1] > edges_[c]) || edges_[c + 1] > 2.0 * edges_[c])
      throw DomainError("moments: cells past the first need e_c < e_{c+1} <= 2 e_c");
  if (!(edges_[1] > 0.0)) throw DomainError("moments: edges must increase");

  mass0_ = integral_v(kernel, lambda, edges_[1], cfg);
  const auto& q = gl10();
  std::array<std::array<double, 10>, 5> basis{};
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 10; ++i) basis[j][i] = lagrange(j, q.x[i]) * q.w[i];

  weights_.resize(edges_.size() - 1);
  for (std::size_t c = 1; c + 1 < edges_.size(); ++c) {
    const double mid = 0.5 * (edges_[c] + edges_[c + 1]), half = 0.5 * (edges_[c + 1] - edges_[c]);
    std::array<double, 10> v{};
    for (int i = 0; i < 10; ++i) v[i] = impulse_v(kernel, lambda, mid + half * q.x[i], cfg);
    for (int j = 0; j < 5; ++j) {
      double s = 0.0;
      for (int i = 0; i < 10; ++i) s += basis[j][i] * v[i];
      weights_[c][j] = half * s;
    }
  }
}

std::array<double, 5> ImpulseMoments::cell_points(double a, double b) {
  const auto& x = lobatto5();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  return {a, mid + half * x[1], mid, mid + half * x[3], b};
}

const std::array<double, 5>& ImpulseMoments::cell_weights(std::size_t c) const {
  if (c < 1 || c >= weights_.size()) throw DomainError("moments: cell index out of range");
  return weights_[c];
}

ImpulseConvolution::ImpulseConvolution(const KernelSpec& kernel, double lambda, double t,
                                       const ContourConfig& cfg, int cells)
    : t_(t) {
  lags_ = convolution_lags(t, cells);
  const ImpulseMoments m(kernel, lambda, cell_edges(t, cells), cfg);
  weights_.assign(lags_.size(), 0.0);
  weights_[0] = m.mass0();
  for (std::size_t c = 1, base = 1; c < m.cells(); ++c, base += 4) {
    const auto& w = m.cell_weights(c);
    for (int j = 0; j < 5; ++j) weights_[base + j] += w[j];
  }
}

double ImpulseConvolution::apply(const RealFunction& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < lags_.size(); ++i) s += weights_[i] * f(t_ - lags_[i]);
  return s;
}

double ImpulseConvolution::apply_values(std::span<const double> f_at_lags) const {
  if (f_at_lags.size() != lags_.size()) throw DomainError("apply_values: size mismatch with the lag grid");
  double s = 0.0;
  for (std::size_t i = 0; i < lags_.size(); ++i) s += weights_[i] * f_at_lags[i];
  return s;
}

double ImpulseConvolution::mass() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

ConvolutionResult convolve_impulse(const KernelSpec& kernel, double lambda, const RealFunction& f, double t,
                                   const ContourConfig& cfg, double tol, int max_cells) {
  if (!f) throw DomainError("convolve_impulse: empty source function");
  auto run = [&](int cells, double* scale) {
    ImpulseConvolution rule(kernel, lambda, t, cfg, cells);
    double s = 0.0, a = 0.0;
    for (std::size_t i = 0; i < rule.lags().size(); ++i) {
      const double fv = f(t - rule.lags()[i]);
      if (!std::isfinite(fv)) throw DomainError("convolve_impulse: source is not finite on [0, t]");
      s += rule.weights()[i] * fv;
      a += std::abs(rule.weights()[i] * fv);
    }
    *scale = a;
    return s;
  };
  int cells = 16;
  double scale = 0.0;
  double prev = run(cells, &scale);
  while (cells < max_cells) {
    cells *= 2;
    const double cur = run(cells, &scale);
    const double diff = std::abs(cur - prev);
    if (diff <= tol * std::max(std::abs(cur), scale) || scale == 0.0) return {cur, diff, cells};
    prev = cur;
  }
  std::ostringstream os;
  os << "convolution did not converge with " << max_cells << " cells" << at(lambda, t);
  throw QuadratureError(os.str());
}

RelaxationSolution solve_relaxation(const KernelSpec& kernel, double lambda, double a, const RealFunction& f,
                                    std::span<const double> t_grid, const ContourConfig& cfg) {
  check_lambda(lambda);
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i])) throw DomainError("solve_relaxation: times must be positive");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("solve_relaxation: t grid must be increasing");
  }
  RelaxationSolution sol{kernel, lambda, a, {t_grid.begin(), t_grid.end()}, {}, {}, {}, {}};
  for (double t : t_grid) {
    const Inversion u = fundamental_u_detailed(kernel, lambda, t, cfg);
    const Inversion v = impulse_v_detailed(kernel, lambda, t, cfg);
    double value = a * u.value, err = std::abs(a) * u.error;
    if (f) {
      const auto c = convolve_impulse(kernel, lambda, f, t, cfg);
      value += c.value;
      err += c.error;
    }
    sol.u_values.push_back(value);
    sol.err_estimates.push_back(err);
    sol.v_values.push_back(v.value);
    sol.v_err_estimates.push_back(v.error);
  }
  return sol;
}

namespace {

enum class Density { Phi, Psi };

double density(const KernelSpec& kernel, Density which, double t, double tau, const ContourConfig& cfg) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("subordination density: t must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("subordination density: tau must be positive");
  const Saddle sp = saddle_point(kernel, t, tau);
  if (sp.exponent < kUnderflowExponent) return 0.0;
  TransformTraits traits;
  traits.min_crossing = sp.s;
  auto logF = [&](cplx s) {
    const cplx g = kernel.g(s);
    return which == Density::Phi ? std::log(g / s) - tau * g : -tau * g;
  };
  const double scale = which == Density::Phi ? real_g(kernel, 1.0 / t) : 1.0 / t;
  return invert_log(logF, t, density_config(cfg, scale), traits).value;
}

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

}  // namespace

double subordination_phi(const KernelSpec& kernel, double t, double tau, const ContourConfig& cfg) {
  return density(kernel, Density::Phi, t, tau, cfg);
}

double subordination_psi(const KernelSpec& kernel, double t, double tau, const ContourConfig& cfg) {
  return density(kernel, Density::Psi, t, tau, cfg);
}

QuadratureEstimate phi_moment(const KernelSpec& kernel, double t, double lambda, const ContourConfig& cfg) {
  if (!(lambda >= 0.0)) throw DomainError("phi_moment: lambda must be nonnegative");
  if (!(t > 0.0)) throw DomainError("phi_moment: t must be positive");
  auto f = [&](double tau) { return subordination_phi(kernel, t, tau, cfg) * std::exp(-lambda * tau); };
  // tau is measured in units of 1/g(1/t); the integrand decays at least exponentially beyond.
  const double L = 1.0 / real_g(kernel, 1.0 / t);
  QuadratureEstimate out;
  double a = 0.0, b = L;
  for (int piece = 0; piece < 80; ++piece) {
    double err = 0.0;
    const double part = GK::integrate(f, a, b, 12, 1e-12, &err);
    out.value += part;
    out.error += err;
    out.upper_limit = b;
    if (piece > 0 && std::abs(part) < 1e-13 && std::abs(f(b)) * (b - a) < 1e-13) return out;
    a = b;
    b *= 2.0;
  }
  throw QuadratureError("phi_moment: tau integral did not decay" + at(lambda, t));
}

QuadratureEstimate psi_normalization(const KernelSpec& kernel, double tau, const ContourConfig& cfg) {
  if (!(tau > 0.0)) throw DomainError("psi_normalization: tau must be positive");
  // centre of mass in log t: tau g(1/t) = 1
  double lo = -300.0, hi = 300.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tau * real_g(kernel, std::exp(-mid)) > 1.0 ? lo : hi) = mid;
  }
  const double xc = lo;
  auto f = [&](double x) {
    const double t = std::exp(x);
    return subordination_psi(kernel, t, tau, cfg) * t;
  };
  QuadratureEstimate out;
  double err = 0.0;
  // downward from the centre until the left tail is negligible
  for (double b = xc, w = 1.0; b > -600.0; b -= w, w *= 1.5) {
    const double part = GK::integrate(f, b - w, b, 12, 1e-12, &err);
    out.value += part;
    out.error += err;
    if (std::abs(part) < 1e-15) break;
  }
  // upward to T_c = 1e6 e^{xc}; the remaining tail is 1 - Psi(T_c), the
  // complement of the distribution function, obtained from its transform.
  const double xu = xc + std::log(1e6);
  for (double a = xc; a < xu; a += 1.0) {
    out.value += GK::integrate(f, a, std::min(a + 1.0, xu), 12, 1e-12, &err);
    out.error += err;
  }
  const double Tc = std::exp(xu);
  auto tail = [&](cplx s) { return -expm1(-tau * kernel.g(s)) / s; };
  const Inversion r = invert(tail, Tc, cfg);
  out.value += r.value;
  out.error += r.error;
  out.upper_limit = Tc;
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw DomainError("geometric_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(n);
  const double r = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(r * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

bool TheoremReport::all_pass() const {
  return completely_monotone && u_in_unit_interval && v_positive && derivative_identity && lambda_monotone &&
         bounds.pass_lower && bounds.pass_upper;
}

namespace {

// n-th divided difference on x[i..i+n]; returns value and sum of |terms|.
std::pair<double, double> divided_difference(std::span<const double> x, std::span<const double> f, std::size_t i,
                                             int n) {
  double s = 0.0, a = 0.0;
  for (int j = 0; j <= n; ++j) {
    double den = 1.0;
    for (int m = 0; m <= n; ++m)
      if (m != j) den *= x[i + j] - x[i + m];
    const double term = f[i + j] / den;
    s += term;
    a += std::abs(term);
  }
  return {s, a};
}

std::string point(const char* what, double t, double value) {
  std::ostringstream os;
  os.precision(10);
  os << what << " at t=" << t << " (" << value << ")";
  return os.str();
}

}  // namespace

TheoremReport check_theorem_properties(const KernelSpec& kernel, double lambda, double lambda1, double T,
                                       std::span<const double> t_grid, const ContourConfig& cfg) {
  check_lambda(lambda1);
  if (!(lambda >= lambda1)) throw DomainError("check_theorem_properties: need lambda >= lambda1 > 0");
  if (!(T > 0.0)) throw DomainError("check_theorem_properties: T must be positive");
  if (t_grid.size() < 5) throw DomainError("check_theorem_properties: t grid needs at least 5 points");
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
      throw DomainError("check_theorem_properties: t grid must be positive and increasing");

  TheoremReport rep;
  rep.bounds.lambda = lambda;
  rep.bounds.lambda1 = lambda1;
  rep.bounds.T = T;
  const std::size_t n = t_grid.size();
  std::vector<double> u(n), v(n), u1(n), v1(n), du(n);
  try {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = t_grid[i];
      u[i] = fundamental_u(kernel, lambda, t, cfg);
      v[i] = impulse_v(kernel, lambda, t, cfg);
      u1[i] = fundamental_u(kernel, lambda1, t, cfg);
      v1[i] = impulse_v(kernel, lambda1, t, cfg);
      const double h = 1e-3 * t;
      du[i] = (fundamental_u(kernel, lambda, t + h, cfg) - fundamental_u(kernel, lambda, t - h, cfg)) / (2.0 * h);
    }
    rep.bounds.integral_value = lambda * integral_v(kernel, lambda, T, cfg);
    rep.bounds.lower_C = lambda1 * integral_v(kernel, lambda1, T, cfg);
  } catch (const std::exception& e) {
    rep.violations.push_back(std::string("evaluation failed: ") + e.what());
    return rep;
  }

  rep.completely_monotone = true;
  for (auto [name, f] : {std::pair{"u", &u}, std::pair{"v", &v}}) {
    for (int order = 1; order <= 4; ++order) {
      for (std::size_t i = 0; i + order < n; ++i) {
        const auto [d, scale] = divided_difference(t_grid, *f, i, order);
        const double signed_d = (order % 2 ? -d : d);
        if (signed_d < -1e-8 * scale) {
          rep.completely_monotone = false;
          std::ostringstream os;
          os << "CM order " << order << " of " << name;
          rep.violations.push_back(point(os.str().c_str(), t_grid[i], signed_d));
        }
      }
    }
  }

  rep.u_in_unit_interval = true;
  rep.v_positive = true;
  rep.derivative_identity = true;
  rep.lambda_monotone = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t_grid[i];
    if (!(u[i] > 0.0 && u[i] < 1.0)) {
      rep.u_in_unit_interval = false;
      rep.violations.push_back(point("u outside (0,1)", t, u[i]));
    }
    if (!(v[i] > 0.0)) {
      rep.v_positive = false;
      rep.violations.push_back(point("v not positive", t, v[i]));
    }
    const double resid = std::abs(du[i] + lambda * v[i]) / (lambda * v[i]);
    rep.max_derivative_residual = std::max(rep.max_derivative_residual, resid);
    if (!(resid <= 1e-4)) {
      rep.derivative_identity = false;
      rep.violations.push_back(point("u' + lambda v relative residual", t, resid));
    }
    if (!(u[i] <= u1[i] + 1e-8)) {
      rep.lambda_monotone = false;
      rep.violations.push_back(point("u(lambda) > u(lambda1)", t, u[i] - u1[i]));
    }
    if (!(v[i] <= v1[i] + 1e-8)) {
      rep.lambda_monotone = false;
      rep.violations.push_back(point("v(lambda) > v(lambda1)", t, v[i] - v1[i]));
    }
  }

  auto& b = rep.bounds;
  b.pass_lower = b.lower_C <= b.integral_value + 1e-8;
  b.pass_upper = b.integral_value < 1.0;
  if (!b.pass_lower) rep.violations.push_back(point("lower bound C > lambda int v", T, b.lower_C - b.integral_value));
  if (!b.pass_upper) rep.violations.push_back(point("lambda int v >= 1", T, b.integral_value));
  return rep;
}

}  // namespace genfrac
