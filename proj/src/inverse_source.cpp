#include "genfrac/inverse_source.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "genfrac/errors.hpp"
#include "genfrac/relaxation.hpp"

namespace genfrac {

namespace {

constexpr int kSupSamples = 1001;
constexpr double kBoundTol = 1e-6;

std::string mode_msg(const char* what, int n, double value, double bound) {
  std::ostringstream os;
  os.precision(10);
  os << what;
  if (n > 0) os << " at n=" << n;
  os << ": " << value << " vs " << bound;
  return os.str();
}

void check_same_domain(const InverseProblem& p, const SpectralField& f, const char* what) {
  if (!(f.domain == p.domain) || f.coeffs.size() != static_cast<std::size_t>(p.domain.n_modes))
    throw DomainError(std::string(what) + ": field does not match the problem domain");
}

}  // namespace

TimeProfile TimeProfile::constant(double c) {
  if (!std::isfinite(c)) throw DomainError("time profile: constant must be finite");
  TimeProfile q;
  q.fn_ = [c](double) { return c; };
  q.constant_ = c;
  std::ostringstream os;
  os.precision(17);
  os << c;
  q.label_ = os.str();
  return q;
}

TimeProfile TimeProfile::function(std::function<double(double)> fn, std::string label) {
  if (!fn) throw DomainError("time profile: empty function");
  TimeProfile q;
  q.fn_ = std::move(fn);
  q.label_ = std::move(label);
  return q;
}

double TimeProfile::operator()(double t) const {
  if (!fn_) throw DomainError("time profile: not initialised");
  const double v = fn_(t);
  if (!std::isfinite(v)) throw DomainError("time profile is not finite at t = " + std::to_string(t));
  return v;
}

double TimeProfile::sup_norm(double T) const {
  if (constant_) return std::abs(*constant_);
  double m = 0.0;
  for (int i = 0; i < kSupSamples; ++i) m = std::max(m, std::abs((*this)(T * i / (kSupSamples - 1))));
  return m;
}

double TimeProfile::sampled_min(double T) const {
  if (constant_) return *constant_;
  double m = (*this)(0.0);
  for (int i = 1; i < kSupSamples; ++i) m = std::min(m, (*this)(T * i / (kSupSamples - 1)));
  return m;
}

void InverseProblem::validate() const {
  domain.validate();
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("inverse problem: T must be positive and finite");
  if (!(q0 > 0.0)) throw DomainError("inverse problem: q0 must be positive");
  const double qmin = q.sampled_min(T);
  if (qmin < q0) {
    std::ostringstream os;
    os << "inverse problem: q drops to " << qmin << " on [0, T], below q0 = " << q0;
    throw DomainError(os.str());
  }
  if (!(h.domain == domain) || h.coeffs.size() != static_cast<std::size_t>(domain.n_modes))
    throw DomainError("inverse problem: observation does not match the domain");
}

double compute_Qn(const KernelSpec& kernel, double lambda_n, const TimeProfile& q, double T,
                  const ContourConfig& cfg) {
  double Q;
  if (auto c = q.constant_value())
    Q = *c * integral_v(kernel, lambda_n, T, cfg);
  else
    Q = convolve_impulse(kernel, lambda_n, [&](double t) { return q(t); }, T, cfg).value;
  if (!(Q > 0.0)) {
    std::ostringstream os;
    os << "Q_n(T) = " << Q << " is not positive for lambda_n = " << lambda_n;
    throw ConsistencyError(os.str());
  }
  return Q;
}

std::vector<double> compute_all_Qn(const InverseProblem& p, const ContourConfig& cfg) {
  std::vector<double> Q;
  Q.reserve(p.domain.n_modes);
  for (int n = 1; n <= p.domain.n_modes; ++n) {
    try {
      Q.push_back(compute_Qn(p.kernel, eigenvalue(p.domain, n), p.q, p.T, cfg));
    } catch (const ConsistencyError& e) {
      throw ConsistencyError("mode " + std::to_string(n) + ": " + e.what());
    } catch (const AccuracyError& e) {
      throw AccuracyError("mode " + std::to_string(n) + ": " + e.what());
    } catch (const QuadratureError& e) {
      throw QuadratureError("mode " + std::to_string(n) + ": " + e.what());
    }
  }
  return Q;
}

StabilityConstants stability_constants(const InverseProblem& p, const ContourConfig& cfg) {
  const double l1 = eigenvalue(p.domain, 1);
  // 1 - u(T; lambda_1) through lambda_1 \int_0^T v.
  return {p.q0 * l1 * integral_v(p.kernel, l1, p.T, cfg), p.q.sup_norm(p.T)};
}

QnBoundsReport check_Qn_bounds(const InverseProblem& p, const ContourConfig& cfg) {
  QnBoundsReport r;
  try {
    p.validate();
    r.C = stability_constants(p, cfg);
    r.Qn = compute_all_Qn(p, cfg);
  } catch (const std::exception& e) {
    r.violations.push_back(std::string("evaluation failed: ") + e.what());
    return r;
  }
  for (int n = 1; n <= p.domain.n_modes; ++n) {
    const double l = eigenvalue(p.domain, n), Q = r.Qn[n - 1];
    r.lambda.push_back(l);
    if (!(l * Q >= r.C.lower * (1.0 - kBoundTol))) r.violations.push_back(mode_msg("lambda Q below C_lower", n, l * Q, r.C.lower));
    if (!(l * Q <= r.C.upper * (1.0 + kBoundTol))) r.violations.push_back(mode_msg("lambda Q above C_upper", n, l * Q, r.C.upper));
  }
  r.pass = r.violations.empty();
  return r;
}

SpectralField forward_map(const SpectralField& f, const std::vector<double>& Qn) {
  if (Qn.size() != f.coeffs.size()) throw DomainError("forward_map: Q_n count does not match the field");
  SpectralField h = f;
  for (std::size_t n = 0; n < Qn.size(); ++n) h.coeffs[n] = f.coeffs[n] * Qn[n];
  return h;
}

SpectralField forward_map(const InverseProblem& p, const SpectralField& f, const ContourConfig& cfg) {
  check_same_domain(p, f, "forward_map");
  return forward_map(f, compute_all_Qn(p, cfg));
}

namespace {

SpectralField truncated_inverse(const SpectralField& h, const std::vector<double>& Q, int cutoff) {
  auto f = SpectralField::zero(h.domain);
  for (int n = 0; n < cutoff; ++n) f.coeffs[n] = h.coeffs[n] / Q[n];
  return f;
}

double residual(const SpectralField& f, const SpectralField& h, const std::vector<double>& Q) {
  const auto Hf = forward_map(f, Q);
  double s = 0.0;
  for (std::size_t n = 0; n < Q.size(); ++n) s += (Hf.coeffs[n] - h.coeffs[n]) * (Hf.coeffs[n] - h.coeffs[n]);
  return std::sqrt(s);
}

}  // namespace

InverseResult reconstruct(const InverseProblem& p, const ReconstructOptions& opt, const ContourConfig& cfg) {
  p.validate();
  const int N = p.domain.n_modes;
  if (opt.cutoff && (*opt.cutoff < 0 || *opt.cutoff > N))
    throw DomainError("reconstruct: cutoff must lie in 0.." + std::to_string(N));
  if (opt.noise_level && !(*opt.noise_level >= 0.0)) throw DomainError("reconstruct: noise level must be nonnegative");
  if (opt.E && !(*opt.E > 0.0)) throw DomainError("reconstruct: E must be positive");

  InverseResult r;
  r.Qn_values = compute_all_Qn(p, cfg);
  r.C = stability_constants(p, cfg);

  if (opt.cutoff) {
    r.cutoff = *opt.cutoff;
  } else if (opt.noise_level && *opt.noise_level > 0.0) {
    const double target = opt.discrepancy_factor * *opt.noise_level;
    r.cutoff = -1;
    for (int c = 0; c <= N; ++c) {
      if (residual(truncated_inverse(p.h, r.Qn_values, c), p.h, r.Qn_values) <= target) {
        r.cutoff = c;
        break;
      }
    }
    if (r.cutoff < 0) {
      std::ostringstream os;
      os << "no cutoff up to " << N << " brings the residual below " << target;
      throw DiscrepancyError(os.str());
    }
  } else {
    r.cutoff = N;
  }
  r.f = truncated_inverse(p.h, r.Qn_values, r.cutoff);
  r.residual = residual(r.f, p.h, r.Qn_values);
  const double E = opt.E ? *opt.E : r.f.h2_norm();
  r.stability_bound = E > 0.0 ? stability_bound(E, p.h.l2_norm(), r.C.lower) : 0.0;
  return r;
}

double stability_bound(double E, double h_norm, double C_lower) {
  if (!(E > 0.0)) throw DomainError("stability_bound: E must be positive");
  if (!(C_lower > 0.0)) throw DomainError("stability_bound: C_lower must be positive");
  if (!(h_norm >= 0.0)) throw DomainError("stability_bound: h_norm must be nonnegative");
  return std::sqrt(E * h_norm / C_lower);
}

SandwichReport check_regularity_sandwich(const InverseProblem& p, const SpectralField& f_true,
                                         const ContourConfig& cfg) {
  SandwichReport r;
  std::vector<double> Q;
  StabilityConstants C;
  try {
    check_same_domain(p, f_true, "check_regularity_sandwich");
    Q = compute_all_Qn(p, cfg);
    C = stability_constants(p, cfg);
  } catch (const std::exception& e) {
    r.violations.push_back(std::string("evaluation failed: ") + e.what());
    return r;
  }
  const auto h = forward_map(f_true, Q);
  r.f_l2 = f_true.l2_norm();
  r.h_h2 = h.h2_norm();
  r.lower = C.lower * r.f_l2;
  r.upper = C.upper * r.f_l2;
  if (!(r.lower <= r.h_h2 * (1.0 + kBoundTol))) r.violations.push_back(mode_msg("C_lower ||f|| above ||h||_H2", 0, r.lower, r.h_h2));
  if (!(r.h_h2 <= r.upper * (1.0 + kBoundTol))) r.violations.push_back(mode_msg("||h||_H2 above C_upper ||f||", 0, r.h_h2, r.upper));

  double s = 0.0;
  for (std::size_t n = 0; n < Q.size(); ++n) s += h.coeffs[n] * h.coeffs[n] / std::pow(Q[n], 4);
  r.cs_lhs = r.f_l2 * r.f_l2;
  r.cs_rhs = std::sqrt(s) * h.l2_norm();
  if (!(r.cs_lhs <= r.cs_rhs * (1.0 + kBoundTol))) r.violations.push_back(mode_msg("Cauchy-Schwarz step", 0, r.cs_lhs, r.cs_rhs));
  r.pass = r.violations.empty();
  return r;
}

SpectralField random_field(const Domain1D& d, int modes, std::uint64_t seed) {
  auto f = SpectralField::zero(d);
  if (modes < 0 || modes > d.n_modes) throw DomainError("random_field: mode count outside 0..N");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int n = 0; n < modes; ++n) f.coeffs[n] = normal(rng);
  return f;
}

SpectralField gaussian_noise(const Domain1D& d, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw DomainError("gaussian_noise: level must be nonnegative");
  auto e = random_field(d, d.n_modes, seed);
  const double norm = e.l2_norm();
  for (double& c : e.coeffs) c *= norm > 0.0 ? delta / norm : 0.0;
  return e;
}

}  // namespace genfrac
