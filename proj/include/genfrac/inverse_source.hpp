#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "genfrac/diffusion.hpp"
#include "genfrac/kernel.hpp"
#include "genfrac/laplace_inversion.hpp"

namespace genfrac {

/// Known time profile q of the separable source F(x, t) = f(x) q(t).
class TimeProfile {
 public:
  static TimeProfile constant(double c);
  static TimeProfile function(std::function<double(double)> q, std::string label = "q(t)");

  double operator()(double t) const;
  /// Set when q is constant; enables the closed-form Q_n route.
  std::optional<double> constant_value() const { return constant_; }
  const std::string& label() const { return label_; }
  /// max |q| over 1001 equispaced points of [0, T].
  double sup_norm(double T) const;
  /// min q over the same points.
  double sampled_min(double T) const;

 private:
  std::function<double(double)> fn_;
  std::optional<double> constant_;
  std::string label_;
};

struct InverseProblem {
  KernelSpec kernel;
  Domain1D domain;
  TimeProfile q;
  double q0 = 1.0;  // lower bound of q on [0, T]
  double T = 1.0;
  SpectralField h;  // observation u(., T)

  /// DomainError on T <= 0, q0 <= 0, a sampled q below q0, or h on another domain.
  void validate() const;
};

/// Q_n(T) = \int_0^T v(T - tau; lambda_n) q(tau) d tau. For constant q = c it is
/// c (1 - u(T; lambda_n)) / lambda_n; otherwise product integration.
/// ConsistencyError if the result is not positive.
double compute_Qn(const KernelSpec& kernel, double lambda_n, const TimeProfile& q, double T,
                  const ContourConfig& cfg = {});
std::vector<double> compute_all_Qn(const InverseProblem& p, const ContourConfig& cfg = {});

/// C_lower = q0 (1 - u(T; lambda_1)), C_upper = ||q||_C.
struct StabilityConstants {
  double lower = 0.0;
  double upper = 0.0;
};
StabilityConstants stability_constants(const InverseProblem& p, const ContourConfig& cfg = {});

struct QnBoundsReport {
  StabilityConstants C;
  std::vector<double> Qn;
  std::vector<double> lambda;
  bool pass = false;
  std::vector<std::string> violations;
};

/// C_lower/lambda_n <= Q_n(T) <= C_upper/lambda_n for every mode, relative 1e-6.
/// Never throws on a failed bound; numerical failures become violations.
QnBoundsReport check_Qn_bounds(const InverseProblem& p, const ContourConfig& cfg = {});

/// h_n = f_n Q_n(T). The observation stored in p is ignored.
SpectralField forward_map(const InverseProblem& p, const SpectralField& f, const ContourConfig& cfg = {});
SpectralField forward_map(const SpectralField& f, const std::vector<double>& Qn);

struct ReconstructOptions {
  std::optional<int> cutoff;          // keep modes 1..cutoff
  std::optional<double> noise_level;  // delta, selects the cutoff by the discrepancy principle
  std::optional<double> E;            // a priori bound on ||f||_{H2}; defaults to that of the result
  double discrepancy_factor = 1.1;
};

struct InverseResult {
  SpectralField f;
  std::vector<double> Qn_values;
  int cutoff = 0;
  double residual = 0.0;  // ||forward_map(f) - h||_{L2}
  double stability_bound = 0.0;
  StabilityConstants C;
};

/// f_n = h_n / Q_n(T) for n <= cutoff, 0 beyond. Without a cutoff and with
/// noise_level > 0 the smallest cutoff whose residual is at most
/// discrepancy_factor * delta is used (DiscrepancyError if none is).
InverseResult reconstruct(const InverseProblem& p, const ReconstructOptions& opt = {}, const ContourConfig& cfg = {});

/// C_lower^{-1/2} E^{1/2} h_norm^{1/2}.
double stability_bound(double E, double h_norm, double C_lower);

struct SandwichReport {
  double f_l2 = 0.0;
  double h_h2 = 0.0;   // (sum lambda_n^2 h_n^2)^{1/2}
  double lower = 0.0;  // C_lower ||f||
  double upper = 0.0;  // C_upper ||f||
  // ||f||^2 <= (sum h_n^2 / Q_n^4)^{1/2} ||h||
  double cs_lhs = 0.0;
  double cs_rhs = 0.0;
  bool pass = false;
  std::vector<std::string> violations;
};

/// C_lower ||f||_{L2} <= ||h||_{H2} <= C_upper ||f||_{L2} for h = forward_map(f_true),
/// relative 1e-6, plus the Cauchy-Schwarz step. Never throws on a failed bound.
SandwichReport check_regularity_sandwich(const InverseProblem& p, const SpectralField& f_true,
                                         const ContourConfig& cfg = {});

/// Standard normal coefficients in modes 1..modes, zero beyond.
SpectralField random_field(const Domain1D& d, int modes, std::uint64_t seed);
/// Gaussian coefficient noise rescaled to L2 norm exactly delta.
SpectralField gaussian_noise(const Domain1D& d, double delta, std::uint64_t seed);

}  // namespace genfrac
