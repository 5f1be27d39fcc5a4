#pragma once

#include <optional>

namespace genfrac {

/// Arguments of the two-parameter Mittag-Leffler function E_{alpha,beta}(z).
struct MLQuery {
  double alpha;
  double beta;
  double z;
};

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta) for real z.
///
/// Supports 0 < alpha <= 2 and beta > 0. Positive z is summed directly; for
/// negative z the cheapest well-conditioned representation is chosen among
/// the power series, the algebraic asymptotic expansion and the real-line
/// integral obtained by collapsing the Hankel contour onto the branch cut
/// (plus the two pole residues when alpha > 1). Target relative accuracy is
/// 1e-10 for |z| <= 1e5. In the band 4 <= |z| <= 6 a second representation is
/// evaluated as a cross-check; disagreement above 1e-8 raises AccuracyError.
double ml(const MLQuery& q);

inline double mittag_leffler(double alpha, double beta, double z) { return ml({alpha, beta, z}); }

/// E_alpha(-lambda t^alpha): fundamental solution of the single-term relaxation
/// equation. Exactly 1 at t = 0.
double ml_fundamental(double alpha, double lambda, double t);

/// t^{alpha-1} E_{alpha,alpha}(-lambda t^alpha): impulse response of the
/// single-term relaxation equation (t > 0).
double ml_impulse(double alpha, double lambda, double t);

/// 1/Gamma(x) for all real x, zero at the poles 0, -1, -2, ...
double rgamma(double x);

/// sin(pi x), exactly zero at integers.
double sin_pi(double x);

namespace ml_repr {

/// Power series; empty if summation is ill-conditioned (sum |t_k| > max_condition |sum|)
/// or does not converge.
std::optional<double> series(double alpha, double beta, double z, double max_condition = 1e3);

/// -sum_{k>=1} z^{-k}/Gamma(beta - alpha k) for z < 0; empty unless the
/// divergent expansion reaches relative term size `target` before its terms
/// start to grow. Only meaningful for alpha < 1, or alpha = 1 with |z| > 50.
std::optional<double> asymptotic(double alpha, double beta, double z, double target = 1e-17);

/// Collapsed Hankel-contour integral for z < 0, 0 < alpha <= 2, alpha != 1,
/// beta < 1 + alpha (residues included for alpha > 1).
double integral(double alpha, double beta, double z);

}  // namespace ml_repr

}  // namespace genfrac
