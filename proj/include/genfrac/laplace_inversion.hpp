#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace genfrac {

using cplx = std::complex<double>;

enum class ContourMethod {
  /// Talbot's cotangent contour with Weideman's optimized shape parameters,
  /// scaled as nodes/t. Needs the transform analytic and bounded on the whole
  /// cut plane.
  FixedTalbot,
  /// Hyperbola whose opening, node spacing and scale are optimized for the
  /// sector in which the transform is known to be bounded.
  HyperbolicContour,
};

std::string to_string(ContourMethod m);
ContourMethod contour_method_from_string(std::string_view name);

struct ContourConfig {
  ContourMethod method = ContourMethod::HyperbolicContour;
  /// Quadrature nodes on the contour (conjugate pairs included).
  int nodes = 64;
  /// Target relative accuracy of the inverted value.
  double working_tolerance = 1e-10;
  /// Error estimates below this absolute level are accepted regardless of |f|.
  double absolute_tolerance = 0.0;

  /// Throws ValidationError unless nodes >= 8, working tolerance in (1e-14, 1e-2)
  /// and absolute tolerance >= 0.
  void validate() const;
};

/// What the caller knows about the transform F.
struct TransformTraits {
  /// F is holomorphic for |arg(s - abscissa)| < pi; the contour wraps around
  /// this vertex. Shifting it onto the rightmost singularity keeps relative
  /// accuracy for exponentially decaying originals.
  double abscissa = 0.0;
  /// Half-angle of the sector (about `abscissa`) in which F is bounded.
  /// Values below pi require ContourMethod::HyperbolicContour.
  double sector = std::numbers::pi;
  /// The contour crosses the real axis no further left than abscissa +
  /// min_crossing. Set it to the saddle point of s t - log F(s) for transforms
  /// such as e^{-tau g(s)} whose decay on the contour must beat their growth.
  double min_crossing = 0.0;
};

struct Inversion {
  double value = 0.0;
  /// |f_M - f_{M/2}| (absolute), together with the round-off floor of the sum.
  double error = 0.0;
  int nodes = 0;
};

using Transform = std::function<cplx(cplx)>;

/// f(t) = (1/2 pi i) \int_Br e^{st} F(s) ds by trapezoidal quadrature on a
/// deformed contour. The error estimate compares M- and M/2-node results; if it
/// exceeds the working tolerance, M is doubled once before an AccuracyError.
/// Throws DomainError for t <= 0 or when the transform is not conjugate
/// symmetric (imaginary residue above 1e-10 relative).
Inversion invert(const Transform& F, double t, const ContourConfig& cfg = {},
                 const TransformTraits& traits = {});

/// As invert(), with the transform given through its logarithm. e^{st} and F
/// are combined in the exponent, so transforms like e^{-tau g(s)} can be
/// inverted on contours far to the right without overflow.
Inversion invert_log(const Transform& logF, double t, const ContourConfig& cfg = {},
                     const TransformTraits& traits = {});

/// Element-wise invert(); failures are rethrown with the offending t attached.
std::vector<Inversion> invert_grid(const Transform& F, std::span<const double> t_grid,
                                   const ContourConfig& cfg = {}, const TransformTraits& traits = {});

/// Single contour sum with a fixed node count, no error control. Exposed for
/// convergence studies.
double contour_sum(const Transform& F, double t, ContourMethod method, int nodes,
                   const TransformTraits& traits = {});

/// Shape parameters of the hyperbola s(u) = mu (1 + sin(iu - a)), u_k = k h.
struct HyperbolaParameters {
  double a = 0.0;        // asymptotic opening beyond pi/2
  double step = 0.0;     // h
  double mu_times_t = 0.0;
  double log_error = 0.0;  // predicted natural-log error level
};

/// Optimized parameters for `half_nodes` nodes on each side of the real axis
/// and a transform bounded in |arg s| < sector.
HyperbolaParameters hyperbola_parameters(int half_nodes, double sector);

}  // namespace genfrac
