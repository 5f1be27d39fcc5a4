#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "genfrac/kernel.hpp"
#include "genfrac/laplace_inversion.hpp"

namespace genfrac {

using RealFunction = std::function<double(double)>;

/// Fundamental solution u(t; lambda): inverse transform of g/(s(g+lambda)).
/// u(0) = 1 exactly. Throws ConsistencyError if the result leaves [-tol, 1+tol].
double fundamental_u(const KernelSpec& kernel, double lambda, double t, const ContourConfig& cfg = {});
Inversion fundamental_u_detailed(const KernelSpec& kernel, double lambda, double t,
                                 const ContourConfig& cfg = {});

/// Impulse response v(t; lambda): inverse transform of 1/(g+lambda), t > 0.
double impulse_v(const KernelSpec& kernel, double lambda, double t, const ContourConfig& cfg = {});
Inversion impulse_v_detailed(const KernelSpec& kernel, double lambda, double t, const ContourConfig& cfg = {});

/// \int_0^T v(t; lambda) dt = (1 - u(T; lambda)) / lambda, never by quadrature of v.
/// When u(T) > 1/2 the complement 1 - u is inverted directly from 1/(s(g+lambda))
/// so that small integrals keep their relative accuracy.
double integral_v(const KernelSpec& kernel, double lambda, double T, const ContourConfig& cfg = {});

/// Moments of v on explicit lag cells 0 = e_0 < e_1 < ... < e_m, where every cell
/// past the first satisfies e_{c+1} <= 2 e_c. Cell 0 carries the exact mass of v,
/// to be applied at lag 0. Cell c >= 1 carries weights for the five Gauss-Lobatto
/// points of [e_c, e_{c+1}], obtained from 10-point Gauss-Legendre moments.
class ImpulseMoments {
 public:
  ImpulseMoments(const KernelSpec& kernel, double lambda, std::vector<double> edges, const ContourConfig& cfg = {});

  std::span<const double> edges() const { return edges_; }
  std::size_t cells() const { return edges_.size() - 1; }
  double mass0() const { return mass0_; }
  const std::array<double, 5>& cell_weights(std::size_t c) const;
  static std::array<double, 5> cell_points(double a, double b);

 private:
  std::vector<double> edges_;
  double mass0_ = 0.0;
  std::vector<std::array<double, 5>> weights_;
};

/// Product-integration rule for (v * f)(t) = \int_0^t v(sigma) f(t - sigma) d sigma.
///
/// The lag interval [0, t] is split into `cells` equal cells; the first one is
/// further split geometrically (ratio 1/2) toward sigma = 0 where v may be
/// singular. On every cell f is interpolated at the five Gauss-Lobatto points
/// and the moments of v are taken with 10-point Gauss-Legendre, which is
/// accurate because each cell sits at least one width away from the singularity.
/// The innermost cell [0, eps] carries the exact mass (1 - u(eps))/lambda at lag 0.
class ImpulseConvolution {
 public:
  ImpulseConvolution(const KernelSpec& kernel, double lambda, double t, const ContourConfig& cfg = {},
                     int cells = 32);

  double t() const { return t_; }
  /// Lags sigma_i, ascending, starting at 0. f is evaluated at t - sigma_i.
  std::span<const double> lags() const { return lags_; }
  std::span<const double> weights() const { return weights_; }
  double apply(const RealFunction& f) const;
  /// Same rule applied to values f(t - sigma_i) supplied by the caller.
  double apply_values(std::span<const double> f_at_lags) const;
  /// Sum of the weights, equal to \int_0^t v up to quadrature error.
  double mass() const;

 private:
  double t_;
  std::vector<double> lags_;
  std::vector<double> weights_;
};

/// Lags used by ImpulseConvolution(t, cells); they do not depend on the kernel.
std::vector<double> convolution_lags(double t, int cells);

struct ConvolutionResult {
  double value = 0.0;
  double error = 0.0;  // |I_J - I_2J|
  int cells = 0;
};

/// (v * f)(t) with the cell count doubled until two successive rules agree to
/// `tol` relative to max(|I|, \int v |f|). QuadratureError after `max_cells`.
ConvolutionResult convolve_impulse(const KernelSpec& kernel, double lambda, const RealFunction& f, double t,
                                   const ContourConfig& cfg = {}, double tol = 1e-9, int max_cells = 512);

struct RelaxationSolution {
  KernelSpec kernel;
  double lambda = 0.0;
  double a = 0.0;
  std::vector<double> t_grid;
  std::vector<double> u_values;  // a u(t) + (v * f)(t)
  std::vector<double> v_values;  // v(t; lambda)
  std::vector<double> err_estimates;    // for u_values
  std::vector<double> v_err_estimates;  // for v_values
};

/// u(t) = a u(t; lambda) + (v * f)(t) on an increasing grid of positive times.
/// Pass an empty f for the homogeneous problem.
RelaxationSolution solve_relaxation(const KernelSpec& kernel, double lambda, double a, const RealFunction& f,
                                    std::span<const double> t_grid, const ContourConfig& cfg = {});

/// Subordination density phi(t, tau): inverse transform in t of (g/s) e^{-tau g}.
/// Inverted on the hyperbola confined to the sector where Re g >= 0.
double subordination_phi(const KernelSpec& kernel, double t, double tau, const ContourConfig& cfg = {});
/// psi(t, tau): inverse transform in t of e^{-tau g}.
double subordination_psi(const KernelSpec& kernel, double t, double tau, const ContourConfig& cfg = {});

struct QuadratureEstimate {
  double value = 0.0;
  double error = 0.0;
  double upper_limit = 0.0;  // truncation point of the semi-infinite integral
};

/// \int_0^inf phi(t, tau) e^{-lambda tau} d tau (lambda = 0 gives the normalization).
QuadratureEstimate phi_moment(const KernelSpec& kernel, double t, double lambda, const ContourConfig& cfg = {});
/// \int_0^inf psi(t, tau) dt for fixed tau.
QuadratureEstimate psi_normalization(const KernelSpec& kernel, double tau, const ContourConfig& cfg = {});

/// n points, geometric, from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int n);

struct BoundsReport {
  double lambda = 0.0;
  double lambda1 = 0.0;
  double T = 0.0;
  double integral_value = 0.0;  // lambda \int_0^T v dt
  double lower_C = 0.0;         // 1 - u(T; lambda1)
  bool pass_lower = false;
  bool pass_upper = false;
};

struct TheoremReport {
  BoundsReport bounds;
  bool completely_monotone = false;  // (-1)^n divided differences of u and v, n <= 4
  bool u_in_unit_interval = false;
  bool v_positive = false;
  bool derivative_identity = false;  // u' = -lambda v
  bool lambda_monotone = false;      // u, v nonincreasing in lambda
  double max_derivative_residual = 0.0;
  std::vector<std::string> violations;

  bool all_pass() const;
};

/// Evaluates u and v on the grid for lambda and lambda1 and checks complete
/// monotonicity (to order 4), 0 < u < 1, v > 0, u' = -lambda v (central
/// differences, relative 1e-4), u(.;lambda) <= u(.;lambda1) and likewise for v
/// (+1e-8), and 1 - u(T;lambda1) <= lambda \int_0^T v < 1 (1e-8). Never throws
/// on a failed property; numerical errors are reported as violations too.
TheoremReport check_theorem_properties(const KernelSpec& kernel, double lambda, double lambda1, double T,
                                       std::span<const double> t_grid, const ContourConfig& cfg = {});

}  // namespace genfrac
