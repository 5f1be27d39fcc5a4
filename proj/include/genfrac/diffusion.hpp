#pragma once

#include <functional>
#include <span>
#include <vector>

#include "genfrac/kernel.hpp"
#include "genfrac/laplace_inversion.hpp"
#include "genfrac/relaxation.hpp"

namespace genfrac {

/// Interval (0, L) with homogeneous Dirichlet conditions, truncated to N modes.
struct Domain1D {
  double L = 1.0;
  int n_modes = 64;

  void validate() const;
  bool operator==(const Domain1D&) const = default;
};

/// lambda_n = (n pi / L)^2, n = 1..N.
double eigenvalue(const Domain1D& d, int n);
/// phi_n(x) = sqrt(2/L) sin(n pi x / L).
double eigenfunction(const Domain1D& d, int n, double x);

struct Eigensystem {
  Domain1D domain;
  std::vector<double> eigenvalues;  // index n-1
  double phi(int n, double x) const { return eigenfunction(domain, n, x); }
};

Eigensystem eigensystem(const Domain1D& d);

/// Coefficients against the orthonormal sine basis.
struct SpectralField {
  Domain1D domain;
  std::vector<double> coeffs;

  static SpectralField zero(const Domain1D& d);
  /// phi_n itself.
  static SpectralField mode(const Domain1D& d, int n);

  /// L2(0,L) norm, equal to the Euclidean norm of the coefficients.
  double l2_norm() const;
  /// Spectral graph norm (sum lambda_n^2 c_n^2)^{1/2}, equivalent to the H^2 norm on D(Laplacian).
  double h2_norm() const;
  /// Euclidean norm of the last tenth of the coefficients (truncation diagnostic).
  double tail_norm() const;
  double operator()(double x) const;
  std::vector<double> sample(std::span<const double> x) const;
};

/// Coefficients of f by composite 10-point Gauss-Legendre with 20 points per
/// half-wave of the highest mode.
SpectralField project(const Domain1D& d, const std::function<double(double)>& f);
/// Coefficients from samples on the uniform grid x_j = j L / (M-1), j = 0..M-1,
/// by the trapezoidal rule. QuadratureError unless M - 1 >= 8 per oscillation
/// of mode N, i.e. M - 1 >= 4 N.
SpectralField project_samples(const Domain1D& d, std::span<const double> samples);

/// Time-dependent source through its coefficients F_n(t), n = 1..N.
using SpectralSource = std::function<std::vector<double>(double t)>;
using SpaceTimeFunction = std::function<double(double x, double t)>;

/// Projects F(., t) on demand.
SpectralSource project_source(const Domain1D& d, SpaceTimeFunction F);

/// Coefficients of u(., t) = sum a_n u(t; lambda_n) phi_n + sum (v(.; lambda_n) * F_n)(t) phi_n.
/// An empty source means F = 0. Errors are rethrown with the mode index attached.
SpectralField solve_direct(const KernelSpec& kernel, const Domain1D& d, const SpectralField& a,
                           const SpectralSource& F, double t, const ContourConfig& cfg = {});

struct RegularityReport {
  double lhs = 0.0;  // ||Laplacian u||_{L2(0,T;L2)}
  double rhs = 0.0;  // ||F||_{L2(0,T;L2)}
  bool pass = false;
  std::vector<double> mode_lhs;  // lambda_n ||u_n||_{L2(0,T)}
  std::vector<double> mode_rhs;  // ||F_n||_{L2(0,T)}
};

/// The a = 0 estimate ||Laplacian u|| <= ||F|| in L2(0,T; L2(0,L)), with time
/// integrals by Gauss-Legendre on panels graded geometrically toward t = 0.
/// pass = lhs <= rhs (1 + 1e-6).
RegularityReport regularity_check(const KernelSpec& kernel, const Domain1D& d, const SpectralSource& F, double T,
                                  const ContourConfig& cfg = {});

}  // namespace genfrac
