#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace genfrac {

using cplx = std::complex<double>;

enum class KernelType { SingleTerm, MultiTerm, DistributedUniform, Custom };

struct KernelTerm {
  double weight;
  double order;
  bool operator==(const KernelTerm&) const = default;
};

/// Memory kernel k(t) of the convolutional time derivative, described through
/// its Laplace symbol g(s) = s k^(s).
///
/// Built-in variants have closed-form symbols:
///   SingleTerm          g(s) = s^alpha
///   MultiTerm           g(s) = sum_j c_j s^{alpha_j}
///   DistributedUniform  g(s) = (s - 1) / ln s
/// Custom kernels are given directly as a callable g. Instances are immutable
/// and cheap to copy.
class KernelSpec {
 public:
  using Symbol = std::function<cplx(cplx)>;

  static KernelSpec single_term(double alpha);
  /// Orders are sorted descending; equal orders are merged by summing weights.
  static KernelSpec multi_term(std::vector<KernelTerm> terms);
  static KernelSpec distributed_uniform();
  static KernelSpec custom(Symbol g, std::string label = "custom");

  KernelType type() const { return type_; }
  /// Order of a SingleTerm kernel; throws for other variants.
  double alpha() const;
  std::span<const KernelTerm> terms() const { return terms_; }
  const std::string& label() const { return label_; }

  /// g(s) on the principal branch. Throws DomainError for s on (-inf, 0].
  cplx g(cplx s) const;
  /// k^(s) = g(s) / s.
  cplx k_hat(cplx s) const;

  std::string describe() const;

 private:
  KernelSpec() = default;

  KernelType type_ = KernelType::SingleTerm;
  std::vector<KernelTerm> terms_;
  std::shared_ptr<const Symbol> custom_;
  std::string label_;
};

cplx eval_g(const KernelSpec& kernel, cplx s);
cplx eval_k_hat(const KernelSpec& kernel, cplx s);

struct AdmissibilityCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidityReport {
  std::vector<AdmissibilityCheck> checks;

  bool ok() const;
  /// Names of failed checks joined by "; ".
  std::string failures() const;
  const AdmissibilityCheck* find(std::string_view name) const;
};

// Check names used in ValidityReport.
inline constexpr std::string_view kCheckPositiveReal = "g(s) real and positive for s > 0";
inline constexpr std::string_view kCheckRatioAtInfinity = "g(s)/s -> 0 as s -> inf";
inline constexpr std::string_view kCheckGrowthAtInfinity = "g(s) -> inf as s -> inf";
inline constexpr std::string_view kCheckRatioAtZero = "g(s)/s -> inf as s -> 0";
inline constexpr std::string_view kCheckDecayAtZero = "g(s) -> 0 as s -> 0";
inline constexpr std::string_view kCheckSector = "|arg g(s)| <= |arg s|";

/// Probe points 10^-8 ... 10^8, four per decade.
std::vector<double> default_probe();

/// Numerical (necessary-condition) test of the admissibility conditions on g:
/// positivity on the real axis, the four limit trends at 0 and infinity, and
/// the sector bound on the rays arg s in {+-pi/4, +-pi/2, +-3pi/4}.
/// Trends are judged on the outermost three decades of `probe` at each end.
/// Failures are reported, never thrown.
ValidityReport validate_admissibility(const KernelSpec& kernel, std::span<const double> probe);

/// Largest angle theta in (pi/2, pi] such that Re g(s) >= 0 whenever
/// |arg s| <= theta and |s| lies in [1e-10, 1e14]. e^{-tau g(s)} stays bounded
/// on that sector, which is what contour inversion of the subordination
/// densities needs.
double bounded_exponential_sector(const KernelSpec& kernel);

}  // namespace genfrac
