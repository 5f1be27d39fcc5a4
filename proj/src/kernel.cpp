#include "genfrac/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "genfrac/errors.hpp"

namespace genfrac {

namespace {

using std::numbers::pi;

void check_order(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    std::ostringstream os;
    os << "kernel order must lie in (0,1), got " << a;
    throw ValidationError(os.str());
  }
}

void check_argument(cplx s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw DomainError("g(s): non-finite argument");
  if (s.imag() == 0.0 && s.real() <= 0.0)
    throw DomainError("g(s): argument on the closed negative real axis");
}

// (s-1)/ln s. Near s = 1 the first five terms of the expansion in w = s-1;
// the next coefficient is 3/160, so the truncation error is below 2e-17 there.
cplx distributed_symbol(cplx s) {
  const cplx w = s - 1.0;
  if (std::abs(w) < 1e-3) {
    return 1.0 + w * (0.5 + w * (-1.0 / 12.0 + w * (1.0 / 24.0 + w * (-19.0 / 720.0))));
  }
  return w / std::log(s);
}

}  // namespace

KernelSpec KernelSpec::single_term(double alpha) {
  check_order(alpha);
  KernelSpec k;
  k.type_ = KernelType::SingleTerm;
  k.terms_ = {{1.0, alpha}};
  k.label_ = "single";
  return k;
}

KernelSpec KernelSpec::multi_term(std::vector<KernelTerm> terms) {
  if (terms.empty()) throw ValidationError("multi-term kernel needs at least one term");
  for (const auto& t : terms) {
    check_order(t.order);
    if (!(t.weight > 0.0) || !std::isfinite(t.weight))
      throw ValidationError("multi-term kernel weights must be positive and finite");
  }
  std::sort(terms.begin(), terms.end(),
            [](const KernelTerm& a, const KernelTerm& b) { return a.order > b.order; });
  std::vector<KernelTerm> merged;
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().order == t.order)
      merged.back().weight += t.weight;
    else
      merged.push_back(t);
  }
  KernelSpec k;
  k.type_ = KernelType::MultiTerm;
  k.terms_ = std::move(merged);
  k.label_ = "multi";
  return k;
}

KernelSpec KernelSpec::distributed_uniform() {
  KernelSpec k;
  k.type_ = KernelType::DistributedUniform;
  k.label_ = "distributed-uniform";
  return k;
}

KernelSpec KernelSpec::custom(Symbol g, std::string label) {
  if (!g) throw ValidationError("custom kernel needs a symbol");
  KernelSpec k;
  k.type_ = KernelType::Custom;
  k.custom_ = std::make_shared<const Symbol>(std::move(g));
  k.label_ = std::move(label);
  return k;
}

double KernelSpec::alpha() const {
  if (type_ != KernelType::SingleTerm) throw DomainError("alpha() is defined for single-term kernels only");
  return terms_.front().order;
}

cplx KernelSpec::g(cplx s) const {
  check_argument(s);
  switch (type_) {
    case KernelType::SingleTerm:
    case KernelType::MultiTerm: {
      cplx sum = 0.0;
      for (const auto& t : terms_) sum += t.weight * std::pow(s, t.order);
      return sum;
    }
    case KernelType::DistributedUniform:
      return distributed_symbol(s);
    case KernelType::Custom:
      return (*custom_)(s);
  }
  return {};
}

cplx KernelSpec::k_hat(cplx s) const { return g(s) / s; }

std::string KernelSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (type_) {
    case KernelType::SingleTerm:
      os << "SingleTerm(alpha=" << terms_.front().order << ")";
      break;
    case KernelType::MultiTerm:
      os << "MultiTerm([";
      for (std::size_t i = 0; i < terms_.size(); ++i)
        os << (i ? ", " : "") << "(" << terms_[i].weight << ", " << terms_[i].order << ")";
      os << "])";
      break;
    case KernelType::DistributedUniform:
      os << "DistributedUniform";
      break;
    case KernelType::Custom:
      os << "Custom(" << label_ << ")";
      break;
  }
  return os.str();
}

cplx eval_g(const KernelSpec& kernel, cplx s) { return kernel.g(s); }
cplx eval_k_hat(const KernelSpec& kernel, cplx s) { return kernel.k_hat(s); }

bool ValidityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string ValidityReport::failures() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.passed) continue;
    if (!out.empty()) out += "; ";
    out += c.name;
    if (!c.detail.empty()) out += " (" + c.detail + ")";
  }
  return out;
}

const AdmissibilityCheck* ValidityReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<double> default_probe() {
  std::vector<double> p;
  for (int i = -32; i <= 32; ++i) p.push_back(std::pow(10.0, i / 4.0));
  return p;
}

namespace {

// Minimum per-decade ratio demanded of a trend. Logarithmic symbols such as
// (s-1)/ln s move by only ~14% per decade near 1e8, so the bar sits at 5%.
constexpr double kTrendFactor = 1.05;

struct Sample {
  double s;
  double g;
};

// `pts` ordered from the extreme inward; each decade step must move the
// quantity in the stated direction by at least kTrendFactor.
AdmissibilityCheck trend_check(std::string_view name, const std::vector<Sample>& pts,
                               double (*quantity)(const Sample&), bool growing_outward) {
  AdmissibilityCheck c{std::string(name), true, {}};
  if (pts.size() < 2) {
    c.passed = false;
    c.detail = "probe does not span enough decades";
    return c;
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double outer = quantity(pts[i]);
    const double inner = quantity(pts[i + 1]);
    const bool ok = std::isfinite(outer) && std::isfinite(inner) && inner > 0.0 && outer > 0.0 &&
                    (growing_outward ? outer >= kTrendFactor * inner : inner >= kTrendFactor * outer);
    if (!ok) {
      std::ostringstream os;
      os.precision(6);
      os << "between s=" << pts[i + 1].s << " and s=" << pts[i].s << ": " << inner << " -> " << outer;
      c.passed = false;
      c.detail = os.str();
      return c;
    }
  }
  return c;
}

// Up to four samples, one decade apart, starting at the extreme end of the probe.
std::vector<Sample> decade_samples(const KernelSpec& k, std::vector<double> sorted, bool from_top) {
  std::vector<Sample> pts;
  if (sorted.empty()) return pts;
  if (from_top) std::reverse(sorted.begin(), sorted.end());
  double next = sorted.front();
  for (double s : sorted) {
    const bool reached = from_top ? s <= next * (1 + 1e-12) : s >= next * (1 - 1e-12);
    if (!reached) continue;
    double gv = std::numeric_limits<double>::quiet_NaN();
    try {
      gv = k.g(cplx(s, 0.0)).real();
    } catch (const std::exception&) {
    }
    pts.push_back({s, gv});
    if (pts.size() == 4) break;
    next = from_top ? s / 10.0 : s * 10.0;
  }
  return pts;
}

}  // namespace

ValidityReport validate_admissibility(const KernelSpec& kernel, std::span<const double> probe) {
  ValidityReport report;
  std::vector<double> sorted;
  for (double s : probe)
    if (s > 0.0 && std::isfinite(s)) sorted.push_back(s);
  std::sort(sorted.begin(), sorted.end());

  {
    AdmissibilityCheck c{std::string(kCheckPositiveReal), true, {}};
    for (double s : sorted) {
      cplx gv;
      try {
        gv = kernel.g(cplx(s, 0.0));
      } catch (const std::exception& e) {
        c.passed = false;
        c.detail = e.what();
        break;
      }
      const bool ok = std::isfinite(gv.real()) && gv.real() > 0.0 &&
                      std::abs(gv.imag()) <= 1e-12 * std::abs(gv.real());
      if (!ok) {
        std::ostringstream os;
        os << "at s=" << s << " g=" << gv;
        c.passed = false;
        c.detail = os.str();
        break;
      }
    }
    report.checks.push_back(c);
  }

  const auto top = decade_samples(kernel, sorted, true);
  const auto bottom = decade_samples(kernel, sorted, false);
  auto ratio = +[](const Sample& p) { return p.g / p.s; };
  auto value = +[](const Sample& p) { return p.g; };
  auto inv_value = +[](const Sample& p) { return 1.0 / p.g; };
  report.checks.push_back(trend_check(kCheckRatioAtInfinity, top, ratio, false));
  report.checks.push_back(trend_check(kCheckGrowthAtInfinity, top, value, true));
  report.checks.push_back(trend_check(kCheckRatioAtZero, bottom, ratio, true));
  report.checks.push_back(trend_check(kCheckDecayAtZero, bottom, inv_value, true));

  {
    AdmissibilityCheck c{std::string(kCheckSector), true, {}};
    const double angles[] = {pi / 4, pi / 2, 3 * pi / 4};
    for (double r : sorted) {
      for (double a : angles) {
        for (double sign : {1.0, -1.0}) {
          const cplx s = std::polar(r, sign * a);
          double lhs = std::numeric_limits<double>::infinity();
          try {
            const cplx gv = kernel.g(s);
            if (std::isfinite(gv.real()) && std::isfinite(gv.imag())) lhs = std::abs(std::arg(gv));
          } catch (const std::exception&) {
          }
          if (!(lhs <= a + 1e-12)) {
            std::ostringstream os;
            os << "at |s|=" << r << ", arg s=" << sign * a << ": |arg g|=" << lhs;
            c.passed = false;
            c.detail = os.str();
            break;
          }
        }
        if (!c.passed) break;
      }
      if (!c.passed) break;
    }
    report.checks.push_back(c);
  }
  return report;
}

double bounded_exponential_sector(const KernelSpec& kernel) {
  auto ok_at = [&](double theta) {
    for (int i = -40; i <= 56; ++i) {
      const double r = std::pow(10.0, i / 4.0);
      cplx gv;
      try {
        gv = kernel.g(std::polar(r, theta));
      } catch (const std::exception&) {
        return false;
      }
      if (!(gv.real() >= 0.0)) return false;
    }
    return true;
  };
  if (ok_at(pi * (1 - 1e-12))) return pi;
  double lo = pi / 2, hi = pi;
  if (!ok_at(lo)) return lo;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok_at(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace genfrac
