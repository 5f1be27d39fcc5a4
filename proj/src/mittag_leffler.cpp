#include "genfrac/mittag_leffler.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "genfrac/errors.hpp"

namespace genfrac {

namespace {

using std::numbers::pi;

// Neumaier compensated summation.
struct Summer {
  double sum = 0.0;
  double comp = 0.0;
  double abs = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
    abs += std::abs(x);
  }
  double value() const { return sum + comp; }
};

void check_query(const MLQuery& q) {
  if (!(q.alpha > 0.0 && q.alpha <= 2.0)) {
    std::ostringstream os;
    os << "Mittag-Leffler: alpha must lie in (0,2], got " << q.alpha;
    throw DomainError(os.str());
  }
  if (!(q.beta > 0.0) || !std::isfinite(q.beta)) throw DomainError("Mittag-Leffler: beta must be positive");
  if (!std::isfinite(q.z)) throw DomainError("Mittag-Leffler: z must be finite");
}

bool is_integer(double x) { return x == std::nearbyint(x); }

// |z|^k / Gamma(a k + b), overflow-safe.
double series_term_magnitude(double log_abs_z, double abs_z, int k, double arg) {
  if (arg < 170.0 && k < 300) {
    const double p = std::pow(abs_z, k);
    if (std::isfinite(p) && p < 1e300) return p / std::tgamma(arg);
  }
  return std::exp(k * log_abs_z - std::lgamma(arg));
}

double integrand_cut(double r, double alpha, double beta, double x, double sin_beta, double sin_ab,
                     double cos_a) {
  if (r <= 0.0) return 0.0;
  const double ra = std::pow(r, alpha);
  const double num = ra * sin_beta - x * sin_ab;
  // r^{2a} + 2 x r^a cos(pi a) + x^2 = (r^a + x cos)^2 + (x sin)^2, no cancellation
  const double re = ra + x * cos_a;
  const double im = x * std::sqrt(std::max(0.0, 1.0 - cos_a * cos_a));
  const double den = re * re + im * im;
  return std::exp(-r) * std::pow(r, alpha - beta) * num / den;
}

// E_{1,beta}(-x) for x <= 50 via Kummer's transformation of 1F1(1; beta; -x).
double ml_alpha_one_kummer(double beta, double x) {
  Summer s;
  s.add(1.0);
  double power = 1.0;  // x^k / k!
  for (int k = 1; k < 2000; ++k) {
    power *= x / k;
    const double term = (beta - 1.0) / (beta - 1.0 + k) * power;
    s.add(term);
    if (std::abs(term) < 1e-18 * std::abs(s.value()) && k > x) break;
  }
  return std::exp(-x) * rgamma(beta) * s.value();
}

double select_and_evaluate(const MLQuery& q) {
  const double alpha = q.alpha, beta = q.beta, z = q.z;
  if (z == 0.0) return rgamma(beta);

  if (alpha == 1.0 && beta == 1.0) return std::exp(z);
  if (alpha == 2.0 && beta == 1.0 && z < 0.0) {
    // cos(sqrt(-z)) is the residue pair alone; fall through to the general path
    // which evaluates it the same way and keeps the cross-check honest.
  }

  if (z > 0.0) {
    if (auto s = ml_repr::series(alpha, beta, z, std::numeric_limits<double>::infinity())) return *s;
    throw DomainError("Mittag-Leffler: series did not converge for large positive z");
  }

  if (auto s = ml_repr::series(alpha, beta, z)) return *s;

  const double x = -z;
  if (alpha == 1.0) {
    if (x > 50.0)
      if (auto a = ml_repr::asymptotic(alpha, beta, z)) return *a;
    if (beta < 1.0) {
      // E_{1,b}(z) = 1/Gamma(b) + z E_{1,b+1}(z)
      return rgamma(beta) + z * ml_alpha_one_kummer(beta + 1.0, x);
    }
    return ml_alpha_one_kummer(beta, x);
  }
  if (alpha < 1.0)
    if (auto a = ml_repr::asymptotic(alpha, beta, z)) return *a;

  if (beta >= 1.0 + alpha) {
    // E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z
    return (select_and_evaluate({alpha, beta - alpha, z}) - rgamma(beta - alpha)) / z;
  }
  return ml_repr::integral(alpha, beta, z);
}

}  // namespace

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(x, 2.0);  // exact, r in (-2, 2)
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;  // r in [-1, 1]
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5) return std::sin(pi * (1.0 - r));
  if (r < -0.5) return -std::sin(pi * (1.0 + r));
  return std::sin(pi * r);
}

double rgamma(double x) {
  if (x <= 0.0 && is_integer(x)) return 0.0;
  if (x > 0.0) {
    if (x < 170.0) return 1.0 / std::tgamma(x);
    return std::exp(-std::lgamma(x));
  }
  // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
  const double y = 1.0 - x;
  const double g = y < 170.0 ? std::tgamma(y) : std::exp(std::lgamma(y));
  return g * sin_pi(x) / pi;
}

namespace ml_repr {

std::optional<double> series(double alpha, double beta, double z, double max_condition) {
  if (z == 0.0) return rgamma(beta);
  const double abs_z = std::abs(z);
  const double log_abs_z = std::log(abs_z);
  Summer s;
  int small_run = 0;
  for (int k = 0; k < 20000; ++k) {
    const double arg = alpha * k + beta;
    double mag = series_term_magnitude(log_abs_z, abs_z, k, arg);
    if (!std::isfinite(mag)) return std::nullopt;
    const double term = (z < 0.0 && (k & 1)) ? -mag : mag;
    s.add(term);
    // past the peak once Gamma grows faster than |z|^k
    const bool decreasing = alpha * std::log(std::max(arg, 1.0)) > log_abs_z + 1e-12 || arg > 2.0 * abs_z;
    if (decreasing && mag <= 1e-17 * std::abs(s.value()) + std::numeric_limits<double>::min()) {
      if (++small_run >= 3) {
        const double v = s.value();
        if (s.abs > max_condition * std::abs(v)) return std::nullopt;
        return v;
      }
    } else {
      small_run = 0;
    }
  }
  return std::nullopt;
}

std::optional<double> asymptotic(double alpha, double beta, double z, double target) {
  if (!(z < 0.0)) return std::nullopt;
  const double x = -z;
  const double log_x = std::log(x);
  Summer s;
  // Convergence is judged on the envelope x^{-k} Gamma(1 - arg)/pi (or the term
  // itself for arg > 0): near the poles of 1/Gamma single terms are spuriously small.
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 4000; ++k) {
    const double arg = beta - alpha * k;
    double envelope, term;
    if (arg > 0.0) {
      envelope = std::exp(-k * log_x - std::lgamma(arg));
      term = envelope;
    } else {
      envelope = std::exp(-k * log_x + std::lgamma(1.0 - arg)) / pi;
      term = envelope * sin_pi(arg);  // 1/Gamma(arg) = Gamma(1-arg) sin(pi arg)/pi
    }
    if (!std::isfinite(envelope)) return std::nullopt;
    if (envelope > prev && k > 2) return std::nullopt;  // diverging before converged
    // the k-th contribution is -(-1/x)^k / Gamma(beta - alpha k)
    s.add((k & 1) ? term : -term);
    if (envelope <= target * std::abs(s.value())) return s.value();
    prev = envelope;
  }
  return std::nullopt;
}

double integral(double alpha, double beta, double z) {
  if (!(z < 0.0)) throw DomainError("ml integral representation needs z < 0");
  if (alpha == 1.0) throw DomainError("ml integral representation excludes alpha = 1");
  if (!(beta < 1.0 + alpha)) throw DomainError("ml integral representation needs beta < 1 + alpha");
  const double x = -z;
  const double sin_beta = sin_pi(beta);
  const double sin_ab = sin_pi(alpha - beta);
  const double cos_a = [&] {
    const double c = sin_pi(alpha + 0.5);  // cos(pi alpha)
    return c;
  }();

  double total = 0.0;
  if (sin_beta != 0.0 || sin_ab != 0.0) {
    auto f = [&](double r) { return integrand_cut(r, alpha, beta, x, sin_beta, sin_ab, cos_a); };
    thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
    thread_local boost::math::quadrature::exp_sinh<double> es(12);
    constexpr double tol = 1e-15;

    // Break points: the denominator changes regime near r^alpha = x; for
    // alpha > 1/2 it peaks at r^alpha = -x cos(pi alpha) with relative width ~ sin(pi alpha).
    std::vector<double> pts{0.0};
    const double r0 = std::pow(x, 1.0 / alpha);
    if (r0 < 700.0) {
      const double peak = cos_a < 0.0 ? std::pow(-x * cos_a, 1.0 / alpha) : r0;
      const double width = std::max(std::abs(sin_pi(alpha)), 1e-6) * peak / alpha;
      for (double p : {peak - 4 * width, peak - width, peak, peak + width, peak + 4 * width, 2 * peak})
        if (p > pts.back() * (1 + 1e-12) && p > 0.0) pts.push_back(p);
    }
    if (pts.size() == 1) pts.push_back(1.0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += ts.integrate(f, pts[i], pts[i + 1], tol);
    total += es.integrate(f, pts.back(), std::numeric_limits<double>::infinity(), tol);
    total /= pi;
  }
  if (alpha > 1.0) {
    // residues at s* = x^{1/alpha} e^{+-i pi/alpha}: (2/alpha) Re(e^{s*} s*^{1-beta})
    const std::complex<double> sstar = std::polar(std::pow(x, 1.0 / alpha), pi / alpha);
    total += 2.0 / alpha * (std::exp(sstar) * std::pow(sstar, 1.0 - beta)).real();
  }
  return total;
}

}  // namespace ml_repr

double ml(const MLQuery& q) {
  check_query(q);
  const double value = select_and_evaluate(q);
  const double az = std::abs(q.z);
  if (q.z < 0.0 && az >= 4.0 && az <= 6.0 && q.alpha != 1.0) {
    // Independent second opinion in the switch band.
    std::optional<double> other = ml_repr::series(q.alpha, q.beta, q.z, 1e5);
    if (!other && q.alpha < 1.0) other = ml_repr::asymptotic(q.alpha, q.beta, q.z, 1e-12);
    if (!other && q.beta < 1.0 + q.alpha) other = ml_repr::integral(q.alpha, q.beta, q.z);
    if (other && std::abs(*other - value) > 1e-8 * std::abs(value)) {
      std::ostringstream os;
      os.precision(17);
      os << "Mittag-Leffler cross-check failed at (alpha=" << q.alpha << ", beta=" << q.beta
         << ", z=" << q.z << "): " << value << " vs " << *other;
      throw AccuracyError(os.str());
    }
  }
  return value;
}

double ml_fundamental(double alpha, double lambda, double t) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("ml_fundamental: alpha must lie in (0,1]");
  if (!(lambda >= 0.0)) throw DomainError("ml_fundamental: lambda must be nonnegative");
  if (!(t >= 0.0)) throw DomainError("ml_fundamental: t must be nonnegative");
  if (t == 0.0) return 1.0;
  return ml({alpha, 1.0, -lambda * std::pow(t, alpha)});
}

double ml_impulse(double alpha, double lambda, double t) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("ml_impulse: alpha must lie in (0,1]");
  if (!(lambda >= 0.0)) throw DomainError("ml_impulse: lambda must be nonnegative");
  if (!(t > 0.0)) throw DomainError("ml_impulse: t must be positive");
  return std::pow(t, alpha - 1.0) * ml({alpha, alpha, -lambda * std::pow(t, alpha)});
}

}  // namespace genfrac
