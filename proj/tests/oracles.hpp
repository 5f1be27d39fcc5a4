#pragma once

// Independent reference values for the tests, computed in 50-digit arithmetic.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <optional>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

// E_{alpha,beta}(z) by the power series in 50 digits. Empty when the largest
// term would leave fewer than 20 significant digits.
inline std::optional<double> ml_series(double alpha, double beta, double z) {
  if (z != 0) {
    // Cheap double-precision scan of the term sizes; 50-digit Gamma is slow.
    // Negative z: too much cancellation. Positive z: the value overflows.
    double peak = -INFINITY;
    for (int k = 0; k < 20000; ++k)
      if (alpha * k + beta > 0) peak = std::max(peak, k * std::log(std::abs(z)) - std::lgamma(alpha * k + beta));
    if (peak > (z < 0 ? std::log(1e35) : 700.0)) return std::nullopt;
  }
  const big a(alpha), b(beta), x(z);
  big sum = 0, largest = 0, term;
  big power = 1;
  bool converged = false;
  int small = 0;
  for (int k = 0; k < 20000; ++k) {
    const big arg = a * k + b;
    // 1/Gamma vanishes at the poles.
    const bool pole = arg <= 0 && boost::multiprecision::floor(arg) == arg;
    term = pole ? big(0) : power / boost::math::tgamma(arg);
    sum += term;
    largest = std::max(largest, big(boost::multiprecision::abs(term)));
    small = boost::multiprecision::abs(term) < 1e-40 * boost::multiprecision::abs(sum) ? small + 1 : 0;
    // Cancellation this deep cannot leave 10 correct digits.
    if (largest > 1e40 * (1 + boost::multiprecision::abs(sum))) return std::nullopt;
    if (small == 5) {
      converged = true;
      break;
    }
    power *= x;
  }
  if (!converged || largest > 1e30 * boost::multiprecision::abs(sum)) return std::nullopt;
  return static_cast<double>(sum);
}

// e^{x^2} erfc(x) = E_{1/2}(-x), for x >= 0. Beyond x = 30 the asymptotic
// series 1/(x sqrt(pi)) sum (-1)^k (2k-1)!! / (2x^2)^k, truncated at its
// smallest term, is far below 1e-50.
inline double erfcx(double x) {
  const big b(x);
  if (x <= 30) return static_cast<double>(boost::multiprecision::exp(b * b) * boost::math::erfc(b));
  big sum = 1, term = 1;
  const big r = 1 / (2 * b * b);
  for (int k = 1; k < 200; ++k) {
    const big next = -term * (2 * k - 1) * r;
    if (boost::multiprecision::abs(next) >= boost::multiprecision::abs(term)) break;
    term = next;
    sum += term;
  }
  return static_cast<double>(sum / (b * boost::math::constants::root_pi<big>()));
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
