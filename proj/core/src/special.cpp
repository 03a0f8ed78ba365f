#include "focklab/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace focklab {
namespace {

constexpr std::size_t kTableSize = 4096;

const std::array<double, kTableSize>& log_factorial_table() {
  static const std::array<double, kTableSize> table = [] {
    std::array<double, kTableSize> t{};
    t[0] = 0.0;
    for (std::size_t n = 1; n < kTableSize; ++n) {
      t[n] = std::lgamma(static_cast<double>(n) + 1.0);
    }
    return t;
  }();
  return table;
}

// Returns 2a as an integer, or throws if a is not a positive half-integer.
long twice_shape(double a) {
  const double twice = 2.0 * a;
  if (!(a > 0.0) || !std::isfinite(a) || twice != std::floor(twice) || twice > 2.0 * kTableSize - 4) {
    throw std::invalid_argument("incomplete gamma: shape must be a positive half-integer, got " +
                                std::to_string(a));
  }
  return static_cast<long>(twice);
}

void check_argument(double x) {
  if (!(x >= 0.0) || std::isnan(x)) {
    throw std::invalid_argument("incomplete gamma: argument must be >= 0");
  }
}

// P(a, x) by the power series; converges for all x, used when x < a.
double lower_series(double a, double x) {
  if (x == 0.0) return 0.0;
  const double log_prefactor = a * std::log(x) - x - log_gamma_half_integer(a + 1.0);
  double term = 1.0;
  CompensatedSum sum;
  sum.add(term);
  for (int k = 1; k < 10000; ++k) {
    term *= x / (a + k);
    sum.add(term);
    if (term < std::numeric_limits<double>::epsilon() * 1e-3 * sum.value()) break;
  }
  return std::exp(log_prefactor) * sum.value();
}

// Q(a, x) by the finite closed form; all terms are positive.
double upper_closed_form(double a, double x) {
  const long twice = twice_shape(a);
  CompensatedSum sum;
  if (x == 0.0) return 1.0;
  const double log_x = std::log(x);
  if (twice % 2 == 0) {
    const long n = twice / 2 - 1;  // a = n + 1
    for (long j = 0; j <= n; ++j) {
      sum.add(std::exp(-x + static_cast<double>(j) * log_x - log_factorial(static_cast<std::size_t>(j))));
    }
  } else {
    const long k = (twice - 1) / 2;  // a = k + 1/2
    sum.add(std::erfc(std::sqrt(x)));
    for (long j = 0; j < k; ++j) {
      const double s = static_cast<double>(j) + 0.5;
      sum.add(std::exp(-x + s * log_x - log_gamma_half_integer(s + 1.0)));
    }
  }
  return sum.value();
}

}  // namespace

double log_factorial(std::size_t n) {
  if (n < kTableSize) return log_factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_gamma_half_integer(double a) {
  const long twice = twice_shape(a);
  if (twice % 2 == 0) return log_factorial(static_cast<std::size_t>(twice / 2 - 1));
  // Gamma(k + 1/2) = sqrt(pi) (2k)! / (4^k k!)
  const auto k = static_cast<std::size_t>((twice - 1) / 2);
  return 0.5 * std::log(kPi) + log_factorial(2 * k) - static_cast<double>(k) * std::log(4.0) -
         log_factorial(k);
}

double regularized_lower_gamma(double a, double x) {
  twice_shape(a);
  check_argument(x);
  if (std::isinf(x)) return 1.0;
  if (x < a) return lower_series(a, x);
  return 1.0 - upper_closed_form(a, x);
}

double regularized_upper_gamma(double a, double x) {
  twice_shape(a);
  check_argument(x);
  if (std::isinf(x)) return 0.0;
  if (x < a) return 1.0 - lower_series(a, x);
  return upper_closed_form(a, x);
}

double regularized_gamma_increment(double a, double x1, double x2) {
  twice_shape(a);
  check_argument(x1);
  check_argument(x2);
  if (x2 < x1) throw std::invalid_argument("incomplete gamma increment: x2 < x1");
  if (x1 == x2) return 0.0;
  if (x1 >= a) return regularized_upper_gamma(a, x1) - regularized_upper_gamma(a, x2);
  return regularized_lower_gamma(a, x2) - regularized_lower_gamma(a, x1);
}

double poisson_tail(std::size_t count, double mean) {
  if (count == 0) return 1.0;
  if (mean == 0.0) return 0.0;
  return regularized_lower_gamma(static_cast<double>(count), mean);
}

}  // namespace focklab
