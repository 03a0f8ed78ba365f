#pragma once

#include <cmath>
#include <cstddef>

namespace focklab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// ln(n!) from a precomputed table (n < 4096) or lgamma beyond it.
double log_factorial(std::size_t n);

/// ln Gamma(a) for a in {1/2, 1, 3/2, ...}; exact table lookups, no global state.
double log_gamma_half_integer(double a);

/// Regularized lower incomplete gamma P(a, x) for shapes a in {1/2, 1, 3/2, 2, ...}.
///
/// Integer shapes use the finite Poisson sum P(n+1, x) = 1 - e^{-x} sum_{j<=n} x^j / j!,
/// half-integer shapes the erfc-based analogue. When x < a the convergent power series
/// is used instead so that small values keep full relative precision.
/// Throws std::invalid_argument for other shapes or x < 0.
double regularized_lower_gamma(double a, double x);

/// Q(a, x) = 1 - P(a, x), same shape restrictions.
double regularized_upper_gamma(double a, double x);

/// P(a, x2) - P(a, x1) for 0 <= x1 <= x2, evaluated on whichever tail keeps
/// the subtraction well conditioned.
double regularized_gamma_increment(double a, double x1, double x2);

/// Probability that a Poisson variable with the given mean is >= count.
double poisson_tail(std::size_t count, double mean);

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace focklab
