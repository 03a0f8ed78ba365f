#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace focklab {

using Complex = std::complex<double>;

/// A point of the complex plane. Plain std::complex; finiteness is checked
/// where points enter the library (region construction, JSON parsing).
using ComplexPoint = std::complex<double>;

inline constexpr std::size_t kDefaultTruncation = 64;

// Fock space F^2(C) with weight exp(-pi |z|^2) dA(z) and kernel exp(pi conj(w) z).
// Orthonormal basis e_n(z) = sqrt(pi^n / n!) z^n.

/// e_n(z). The prefactor is evaluated as exp((n ln pi - ln n!) / 2) so large n never overflows.
Complex basis_eval(std::size_t n, ComplexPoint z);

/// Fills out[n] = e_n(z) for n < out.size() by the stable recurrence
/// e_n = e_{n-1} * z * sqrt(pi / n).
void basis_values(ComplexPoint z, std::span<Complex> out);

/// Element of F^2 truncated to span{e_0, ..., e_{N-1}}.
class FockFunction {
 public:
  /// Zero function with N coefficients. N must be >= 1.
  explicit FockFunction(std::size_t truncation);
  explicit FockFunction(std::vector<Complex> coeffs);

  static FockFunction basis_vector(std::size_t n, std::size_t truncation);

  std::size_t truncation() const { return coeffs_.size(); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex coeff(std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : Complex{}; }

  /// Sum |a_n|^2 (Parseval).
  double norm_squared() const;
  bool is_unit(double tol = 1e-14) const;

  /// Copy scaled to unit norm. Throws std::domain_error on the zero function.
  FockFunction normalized() const;

  Complex operator()(ComplexPoint z) const;

 private:
  std::vector<Complex> coeffs_;
};

/// sum_n a_n e_n(z).
Complex eval(const FockFunction& f, ComplexPoint z);

/// <f, g> = sum_n a_n conj(b_n); the shorter operand is zero-padded.
Complex inner(const FockFunction& f, const FockFunction& g);

/// K(z, w) = exp(pi conj(w) z).
Complex kernel(ComplexPoint z, ComplexPoint w);

struct CoherentState {
  FockFunction function;
  /// Poisson(pi |w0|^2) mass at indices >= N, i.e. 1 - ||function||^2.
  double tail_mass = 0.0;
  /// Set when tail_mass exceeds kCoherentTailThreshold.
  bool under_resolved = false;
};

inline constexpr double kCoherentTailThreshold = 1e-12;

/// K(., w0) / sqrt(K(w0, w0)) truncated to N coefficients:
/// a_n = exp(-pi |w0|^2 / 2) sqrt(pi^n / n!) conj(w0)^n.
CoherentState coherent(ComplexPoint w0, std::size_t truncation = kDefaultTruncation);

/// max over samples of |f(z)|^2 exp(-pi |z|^2). For unit f the result is <= 1.
double pointwise_bound_check(const FockFunction& f, std::span<const ComplexPoint> samples);

/// Square grid of (2 * half_count + 1)^2 points covering [-extent, extent]^2.
std::vector<ComplexPoint> square_grid(double extent, std::size_t half_count);

void to_json(nlohmann::json& j, const FockFunction& f);
/// Accepts {"truncation": N, "coeffs": [[re, im], ...]}. Shorter coeff lists are
/// zero-padded to N. An optional "weight" field must name the exp(-pi|z|^2) convention.
FockFunction fock_function_from_json(const nlohmann::json& j);

}  // namespace focklab
