#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "focklab/fock_space.hpp"

namespace focklab {

/// Dense N x N complex matrix, row-major. Holds truncated Toeplitz matrices
/// M[m][n] = <T e_n, e_m>; Hermitian whenever the symbol is real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t dimension);
  static HermitianMatrix diagonal(std::span<const double> values);

  std::size_t dimension() const { return n_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }
  std::span<const Complex> data() const { return data_; }

  /// max |M[m][n] - conj(M[n][m])|.
  double hermiticity_defect() const;
  /// max |M[m][n]| over m != n.
  double max_off_diagonal() const;
  /// Leading k x k block.
  HermitianMatrix leading_block(std::size_t k) const;

  /// y = M x.
  void apply(std::span<const Complex> x, std::span<Complex> y) const;
  /// x^H M x (real part; the imaginary residue vanishes for Hermitian M).
  Complex quadratic_form(std::span<const Complex> x) const;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

struct EigenDecomposition {
  /// Ascending.
  std::vector<double> values;
  /// Column k (stored contiguously as vectors[k]) is the unit eigenvector of values[k].
  std::vector<std::vector<Complex>> vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi on the real symmetric embedding [[Re M, -Im M], [Im M, Re M]].
/// Each eigenvalue of M appears twice in the embedding; one copy is kept.
/// Throws std::invalid_argument when M is not Hermitian within 1e-10.
EigenDecomposition jacobi_eigen(const HermitianMatrix& m);

struct NormOptions {
  /// Power iteration stops when successive Rayleigh quotients of M^2 differ by < tol.
  double tol = 1e-14;
  int max_iterations = 200000;
  /// Run the Jacobi certifier when the dimension permits.
  bool certify = true;
  std::size_t max_certified_dimension = 256;
};

struct NormResult {
  /// Certified value when available, otherwise the power-iteration value.
  double value = 0.0;
  double power_value = 0.0;
  double jacobi_value = 0.0;
  int iterations = 0;
  bool power_converged = false;
  bool certified = false;
  /// Eigenvector for the eigenvalue of largest modulus (Jacobi when certified).
  std::vector<Complex> top_vector;
  /// Signed eigenvalue of largest modulus.
  double top_eigenvalue = 0.0;
};

/// Largest |eigenvalue|: power iteration on M^2 from the normalized all-ones vector,
/// certified by a full Jacobi solve for N <= max_certified_dimension.
/// Throws std::invalid_argument when M is not Hermitian within 1e-10, and
/// std::runtime_error when the power iteration does not converge and no certificate exists.
NormResult operator_norm(const HermitianMatrix& m, const NormOptions& options = {});

void to_json(nlohmann::json& j, const HermitianMatrix& m);
HermitianMatrix hermitian_matrix_from_json(const nlohmann::json& j);
/// Real and imaginary parts as CSV: header row of column indices, then one row per matrix row.
std::string real_part_csv(const HermitianMatrix& m);
std::string imag_part_csv(const HermitianMatrix& m);

}  // namespace focklab
