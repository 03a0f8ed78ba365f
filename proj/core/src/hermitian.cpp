#include "focklab/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace focklab {
namespace {

constexpr double kHermitianTol = 1e-10;

void require_hermitian(const HermitianMatrix& m, const char* who) {
  const double defect = m.hermiticity_defect();
  if (!(defect <= kHermitianTol)) {
    throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
}

// Dense real symmetric matrix, row-major.
struct RealSymmetric {
  std::size_t n;
  std::vector<double> a;
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

// Cyclic Jacobi: diagonalizes `s` in place and accumulates rotations in `v`.
int jacobi_sweeps(RealSymmetric& s, RealSymmetric& v) {
  const std::size_t n = s.n;
  double frob = 0.0;
  for (double x : s.a) frob += x * x;
  const double target = std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::epsilon() * frob;
  for (int sweep = 1; sweep <= 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * s(p, q) * s(p, q);
    }
    if (off <= target) return sweep - 1;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0.0) continue;
        const double app = s(p, p);
        const double aqq = s(q, q);
        if (std::abs(apq) < 1e-300) {
          s(p, q) = s(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double skp = s(k, p);
          const double skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double spk = s(p, k);
          const double sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        s(p, q) = s(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  throw std::runtime_error("jacobi_eigen: no convergence after 100 sweeps");
}

double dot_norm(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& c : x) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

HermitianMatrix::HermitianMatrix(std::size_t dimension) : n_(dimension), data_(dimension * dimension) {}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  HermitianMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

double HermitianMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return worst;
}

double HermitianMatrix::max_off_diagonal() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j) worst = std::max(worst, std::abs((*this)(i, j)));
    }
  }
  return worst;
}

HermitianMatrix HermitianMatrix::leading_block(std::size_t k) const {
  if (k > n_) throw std::out_of_range("leading_block: k exceeds dimension");
  HermitianMatrix out(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) out(i, j) = (*this)(i, j);
  }
  return out;
}

void HermitianMatrix::apply(std::span<const Complex> x, std::span<Complex> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    Complex s{};
    const Complex* row = data_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

Complex HermitianMatrix::quadratic_form(std::span<const Complex> x) const {
  std::vector<Complex> y(n_);
  apply(x, y);
  Complex s{};
  for (std::size_t i = 0; i < n_; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

EigenDecomposition jacobi_eigen(const HermitianMatrix& m) {
  require_hermitian(m, "jacobi_eigen");
  const std::size_t n = m.dimension();
  EigenDecomposition out;
  if (n == 0) return out;
  const std::size_t n2 = 2 * n;
  RealSymmetric s{n2, std::vector<double>(n2 * n2)};
  RealSymmetric v{n2, std::vector<double>(n2 * n2)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize so tiny Hermiticity defects do not leak into the embedding.
      const Complex h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      s(i, j) = h.real();
      s(i + n, j + n) = h.real();
      s(i, j + n) = -h.imag();
      s(i + n, j) = h.imag();
    }
  }
  for (std::size_t i = 0; i < n2; ++i) v(i, i) = 1.0;
  out.sweeps = jacobi_sweeps(s, v);

  std::vector<std::size_t> order(n2);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s(a, a) < s(b, b); });

  auto complex_vector = [&](std::size_t col) {
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = {v(i, col), v(i + n, col)};
    return x;
  };

  double scale = 0.0;
  for (std::size_t i = 0; i < n2; ++i) scale = std::max(scale, std::abs(s(i, i)));
  const double cluster_tol = 1e-10 * std::max(scale, 1.0);

  // Each eigenvalue occupies two adjacent slots; for each pair pick the slot whose
  // complex vector is independent of the vectors already accepted in its cluster.
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = 0.5 * (s(order[2 * k], order[2 * k]) + s(order[2 * k + 1], order[2 * k + 1]));
    std::vector<Complex> best;
    double best_norm = -1.0;
    for (std::size_t slot : {2 * k, 2 * k + 1}) {
      auto x = complex_vector(order[slot]);
      for (std::size_t prev = 0; prev < out.values.size(); ++prev) {
        if (std::abs(out.values[prev] - lambda) > cluster_tol) continue;
        Complex proj{};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(out.vectors[prev][i]) * x[i];
        for (std::size_t i = 0; i < n; ++i) x[i] -= proj * out.vectors[prev][i];
      }
      const double nx = dot_norm(x);
      if (nx > best_norm) {
        best_norm = nx;
        best = std::move(x);
      }
      if (best_norm > 0.5) break;
    }
    for (auto& c : best) c /= best_norm;
    out.values.push_back(lambda);
    out.vectors.push_back(std::move(best));
  }
  return out;
}

NormResult operator_norm(const HermitianMatrix& m, const NormOptions& options) {
  require_hermitian(m, "operator_norm");
  const std::size_t n = m.dimension();
  NormResult out;
  if (n == 0) {
    out.power_converged = true;
    out.certified = true;
    return out;
  }

  std::vector<Complex> x(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  std::vector<Complex> y(n);
  std::vector<Complex> z(n);
  double previous = -1.0;
  double rq = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    m.apply(x, y);
    m.apply(y, z);
    // Rayleigh quotient of M^2 at unit x: <x, M^2 x> = |M x|^2.
    rq = 0.0;
    for (const auto& c : y) rq += std::norm(c);
    out.iterations = it;
    const double nz = dot_norm(z);
    if (nz == 0.0) {
      rq = 0.0;
      out.power_converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / nz;
    if (std::abs(rq - previous) < options.tol) {
      out.power_converged = true;
      break;
    }
    previous = rq;
  }
  out.power_value = std::sqrt(std::max(rq, 0.0));
  out.value = out.power_value;
  out.top_vector = x;
  out.top_eigenvalue = m.quadratic_form(x).real();

  if (options.certify && n <= options.max_certified_dimension) {
    const auto eig = jacobi_eigen(m);
    const double lo = eig.values.front();
    const double hi = eig.values.back();
    const bool use_hi = std::abs(hi) >= std::abs(lo);
    out.jacobi_value = use_hi ? std::abs(hi) : std::abs(lo);
    out.top_eigenvalue = use_hi ? hi : lo;
    out.top_vector = use_hi ? eig.vectors.back() : eig.vectors.front();
    out.value = out.jacobi_value;
    out.certified = true;
  } else if (!out.power_converged) {
    throw std::runtime_error("operator_norm: power iteration did not converge and no certificate is available");
  }
  return out;
}

void to_json(nlohmann::json& j, const HermitianMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& c : m.data()) entries.push_back({c.real(), c.imag()});
  j = nlohmann::json{{"dimension", m.dimension()}, {"entries", std::move(entries)}};
}

HermitianMatrix hermitian_matrix_from_json(const nlohmann::json& j) {
  const auto n = j.at("dimension").get<std::size_t>();
  const auto& e = j.at("entries");
  if (e.size() != n * n) throw std::invalid_argument("matrix JSON: expected dimension^2 entries");
  HermitianMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& pair = e.at(i * n + k);
      m(i, k) = {pair.at(0).get<double>(), pair.at(1).get<double>()};
    }
  }
  return m;
}

namespace {

std::string part_csv(const HermitianMatrix& m, bool imaginary) {
  std::string out;
  char buf[40];
  const std::size_t n = m.dimension();
  for (std::size_t k = 0; k < n; ++k) {
    if (k) out += ',';
    out += std::to_string(k);
  }
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k) out += ',';
      const double v = imaginary ? m(i, k).imag() : m(i, k).real();
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string real_part_csv(const HermitianMatrix& m) { return part_csv(m, false); }
std::string imag_part_csv(const HermitianMatrix& m) { return part_csv(m, true); }

}  // namespace focklab
