#include "focklab/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "focklab/special.hpp"

namespace focklab {
namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kImagResidueTol = 1e-10;
constexpr double kPanelWidth = 0.5;

void fill_lower(HermitianMatrix& m) {
  const std::size_t n = m.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = {m(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) m(j, i) = std::conj(m(i, j));
  }
}

// Closed-form contribution of coeff * chi_sector, upper triangle only.
void add_origin_sector(HermitianMatrix& m, double coeff, const AnnularSector& s) {
  const std::size_t n = m.dimension();
  const double t1 = kPi * s.r_inner * s.r_inner;
  const double t2 = kPi * s.r_outer * s.r_outer;
  const bool full = s.full_turn();
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = row; col < n; ++col) {
      const int k = static_cast<int>(col) - static_cast<int>(row);
      if (full && k != 0) continue;
      const Complex a = full ? Complex(kTwoPi, 0.0) : angular_factor(k, s.theta_start, s.theta_end);
      if (a == Complex{}) continue;
      const double shape = 0.5 * static_cast<double>(row + col) + 1.0;
      const double log_prefactor =
          log_gamma_half_integer(shape) - 0.5 * (log_factorial(row) + log_factorial(col));
      const double radial = std::exp(log_prefactor) * regularized_gamma_increment(shape, t1, t2) / kTwoPi;
      m(row, col) += coeff * radial * a;
    }
  }
}

// Local polar quadrature of coeff * chi_disc, upper triangle only.
void add_disc_quadrature(HermitianMatrix& m, double coeff, const Region& disc, const Rules& rules) {
  const std::size_t n = m.dimension();
  std::vector<Complex> e(n);
  for_each_region_node(disc, rules.region_radial(), rules.region_angular(), rules.config().angular_nodes,
                       [&](ComplexPoint z, double w) {
                         basis_values(z, e);
                         const double cw = coeff * w;
                         for (std::size_t row = 0; row < n; ++row) {
                           const Complex er = cw * std::conj(e[row]);
                           Complex* out = &m(row, 0);
                           for (std::size_t col = row; col < n; ++col) out[col] += e[col] * er;
                         }
                       });
}

// Gauss-Legendre rule of order max(base, N + 16) for radial polynomials of degree 2N + 1.
LegendreRule radial_rule_for(std::size_t truncation, const Rules& rules) {
  const std::size_t order = std::max(rules.config().region_order, truncation + 16);
  return order == rules.config().region_order ? rules.region_radial() : gauss_legendre(order);
}

// Real basis moduli b_n(r) = sqrt(pi^n / n!) r^n.
void basis_moduli(double r, std::vector<double>& b) {
  b[0] = 1.0;
  for (std::size_t k = 1; k < b.size(); ++k) b[k] = b[k - 1] * r * std::sqrt(kPi / static_cast<double>(k));
}

}  // namespace

void check_resolution(std::size_t truncation, const Rules& rules) {
  if (truncation == 0) throw std::invalid_argument("truncation must be >= 1");
  const std::size_t degree = 2 * (truncation - 1);
  if (degree > rules.plane().radial.exact_degree()) {
    throw std::invalid_argument("truncation " + std::to_string(truncation) + " needs radial degree " +
                                std::to_string(degree) + " but the " +
                                std::to_string(rules.plane().radial.size()) +
                                "-node Laguerre rule is exact only to degree " +
                                std::to_string(rules.plane().radial.exact_degree()));
  }
}

Complex angular_factor(int k, double theta_start, double theta_end) {
  const double span = theta_end - theta_start;
  if (k == 0) return {span, 0.0};
  if (std::abs(span - kTwoPi) <= 1e-15 * kTwoPi) return {};
  const double dk = static_cast<double>(k);
  // e^{ik mid} * 2 sin(k span / 2) / k
  return std::polar(2.0 * std::sin(0.5 * dk * span) / dk, 0.5 * dk * (theta_start + theta_end));
}

HermitianMatrix assemble(const SimpleSymbol& symbol, std::size_t truncation, const Rules& rules) {
  check_resolution(truncation, rules);
  HermitianMatrix m(truncation);
  for (const auto& piece : symbol.pieces()) {
    if (piece.coeff == 0.0) continue;
    if (const auto* d = std::get_if<Disc>(&piece.region.shape)) {
      if (d->center == ComplexPoint{}) {
        add_origin_sector(m, piece.coeff, AnnularSector{0.0, d->radius, 0.0, kTwoPi});
      } else {
        add_disc_quadrature(m, piece.coeff, piece.region, rules);
      }
    } else {
      add_origin_sector(m, piece.coeff, std::get<AnnularSector>(piece.region.shape));
    }
  }
  fill_lower(m);
  return m;
}

HermitianMatrix assemble(const SampledSymbol& symbol, std::size_t truncation, const Rules& rules) {
  check_resolution(truncation, rules);
  const std::size_t n = truncation;
  const std::size_t ma = symbol.angular_count();
  const double h = kTwoPi / static_cast<double>(ma);
  HermitianMatrix m(n);

  std::vector<double> edges{0.0};
  for (double t : symbol.t_nodes()) {
    const double r = std::sqrt(t / kPi);
    if (r > edges.back()) edges.push_back(r);
  }
  const LegendreRule rule = radial_rule_for(truncation, rules);
  std::vector<double> ring(ma);
  std::vector<double> b(n);
  std::vector<Complex> fourier(n);
  for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
    const double half = 0.5 * (edges[c + 1] - edges[c]);
    const double mid = 0.5 * (edges[c + 1] + edges[c]);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double r = mid + half * rule.nodes[q];
      const double w = half * rule.weights[q] * r * std::exp(-kPi * r * r);
      symbol.ring_values(r, ring);
      // Fourier integrals of the periodic piecewise-linear interpolant:
      // int u(theta) e^{ik theta} = h sinc^2(kh/2) sum_i u_i e^{ik theta_i}.
      for (std::size_t k = 0; k < n; ++k) {
        Complex s{};
        for (std::size_t i = 0; i < ma; ++i) {
          s += ring[i] * std::polar(1.0, static_cast<double>(k) * h * static_cast<double>(i));
        }
        const double x = 0.5 * static_cast<double>(k) * h;
        const double sinc = k == 0 ? 1.0 : std::sin(x) / x;
        fourier[k] = h * sinc * sinc * s;
      }
      basis_moduli(r, b);
      for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = row; col < n; ++col) {
          m(row, col) += w * b[row] * b[col] * fourier[col - row];
        }
      }
    }
  }
  fill_lower(m);
  return m;
}

HermitianMatrix assemble(const Symbol& symbol, std::size_t truncation, const Rules& rules) {
  if (const auto* radial = std::get_if<RadialSymbol>(&symbol)) return radial_assemble(*radial, truncation, rules);
  if (const auto* simple = std::get_if<SimpleSymbol>(&symbol)) return assemble(*simple, truncation, rules);
  return assemble(std::get<SampledSymbol>(symbol), truncation, rules);
}

std::vector<double> radial_eigenvalues(const RadialSymbol& symbol, std::size_t truncation, const Rules& rules) {
  check_resolution(truncation, rules);
  const std::size_t n = truncation;
  std::vector<double> gamma(n, 0.0);
  const auto& lag = rules.plane().radial;

  // int_{t0}^inf phi e^{-t} t^k / k! dt by the Laguerre rule shifted to t0.
  auto add_laguerre_tail = [&](double t0) {
    for (std::size_t j = 0; j < lag.size(); ++j) {
      const double t = t0 + lag.nodes[j];
      const double phi = symbol(std::sqrt(t / kPi));
      if (phi == 0.0) continue;
      const double log_t = std::log(t);
      for (std::size_t k = 0; k < n; ++k) {
        const double log_term = lag.log_weights[j] - t0 + static_cast<double>(k) * log_t - log_factorial(k);
        gamma[k] += phi * std::exp(log_term);
      }
    }
  };

  const auto breaks = symbol.breakpoints();
  if (!symbol.support_radius() && breaks.empty()) {
    add_laguerre_tail(0.0);
    return gamma;
  }

  const double end = symbol.support_radius() ? *symbol.support_radius() : breaks.back();
  std::vector<double> pts{0.0, end};
  for (double x : breaks) {
    if (x > 0.0 && x < end) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const LegendreRule rule = radial_rule_for(truncation, rules);
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((pts[p + 1] - pts[p]) / kPanelWidth)));
    const double width = (pts[p + 1] - pts[p]) / static_cast<double>(pieces);
    for (std::size_t piece = 0; piece < pieces; ++piece) {
      const double a = pts[p] + width * static_cast<double>(piece);
      const double half = 0.5 * width;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double r = a + half * (rule.nodes[q] + 1.0);
        const double phi = symbol(r);
        if (phi == 0.0) continue;
        const double t = kPi * r * r;
        // dt = 2 pi r dr
        const double w = half * rule.weights[q] * kTwoPi * r;
        const double log_t = std::log(t);
        for (std::size_t k = 0; k < n; ++k) {
          gamma[k] += w * phi * std::exp(-t + static_cast<double>(k) * log_t - log_factorial(k));
        }
      }
    }
  }
  if (!symbol.support_radius()) add_laguerre_tail(kPi * end * end);
  return gamma;
}

HermitianMatrix radial_assemble(const RadialSymbol& symbol, std::size_t truncation, const Rules& rules) {
  const auto gamma = radial_eigenvalues(symbol, truncation, rules);
  return HermitianMatrix::diagonal(gamma);
}

double rayleigh(const SimpleSymbol& symbol, const FockFunction& f, const Rules& rules) {
  if (!f.is_unit(kUnitTol)) throw std::invalid_argument("rayleigh: f must have unit norm");
  Complex total{};
  for (const auto& piece : symbol.pieces()) {
    total += piece.coeff * integrate_region([&](ComplexPoint z) { return Complex(std::norm(f(z)), 0.0); },
                                            piece.region, rules.region_radial(), rules.region_angular(),
                                            rules.config().angular_nodes);
  }
  if (std::abs(total.imag()) > kImagResidueTol) {
    throw std::runtime_error("rayleigh: imaginary residue " + std::to_string(total.imag()));
  }
  return total.real();
}

double rayleigh(const RadialSymbol& symbol, const FockFunction& f, const Rules& rules) {
  if (!f.is_unit(kUnitTol)) throw std::invalid_argument("rayleigh: f must have unit norm");
  const auto gamma = radial_eigenvalues(symbol, f.truncation(), rules);
  CompensatedSum s;
  for (std::size_t k = 0; k < gamma.size(); ++k) s.add(gamma[k] * std::norm(f.coeffs()[k]));
  return s.value();
}

}  // namespace focklab
