#include "focklab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "focklab/regions.hpp"
#include "focklab/special.hpp"

namespace focklab {
namespace {

// Eigenvalues of the symmetric tridiagonal matrix (diag, off) by implicit QL with
// Wilkinson shifts. off[i] couples rows i and i+1; off has diag.size() - 1 entries.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off) {
  const std::size_t n = diag.size();
  off.push_back(0.0);
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("tridiagonal_eigenvalues: no convergence");
      double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      std::size_t i = m;
      bool deflated = false;
      while (i-- > l) {
        double f = s * off[i];
        const double b = c * off[i];
        r = std::hypot(f, g);
        off[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          off[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      diag[l] -= p;
      off[l] = g;
      off[m] = 0.0;
    }
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

// Newton step t L_K / (t L_K') at t, with t L_K' = K (L_K - L_{K-1}).
// Extended precision keeps the polished nodes within an ulp or two.
long double laguerre_newton_step(std::size_t k, long double t) {
  long double p0 = 1.0L;
  long double p1 = 1.0L - t;
  for (std::size_t n = 1; n < k; ++n) {
    const auto dn = static_cast<long double>(n);
    const long double p2 = ((2.0L * dn + 1.0L - t) * p1 - dn * p0) / (dn + 1.0L);
    p0 = p1;
    p1 = p2;
    if (std::abs(p1) > 1e100L) {
      p0 *= 1e-100L;
      p1 *= 1e-100L;
    }
  }
  // p0 = L_{K-1}, p1 = L_K (common scale)
  return t * p1 / (static_cast<long double>(k) * (p1 - p0));
}

// log of sum_{n<k} L_n(t)^2; the Gauss-Laguerre weight is its reciprocal.
double log_christoffel_sum(std::size_t k, long double t) {
  long double p0 = 1.0L;
  long double p1 = 1.0L - t;
  long double sum = 1.0L;
  long double log_scale = 0.0L;  // p values carry exp(log_scale), sum carries exp(2 log_scale)
  for (std::size_t n = 1; n < k; ++n) {
    sum += p1 * p1;
    const auto dn = static_cast<long double>(n);
    const long double p2 = ((2.0L * dn + 1.0L - t) * p1 - dn * p0) / (dn + 1.0L);
    p0 = p1;
    p1 = p2;
    if (std::abs(p1) > 1e100L) {
      p0 *= 1e-100L;
      p1 *= 1e-100L;
      sum *= 1e-200L;
      log_scale += 100.0L * std::log(10.0L);
    }
  }
  return static_cast<double>(std::log(sum) + 2.0L * log_scale);
}

}  // namespace

double AngularRule::node(std::size_t i) const {
  return kTwoPi * static_cast<double>(i) / static_cast<double>(count);
}

double AngularRule::weight() const { return kTwoPi / static_cast<double>(count); }

RadialRule gauss_laguerre(std::size_t count) {
  if (count < 1 || count > kMaxLaguerreNodes) {
    throw std::invalid_argument("gauss_laguerre: node count must be in [1, 256], got " +
                                std::to_string(count));
  }
  const std::size_t k = count;
  std::vector<double> diag(k);
  std::vector<double> off(k > 0 ? k - 1 : 0);
  for (std::size_t i = 0; i < k; ++i) diag[i] = 2.0 * static_cast<double>(i) + 1.0;
  for (std::size_t i = 1; i < k; ++i) off[i - 1] = static_cast<double>(i);
  std::vector<double> nodes = tridiagonal_eigenvalues(diag, off);

  RadialRule rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  rule.log_weights.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    long double t = nodes[j];
    for (int it = 0; it < 20; ++it) {
      const long double step = laguerre_newton_step(k, t);
      t -= step;
      if (std::abs(step) <= std::numeric_limits<long double>::epsilon() * t) break;
    }
    const double log_w = -log_christoffel_sum(k, t);
    rule.nodes[j] = static_cast<double>(t);
    rule.log_weights[j] = log_w;
    rule.weights[j] = std::exp(log_w);
  }
  for (std::size_t j = 1; j < k; ++j) {
    if (!(rule.nodes[j] > rule.nodes[j - 1])) {
      throw std::runtime_error("gauss_laguerre: nodes not strictly increasing");
    }
  }
  return rule;
}

LegendreRule gauss_legendre(std::size_t count) {
  if (count < 1 || count > kMaxLegendreNodes) {
    throw std::invalid_argument("gauss_legendre: node count must be in [1, 1024], got " +
                                std::to_string(count));
  }
  const std::size_t n = count;
  LegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      dp = dn * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon()) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double dk = static_cast<double>(k);
      const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
      p0 = p1;
      p1 = p2;
    }
    dp = dn * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

AngularRule periodic_trapezoid(std::size_t count) {
  if (count == 0) throw std::invalid_argument("periodic_trapezoid: count must be >= 1");
  return AngularRule{count};
}

ProductRule product_rule(std::size_t radial_nodes, std::size_t angular_nodes) {
  return ProductRule{gauss_laguerre(radial_nodes), periodic_trapezoid(angular_nodes)};
}

Rules::Rules(const Config& config)
    : config_(config),
      plane_(product_rule(config.radial_nodes, config.angular_nodes)),
      region_radial_(gauss_legendre(config.region_order)),
      region_angular_(gauss_legendre(config.angular_nodes)) {}

Complex integrate_plane(const PlaneFunction& g, const ProductRule& rule) {
  const std::size_t m = rule.angular.count;
  Complex total{};
  for (std::size_t j = 0; j < rule.radial.size(); ++j) {
    const double r = std::sqrt(rule.radial.nodes[j] / kPi);
    Complex ring{};
    for (std::size_t i = 0; i < m; ++i) {
      ring += g(std::polar(r, rule.angular.node(i)));
    }
    total += rule.radial.weights[j] * ring / static_cast<double>(m);
  }
  return total;
}

void for_each_region_node(const Region& region, const LegendreRule& radial, const LegendreRule& arc,
                          std::size_t circle_nodes,
                          const std::function<void(ComplexPoint, double)>& visit) {
  const AngularRule circle{circle_nodes};
  if (const auto* d = std::get_if<Disc>(&region.shape)) {
    const double half = 0.5 * d->radius;
    for (std::size_t j = 0; j < radial.size(); ++j) {
      const double rho = half * (radial.nodes[j] + 1.0);
      const double wr = half * radial.weights[j] * rho * circle.weight();
      for (std::size_t i = 0; i < circle_nodes; ++i) {
        const ComplexPoint z = d->center + std::polar(rho, circle.node(i));
        visit(z, wr * std::exp(-kPi * std::norm(z)));
      }
    }
    return;
  }
  const auto& s = std::get<AnnularSector>(region.shape);
  const double r_half = 0.5 * (s.r_outer - s.r_inner);
  const double r_mid = 0.5 * (s.r_outer + s.r_inner);
  const bool full = s.full_turn();
  const double t_half = 0.5 * s.span();
  const double t_mid = 0.5 * (s.theta_start + s.theta_end);
  for (std::size_t j = 0; j < radial.size(); ++j) {
    const double r = r_mid + r_half * radial.nodes[j];
    const double wr = r_half * radial.weights[j] * r * std::exp(-kPi * r * r);
    if (full) {
      for (std::size_t i = 0; i < circle_nodes; ++i) {
        visit(std::polar(r, s.theta_start + circle.node(i)), wr * circle.weight());
      }
    } else {
      for (std::size_t i = 0; i < arc.size(); ++i) {
        visit(std::polar(r, t_mid + t_half * arc.nodes[i]), wr * t_half * arc.weights[i]);
      }
    }
  }
}

Complex integrate_region(const PlaneFunction& g, const Region& region, const LegendreRule& radial,
                         const LegendreRule& arc, std::size_t circle_nodes) {
  CompensatedSum re;
  CompensatedSum im;
  for_each_region_node(region, radial, arc, circle_nodes, [&](ComplexPoint z, double w) {
    const Complex v = w * g(z);
    re.add(v.real());
    im.add(v.imag());
  });
  return {re.value(), im.value()};
}

Complex integrate_region(const PlaneFunction& g, const Region& region, const RegionOrders& orders) {
  const LegendreRule radial = gauss_legendre(orders.radial);
  const LegendreRule arc = gauss_legendre(orders.angular);
  return integrate_region(g, region, radial, arc, orders.angular);
}

}  // namespace focklab
