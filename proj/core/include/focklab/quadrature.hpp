#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "focklab/fock_space.hpp"

namespace focklab {

struct Region;

/// Gauss-Laguerre rule for int_0^inf g(t) e^{-t} dt.
///
/// Nodes are the eigenvalues of the Laguerre Jacobi matrix, polished by Newton
/// steps on the three-term recurrence in extended precision. Weights come from
/// the Christoffel sum w_j = 1 / sum_{n<K} L_n(t_j)^2 kept in log space, so the trailing
/// weights keep full relative precision until they leave double range.
struct RadialRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;

  std::size_t size() const { return nodes.size(); }
  /// Highest polynomial degree in t integrated exactly: 2K - 1.
  std::size_t exact_degree() const { return 2 * nodes.size() - 1; }
};

/// Periodic trapezoid rule on [0, 2 pi): theta_i = 2 pi i / M, weights 2 pi / M.
struct AngularRule {
  std::size_t count = 0;

  double node(std::size_t i) const;
  double weight() const;
};

/// Gauss-Legendre rule on [-1, 1].
struct LegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Tensor rule for int_C g dlambda with dlambda = e^{-pi|z|^2} dA.
/// In t = pi r^2 the measure becomes (1/2pi) e^{-t} dt dtheta.
struct ProductRule {
  RadialRule radial;
  AngularRule angular;
};

inline constexpr std::size_t kMaxLaguerreNodes = 256;
inline constexpr std::size_t kMaxLegendreNodes = 1024;
inline constexpr std::size_t kDefaultRadialNodes = 80;
inline constexpr std::size_t kDefaultAngularNodes = 128;
inline constexpr std::size_t kDefaultRegionOrder = 64;

/// Throws std::invalid_argument unless 1 <= count <= 256.
RadialRule gauss_laguerre(std::size_t count);
/// Throws std::invalid_argument unless 1 <= count <= 1024.
LegendreRule gauss_legendre(std::size_t count);
/// Throws std::invalid_argument when count == 0.
AngularRule periodic_trapezoid(std::size_t count);
ProductRule product_rule(std::size_t radial_nodes, std::size_t angular_nodes);

/// Quadrature orders used by region integration.
struct RegionOrders {
  /// Gauss-Legendre nodes in the radial variable of a disc or sector.
  std::size_t radial = kDefaultRegionOrder;
  /// Trapezoid nodes on full circles, Gauss-Legendre nodes on partial arcs.
  std::size_t angular = kDefaultAngularNodes;
};

/// Every rule an experiment needs, built once and shared read-only.
class Rules {
 public:
  struct Config {
    std::size_t radial_nodes = kDefaultRadialNodes;
    std::size_t angular_nodes = kDefaultAngularNodes;
    std::size_t region_order = kDefaultRegionOrder;
  };

  Rules() : Rules(Config{}) {}
  explicit Rules(const Config& config);

  const Config& config() const { return config_; }
  const ProductRule& plane() const { return plane_; }
  const LegendreRule& region_radial() const { return region_radial_; }
  const LegendreRule& region_angular() const { return region_angular_; }
  RegionOrders region_orders() const { return {config_.region_order, config_.angular_nodes}; }

 private:
  Config config_;
  ProductRule plane_;
  LegendreRule region_radial_;
  LegendreRule region_angular_;
};

using PlaneFunction = std::function<Complex(ComplexPoint)>;

/// int_C g dlambda = (1/2pi) sum_j sum_i w_j (2pi/M) g(r_j e^{i theta_i}), r_j = sqrt(t_j / pi).
/// Radial index outer, angular index inner, both increasing.
Complex integrate_plane(const PlaneFunction& g, const ProductRule& rule);

/// int_region g(z) e^{-pi|z|^2} dA(z) in region-adapted polar coordinates.
///
/// Disc(c, R): z = c + rho e^{i theta}, Gauss-Legendre in rho on [0, R], trapezoid in theta.
/// AnnularSector: Gauss-Legendre in r on [r1, r2]; trapezoid in theta on a full turn,
/// Gauss-Legendre on a partial arc.
Complex integrate_region(const PlaneFunction& g, const Region& region, const RegionOrders& orders = {});

/// Same, with prebuilt rules (avoids rebuilding Legendre nodes per call).
Complex integrate_region(const PlaneFunction& g, const Region& region, const LegendreRule& radial,
                         const LegendreRule& arc, std::size_t circle_nodes);

/// Calls visit(z, w) for every node of the region rule, where w already contains the
/// Jacobian and the e^{-pi|z|^2} weight, in the fixed summation order.
void for_each_region_node(const Region& region, const LegendreRule& radial, const LegendreRule& arc,
                          std::size_t circle_nodes,
                          const std::function<void(ComplexPoint, double)>& visit);

}  // namespace focklab
