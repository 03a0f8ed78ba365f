#pragma once

#include <span>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "focklab/fock_space.hpp"

namespace focklab {

struct Disc {
  ComplexPoint center;
  double radius = 0.0;
};

/// {r e^{i theta} : r_inner <= r <= r_outer, theta_start <= theta <= theta_end}.
struct AnnularSector {
  double r_inner = 0.0;
  double r_outer = 0.0;
  double theta_start = 0.0;
  double theta_end = 0.0;

  double span() const { return theta_end - theta_start; }
  bool full_turn() const;
};

/// Finite-measure plane region: a disc or an origin-centred annular sector.
/// Construct through the validating factories.
struct Region {
  std::variant<Disc, AnnularSector> shape;

  /// Throws std::invalid_argument unless radius > 0 and all parameters are finite.
  static Region disc(ComplexPoint center, double radius);
  /// Throws std::invalid_argument unless 0 <= r_inner < r_outer and 0 < span <= 2 pi.
  static Region sector(double r_inner, double r_outer, double theta_start, double theta_end);
  static Region annulus(double r_inner, double r_outer);

  bool is_disc() const { return std::holds_alternative<Disc>(shape); }
  /// True for discs centred at the origin and for full-turn sectors.
  bool is_origin_radial() const;
  bool contains(ComplexPoint z) const;
};

/// Lebesgue measure of the region.
double area(const Region& region);

/// Whether two regions meet in a set of positive measure is ruled out.
/// Disc-disc and sector-sector tests are exact; disc-sector compares the disc's
/// radial and angular hull against the sector and may reject disjoint pairs.
bool disjoint(const Region& a, const Region& b);
bool disjoint(std::span<const Region> regions);

void to_json(nlohmann::json& j, const Region& region);
Region region_from_json(const nlohmann::json& j);

}  // namespace focklab
