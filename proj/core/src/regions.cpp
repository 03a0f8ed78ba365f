#include "focklab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "focklab/special.hpp"

namespace focklab {
namespace {

constexpr double kAngleTol = 1e-12;

// Closed arc [start, start + length] on the circle.
struct Arc {
  double start;
  double length;
};

double wrap(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

bool arcs_disjoint(Arc a, Arc b) {
  if (a.length >= kTwoPi - kAngleTol || b.length >= kTwoPi - kAngleTol) return false;
  // Offset of b's start measured counter-clockwise from a's start.
  double d = wrap(b.start - a.start);
  if (d > kTwoPi - kAngleTol) d = 0.0;
  return a.length <= d + kAngleTol && d + b.length <= kTwoPi + kAngleTol;
}

bool intervals_disjoint(double a0, double a1, double b0, double b1) {
  return a1 <= b0 || b1 <= a0;
}

bool disjoint_discs(const Disc& a, const Disc& b) {
  return std::abs(a.center - b.center) >= a.radius + b.radius;
}

bool disjoint_sectors(const AnnularSector& a, const AnnularSector& b) {
  if (intervals_disjoint(a.r_inner, a.r_outer, b.r_inner, b.r_outer)) return true;
  return arcs_disjoint({a.theta_start, a.span()}, {b.theta_start, b.span()});
}

bool disjoint_disc_sector(const Disc& d, const AnnularSector& s) {
  const double c = std::abs(d.center);
  const double r_lo = std::max(0.0, c - d.radius);
  const double r_hi = c + d.radius;
  if (intervals_disjoint(r_lo, r_hi, s.r_inner, s.r_outer)) return true;
  if (c <= d.radius) return false;  // disc surrounds the origin: every direction is hit
  const double half = std::asin(d.radius / c);
  const Arc hull{std::arg(d.center) - half, 2.0 * half};
  return arcs_disjoint(hull, {s.theta_start, s.span()});
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string("Region: non-finite ") + what);
}

}  // namespace

bool AnnularSector::full_turn() const { return std::abs(span() - kTwoPi) <= 1e-15 * kTwoPi; }

Region Region::disc(ComplexPoint center, double radius) {
  require_finite(center.real(), "center");
  require_finite(center.imag(), "center");
  require_finite(radius, "radius");
  if (!(radius > 0.0)) throw std::invalid_argument("Region: disc radius must be > 0");
  return Region{Disc{center, radius}};
}

Region Region::sector(double r_inner, double r_outer, double theta_start, double theta_end) {
  require_finite(r_inner, "r_inner");
  require_finite(r_outer, "r_outer");
  require_finite(theta_start, "theta_start");
  require_finite(theta_end, "theta_end");
  if (!(r_inner >= 0.0) || !(r_outer > r_inner)) {
    throw std::invalid_argument("Region: sector needs 0 <= r_inner < r_outer");
  }
  const double span = theta_end - theta_start;
  if (!(span > 0.0) || span > kTwoPi * (1.0 + 1e-15)) {
    throw std::invalid_argument("Region: sector needs 0 < theta_end - theta_start <= 2 pi");
  }
  return Region{AnnularSector{r_inner, r_outer, theta_start, theta_end}};
}

Region Region::annulus(double r_inner, double r_outer) { return sector(r_inner, r_outer, 0.0, kTwoPi); }

bool Region::is_origin_radial() const {
  if (const auto* d = std::get_if<Disc>(&shape)) return d->center == ComplexPoint{};
  return std::get<AnnularSector>(shape).full_turn();
}

bool Region::contains(ComplexPoint z) const {
  if (const auto* d = std::get_if<Disc>(&shape)) return std::abs(z - d->center) <= d->radius;
  const auto& s = std::get<AnnularSector>(shape);
  const double r = std::abs(z);
  if (r < s.r_inner || r > s.r_outer) return false;
  if (s.full_turn() || r == 0.0) return true;
  return wrap(std::arg(z) - s.theta_start) <= s.span();
}

double area(const Region& region) {
  if (const auto* d = std::get_if<Disc>(&region.shape)) return kPi * d->radius * d->radius;
  const auto& s = std::get<AnnularSector>(region.shape);
  return 0.5 * s.span() * (s.r_outer * s.r_outer - s.r_inner * s.r_inner);
}

bool disjoint(const Region& a, const Region& b) {
  const auto* da = std::get_if<Disc>(&a.shape);
  const auto* db = std::get_if<Disc>(&b.shape);
  if (da && db) return disjoint_discs(*da, *db);
  if (!da && !db) return disjoint_sectors(std::get<AnnularSector>(a.shape), std::get<AnnularSector>(b.shape));
  if (da) return disjoint_disc_sector(*da, std::get<AnnularSector>(b.shape));
  return disjoint_disc_sector(*db, std::get<AnnularSector>(a.shape));
}

bool disjoint(std::span<const Region> regions) {
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (!disjoint(regions[i], regions[j])) return false;
    }
  }
  return true;
}

void to_json(nlohmann::json& j, const Region& region) {
  if (const auto* d = std::get_if<Disc>(&region.shape)) {
    j = {{"disc", {{"center", {d->center.real(), d->center.imag()}}, {"radius", d->radius}}}};
    return;
  }
  const auto& s = std::get<AnnularSector>(region.shape);
  j = {{"sector", {{"r", {s.r_inner, s.r_outer}}, {"theta", {s.theta_start, s.theta_end}}}}};
}

Region region_from_json(const nlohmann::json& j) {
  if (j.contains("disc")) {
    const auto& d = j.at("disc");
    const auto& c = d.at("center");
    return Region::disc({c.at(0).get<double>(), c.at(1).get<double>()}, d.at("radius").get<double>());
  }
  if (j.contains("sector")) {
    const auto& s = j.at("sector");
    const auto& r = s.at("r");
    const auto& t = s.at("theta");
    return Region::sector(r.at(0).get<double>(), r.at(1).get<double>(), t.at(0).get<double>(),
                          t.at(1).get<double>());
  }
  throw std::invalid_argument("Region: expected a \"disc\" or \"sector\" object");
}

}  // namespace focklab
