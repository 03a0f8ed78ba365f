#include "focklab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "focklab/special.hpp"
#include "focklab/toeplitz.hpp"

namespace focklab {
namespace {

constexpr double kUnitTol = 1e-12;
// Two analytic evaluations of 1 - e^{-x} agree only to rounding.
constexpr double kRoundingSlack = 0x1p-50;

void require_unit(const FockFunction& f, const char* who) {
  if (!f.is_unit(kUnitTol)) {
    throw std::invalid_argument(std::string(who) + ": f must have unit norm (|f|^2 = " +
                                std::to_string(f.norm_squared()) + ")");
  }
}

double region_mass(const FockFunction& f, const Region& region, const Rules& rules) {
  const Complex v = integrate_region([&](ComplexPoint z) { return Complex(std::norm(f(z)), 0.0); }, region,
                                     rules.region_radial(), rules.region_angular(), rules.config().angular_nodes);
  return v.real();
}

std::string stage_id(std::size_t cells) { return "approximation/m=" + std::to_string(cells); }

}  // namespace

double galbis_bound(double l1, double linf) {
  if (!std::isfinite(l1) || !std::isfinite(linf) || l1 < 0.0 || linf < 0.0) {
    throw std::invalid_argument("galbis_bound: l1 and linf must be finite and >= 0");
  }
  if (linf == 0.0) return 0.0;
  return -linf * std::expm1(-l1 / linf);
}

double concentration_bound(double measure) { return galbis_bound(measure, 1.0); }

VerificationReport make_report(std::string id, double lhs, double rhs, double slack,
                               nlohmann::ordered_json metadata) {
  VerificationReport r;
  r.id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.slack = slack;
  r.holds = r.margin >= -slack;
  r.metadata = std::move(metadata);
  return r;
}

nlohmann::ordered_json rules_metadata(const Rules& rules) {
  nlohmann::ordered_json m;
  m["radial_nodes"] = rules.config().radial_nodes;
  m["angular_nodes"] = rules.config().angular_nodes;
  m["region_order"] = rules.config().region_order;
  return m;
}

WeightedPartition::WeightedPartition(std::vector<WeightedRegion> pieces) : pieces_(std::move(pieces)) {
  for (const auto& p : pieces_) {
    if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0)) {
      throw std::invalid_argument("WeightedPartition: epsilon must lie in [0, 1]");
    }
  }
  const auto rs = regions();
  if (!disjoint(rs)) throw std::invalid_argument("WeightedPartition: regions are not disjoint");
}

std::vector<Region> WeightedPartition::regions() const {
  std::vector<Region> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(p.region);
  return out;
}

VerificationReport verify_main_theorem(const Symbol& symbol, std::size_t truncation, const Rules& rules,
                                       const NormOptions& options) {
  const auto matrix = assemble(symbol, truncation, rules);
  const auto norm = operator_norm(matrix, options);
  const double l1 = l1_norm(symbol);
  const double linf = linf_norm(symbol);
  auto meta = rules_metadata(rules);
  meta["truncation"] = truncation;
  meta["l1"] = l1;
  meta["linf"] = linf;
  meta["certified"] = norm.certified;
  meta["power_iterations"] = norm.iterations;
  return make_report("main-theorem", norm.value, galbis_bound(l1, linf), kNormSlack, std::move(meta));
}

VerificationReport verify_nt(const FockFunction& f, const Region& region, const Rules& rules) {
  require_unit(f, "verify_nt");
  const double a = area(region);
  auto meta = rules_metadata(rules);
  meta["truncation"] = f.truncation();
  meta["area"] = a;
  return make_report("concentration", region_mass(f, region, rules), concentration_bound(a), kRegionSlack,
                     std::move(meta));
}

VerificationReport verify_nt_union(const FockFunction& f, std::span<const Region> regions, const Rules& rules) {
  require_unit(f, "verify_nt_union");
  if (!disjoint(regions)) throw std::invalid_argument("verify_nt_union: regions are not disjoint");
  CompensatedSum lhs;
  CompensatedSum measure;
  for (const auto& r : regions) {
    lhs.add(region_mass(f, r, rules));
    measure.add(area(r));
  }
  auto meta = rules_metadata(rules);
  meta["truncation"] = f.truncation();
  meta["area"] = measure.value();
  meta["pieces"] = regions.size();
  return make_report("concentration-union", lhs.value(), concentration_bound(measure.value()), kRegionSlack,
                     std::move(meta));
}

VerificationReport verify_lemma(const FockFunction& f, const WeightedPartition& partition, const Rules& rules) {
  require_unit(f, "verify_lemma");
  CompensatedSum lhs;
  CompensatedSum measure;
  for (const auto& p : partition.pieces()) {
    if (p.epsilon == 0.0) continue;
    lhs.add(p.epsilon * region_mass(f, p.region, rules));
    measure.add(p.epsilon * area(p.region));
  }
  auto meta = rules_metadata(rules);
  meta["truncation"] = f.truncation();
  meta["weighted_area"] = measure.value();
  meta["pieces"] = partition.pieces().size();
  return make_report("lemma", lhs.value(), concentration_bound(measure.value()), kRegionSlack, std::move(meta));
}

SharpnessResult sharpness_experiment(ComplexPoint w0, double radius, std::size_t truncation, const Rules& rules) {
  const Region disc = Region::disc(w0, radius);
  const double a = area(disc);
  const double closed_form = -std::expm1(-a);
  const SimpleSymbol symbol({SymbolPiece{disc, 1.0}});

  auto base = rules_metadata(rules);
  base["truncation"] = truncation;
  base["w0"] = {w0.real(), w0.imag()};
  base["radius"] = radius;
  base["area"] = a;

  SharpnessResult out;
  const auto cs = coherent(w0, truncation);
  auto meta_a = base;
  meta_a["coherent_tail"] = cs.tail_mass;
  meta_a["under_resolved"] = cs.under_resolved;
  const double attained = rayleigh(symbol, cs.function, rules);
  out.reports.push_back(make_report("sharpness/rayleigh", attained, closed_form, kRegionSlack, std::move(meta_a)));

  // Incomplete-gamma evaluation of the same quantity as an independent analytic check.
  out.reports.push_back(
      make_report("sharpness/bound", galbis_bound(a, 1.0), regularized_lower_gamma(1.0, a), kRoundingSlack, base));

  const auto norm = operator_norm(assemble(SimpleSymbol(symbol), truncation, rules));
  Complex ov{};
  for (std::size_t k = 0; k < norm.top_vector.size(); ++k) {
    ov += std::conj(norm.top_vector[k]) * cs.function.coeff(k);
  }
  out.overlap = std::abs(ov);
  auto meta_c = base;
  meta_c["certified"] = norm.certified;
  meta_c["gap_to_bound"] = galbis_bound(a, 1.0) - norm.value;
  meta_c["overlap"] = out.overlap;
  out.reports.push_back(make_report("sharpness/norm", norm.value, galbis_bound(a, 1.0), kNormSlack, std::move(meta_c)));
  return out;
}

ApproximationResult approximation_experiment(const Symbol& symbol, std::span<const std::size_t> grids,
                                             std::size_t truncation, const Rules& rules) {
  ApproximationResult out;
  const double linf = linf_norm(symbol);
  out.scale = linf > 0.0 ? 1.0 / linf : 1.0;
  const Symbol phi = scaled(symbol, out.scale);
  out.l1 = l1_norm(phi);
  out.norm = operator_norm(assemble(phi, truncation, rules)).value;

  for (std::size_t m : grids) {
    ApproximationStage stage;
    stage.cells = m;
    if (const auto* simple = std::get_if<SimpleSymbol>(&phi)) {
      stage.l1_discrete = l1_norm(*simple);
    } else {
      DiscretizeOptions opt;
      opt.radial_cells = m;
      opt.angular_cells = m;
      const Discretization d = std::holds_alternative<RadialSymbol>(phi)
                                   ? discretize(std::get<RadialSymbol>(phi), opt)
                                   : discretize(std::get<SampledSymbol>(phi), opt);
      stage.l1_discrete = l1_norm(d.symbol);
      stage.l1_error = d.l1_error;
    }
    stage.bound = concentration_bound(stage.l1_discrete) + stage.l1_error;
    auto meta = rules_metadata(rules);
    meta["truncation"] = truncation;
    meta["cells"] = m;
    meta["scale"] = out.scale;
    meta["l1_discrete"] = stage.l1_discrete;
    meta["l1_error"] = stage.l1_error;
    meta["limit_bound"] = concentration_bound(out.l1);
    out.reports.push_back(make_report(stage_id(m), out.norm, stage.bound, kNormSlack, std::move(meta)));
    out.stages.push_back(stage);
  }

  double worst_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < out.stages.size(); ++k) {
    worst_increase = std::max(worst_increase, out.stages[k].l1_error - out.stages[k - 1].l1_error);
  }
  if (out.stages.size() > 1) {
    auto meta = rules_metadata(rules);
    meta["truncation"] = truncation;
    out.reports.push_back(make_report("approximation/l1-decay", worst_increase, 0.0, kRegionSlack, std::move(meta)));
  }
  return out;
}

}  // namespace focklab
