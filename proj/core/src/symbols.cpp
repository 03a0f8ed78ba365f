#include "focklab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "focklab/quadrature.hpp"
#include "focklab/special.hpp"

namespace focklab {
namespace {

constexpr std::size_t kPanelOrder = 24;
constexpr double kPanelWidth = 0.25;
constexpr std::size_t kCellOrder = 8;

const LegendreRule& panel_rule() {
  static const LegendreRule rule = gauss_legendre(kPanelOrder);
  return rule;
}

const LegendreRule& cell_rule() {
  static const LegendreRule rule = gauss_legendre(kCellOrder);
  return rule;
}

// Sorted, deduplicated split points of [a, b] including the endpoints.
std::vector<double> split_points(double a, double b, std::span<const double> breaks) {
  std::vector<double> pts{a, b};
  for (double x : breaks) {
    if (x > a && x < b) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// int_a^b g(x) dx with Gauss-Legendre `rule` on a single panel.
template <typename F>
double panel(const LegendreRule& rule, double a, double b, F&& g) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * g(mid + half * rule.nodes[i]);
  return half * s;
}

// Composite rule on [a, b]: split at `breaks`, then into panels of width <= max_width.
template <typename F>
double composite(const LegendreRule& rule, double a, double b, std::span<const double> breaks,
                 double max_width, F&& g) {
  if (!(b > a)) return 0.0;
  const auto pts = split_points(a, b, breaks);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double lo = pts[k];
    const double hi = pts[k + 1];
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / max_width)));
    const double h = (hi - lo) / static_cast<double>(pieces);
    for (std::size_t p = 0; p < pieces; ++p) {
      total += panel(rule, lo + h * static_cast<double>(p), lo + h * static_cast<double>(p + 1), g);
    }
  }
  return total;
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

void check_cells(const DiscretizeOptions& o) {
  if (o.radial_cells == 0 || o.angular_cells == 0) {
    throw std::invalid_argument("discretize: cell counts must be >= 1");
  }
  if (!(o.tail_tolerance >= 0.0)) throw std::invalid_argument("discretize: tail_tolerance must be >= 0");
}

// Angular cell boundaries 2 pi i / n with the last one pinned to exactly 2 pi.
double cell_angle(std::size_t i, std::size_t n) {
  return i == n ? kTwoPi : kTwoPi * static_cast<double>(i) / static_cast<double>(n);
}

void append_ring(std::vector<SymbolPiece>& pieces, double r_lo, double r_hi, std::size_t angular_cells,
                 const std::function<double(double)>& coeff_at_angle) {
  for (std::size_t i = 0; i < angular_cells; ++i) {
    const double t0 = cell_angle(i, angular_cells);
    const double t1 = cell_angle(i + 1, angular_cells);
    const double c = coeff_at_angle(0.5 * (t0 + t1));
    if (c == 0.0) continue;
    pieces.push_back({Region::sector(r_lo, r_hi, t0, t1), c});
  }
}

}  // namespace

// ---------------------------------------------------------------- SimpleSymbol

SimpleSymbol::SimpleSymbol(std::vector<SymbolPiece> pieces) : pieces_(std::move(pieces)) {
  for (const auto& p : pieces_) {
    if (!std::isfinite(p.coeff)) throw std::invalid_argument("SimpleSymbol: non-finite coefficient");
  }
  const auto rs = regions();
  if (!disjoint(rs)) throw std::invalid_argument("SimpleSymbol: regions are not pairwise disjoint");
}

std::vector<Region> SimpleSymbol::regions() const {
  std::vector<Region> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(p.region);
  return out;
}

SimpleSymbol SimpleSymbol::scaled(double factor) const {
  SimpleSymbol out = *this;
  for (auto& p : out.pieces_) p.coeff *= factor;
  return out;
}

double SimpleSymbol::operator()(ComplexPoint z) const {
  for (const auto& p : pieces_) {
    if (p.region.contains(z)) return p.coeff;
  }
  return 0.0;
}

// ---------------------------------------------------------------- RadialSymbol

RadialSymbol::RadialSymbol(nlohmann::json description, Profile profile, double linf,
                           std::optional<double> support_radius, std::optional<GaussianDecay> decay,
                           std::vector<double> breakpoints)
    : description_(std::move(description)),
      profile_(std::move(profile)),
      linf_(linf),
      support_(support_radius),
      decay_(decay),
      breakpoints_(std::move(breakpoints)) {
  if (!profile_) throw std::invalid_argument("RadialSymbol: empty profile");
  if (!(linf_ >= 0.0) || !std::isfinite(linf_)) throw std::invalid_argument("RadialSymbol: linf must be >= 0");
  if (!support_ && !decay_) {
    throw std::invalid_argument("RadialSymbol: an integrability witness (support radius or decay) is required");
  }
  if (support_ && !(*support_ >= 0.0 && std::isfinite(*support_))) {
    throw std::invalid_argument("RadialSymbol: support radius must be finite and >= 0");
  }
  if (decay_ && !(decay_->rate > 0.0 && decay_->amplitude >= 0.0)) {
    throw std::invalid_argument("RadialSymbol: decay needs rate > 0 and amplitude >= 0");
  }
  std::sort(breakpoints_.begin(), breakpoints_.end());
  const double reach = effective_radius();
  constexpr int kSamples = 4000;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = reach * static_cast<double>(i) / kSamples;
    const double v = profile_(r);
    if (!std::isfinite(v) || std::abs(v) > linf_ * (1.0 + 1e-12)) {
      throw std::invalid_argument("RadialSymbol: |profile| exceeds declared linf at r = " + std::to_string(r));
    }
  }
}

RadialSymbol RadialSymbol::disc_indicator(double radius, double height) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("disc_indicator: radius must be > 0");
  return RadialSymbol({{"id", "disc"}, {"radius", radius}, {"height", height}},
                      [radius, height](double r) { return r <= radius ? height : 0.0; }, std::abs(height),
                      radius, std::nullopt, {radius});
}

RadialSymbol RadialSymbol::annulus_indicator(double r_inner, double r_outer, double height) {
  if (!(r_inner >= 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer)) {
    throw std::invalid_argument("annulus_indicator: need 0 <= r_inner < r_outer");
  }
  return RadialSymbol({{"id", "annulus"}, {"r", {r_inner, r_outer}}, {"height", height}},
                      [=](double r) { return (r >= r_inner && r <= r_outer) ? height : 0.0; },
                      std::abs(height), r_outer, std::nullopt, {r_inner, r_outer});
}

RadialSymbol RadialSymbol::gaussian(double height) {
  return RadialSymbol({{"id", "gaussian"}, {"height", height}},
                      [height](double r) { return height * std::exp(-r * r); }, std::abs(height),
                      std::nullopt, GaussianDecay{std::abs(height), 1.0});
}

RadialSymbol RadialSymbol::table(std::vector<double> radii, std::vector<double> values) {
  if (radii.empty() || radii.size() != values.size()) {
    throw std::invalid_argument("table: radii and values must be non-empty and equally long");
  }
  double linf = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(radii[i]) || !std::isfinite(values[i]) || radii[i] < 0.0 ||
        (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw std::invalid_argument("table: radii must be finite, >= 0 and strictly increasing");
    }
    linf = std::max(linf, std::abs(values[i]));
  }
  nlohmann::json desc{{"id", "table"}, {"r", radii}, {"values", values}};
  const double support = radii.back();
  std::vector<double> breaks = radii;
  auto profile = [radii = std::move(radii), values = std::move(values)](double r) {
    if (r > radii.back()) return 0.0;
    if (r <= radii.front()) return values.front();
    const auto it = std::upper_bound(radii.begin(), radii.end(), r);
    const auto k = static_cast<std::size_t>(it - radii.begin());
    const double u = (r - radii[k - 1]) / (radii[k] - radii[k - 1]);
    return (1.0 - u) * values[k - 1] + u * values[k];
  };
  return RadialSymbol(std::move(desc), std::move(profile), linf, support, std::nullopt, std::move(breaks));
}

RadialSymbol RadialSymbol::scaled(double factor) const {
  if (!std::isfinite(factor)) throw std::invalid_argument("RadialSymbol::scaled: non-finite factor");
  RadialSymbol out = *this;
  out.scale_ *= factor;
  return out;
}

double RadialSymbol::tail_mass(double radius) const {
  double best = std::numeric_limits<double>::infinity();
  if (support_) {
    if (radius >= *support_) return 0.0;
    best = integrate_radial_l1([this](double r) { return std::abs((*this)(r)); }, radius, *support_,
                               breakpoints_);
  }
  if (decay_) {
    const double a = decay_->rate;
    best = std::min(best, std::abs(scale_) * kPi * decay_->amplitude / a * std::exp(-a * radius * radius));
  }
  return best;
}

double RadialSymbol::truncation_radius(double tol) const {
  if (support_) return *support_;
  const double a = decay_->rate;
  const double mass = std::abs(scale_) * kPi * decay_->amplitude / a;
  if (mass == 0.0 || mass <= tol) return 0.0;
  return std::sqrt(std::log(mass / tol) / a);
}

double RadialSymbol::effective_radius() const {
  if (support_) return *support_;
  const double a = decay_->rate;
  const double mass = kPi * decay_->amplitude / a;
  if (mass == 0.0) return 0.0;
  return std::sqrt(std::max(0.0, std::log(mass / 1e-20)) / a);
}

nlohmann::json RadialSymbol::to_json() const {
  nlohmann::json j{{"radial", description_}};
  if (scale_ != 1.0) j["scale"] = scale_;
  return j;
}

// ---------------------------------------------------------------- SampledSymbol

SampledSymbol::SampledSymbol(std::vector<double> t_nodes, std::size_t angular_count, std::vector<double> values,
                             double linf)
    : t_nodes_(std::move(t_nodes)), angular_count_(angular_count), values_(std::move(values)), linf_(linf) {
  if (t_nodes_.empty() || angular_count_ == 0) {
    throw std::invalid_argument("SampledSymbol: grid must have at least one radial and one angular node");
  }
  if (values_.size() != t_nodes_.size() * angular_count_) {
    throw std::invalid_argument("SampledSymbol: values must have t_nodes * angular entries");
  }
  for (std::size_t j = 0; j < t_nodes_.size(); ++j) {
    if (!std::isfinite(t_nodes_[j]) || t_nodes_[j] < 0.0 || (j > 0 && !(t_nodes_[j] > t_nodes_[j - 1]))) {
      throw std::invalid_argument("SampledSymbol: t nodes must be finite, >= 0 and strictly increasing");
    }
  }
  if (!(linf_ >= 0.0) || !std::isfinite(linf_)) throw std::invalid_argument("SampledSymbol: linf must be >= 0");
  for (double v : values_) {
    if (!std::isfinite(v) || std::abs(v) > linf_ * (1.0 + 1e-12)) {
      throw std::invalid_argument("SampledSymbol: |value| exceeds declared linf");
    }
  }
}

SampledSymbol SampledSymbol::sample(const std::function<double(ComplexPoint)>& fn, std::vector<double> t_nodes,
                                    std::size_t angular_count, double linf) {
  if (angular_count == 0) throw std::invalid_argument("SampledSymbol::sample: angular count must be >= 1");
  std::vector<double> values;
  values.reserve(t_nodes.size() * angular_count);
  for (double t : t_nodes) {
    const double r = std::sqrt(std::max(0.0, t) / kPi);
    for (std::size_t i = 0; i < angular_count; ++i) {
      values.push_back(fn(std::polar(r, cell_angle(i, angular_count))));
    }
  }
  return SampledSymbol(std::move(t_nodes), angular_count, std::move(values), linf);
}

double SampledSymbol::support_radius() const { return std::sqrt(t_nodes_.back() / kPi); }

SampledSymbol::Bracket SampledSymbol::bracket(double t) const {
  if (t <= t_nodes_.front()) return {0, 0, 0.0};
  const auto it = std::upper_bound(t_nodes_.begin(), t_nodes_.end(), t);
  const auto k = static_cast<std::size_t>(it - t_nodes_.begin());
  if (k == t_nodes_.size()) return {k - 1, k - 1, 0.0};
  return {k - 1, k, (t - t_nodes_[k - 1]) / (t_nodes_[k] - t_nodes_[k - 1])};
}

void SampledSymbol::ring_values(double r, std::span<double> out) const {
  const double t = kPi * r * r;
  if (t > t_nodes_.back()) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const Bracket b = bracket(t);
  for (std::size_t i = 0; i < angular_count_; ++i) {
    out[i] = (1.0 - b.u) * value(b.lo, i) + b.u * value(b.hi, i);
  }
}

double SampledSymbol::operator()(ComplexPoint z) const {
  const double t = kPi * std::norm(z);
  if (t > t_nodes_.back()) return 0.0;
  const Bracket b = bracket(t);
  const double h = kTwoPi / static_cast<double>(angular_count_);
  const double pos = wrap_angle(std::arg(z)) / h;
  const auto i = std::min(static_cast<std::size_t>(pos), angular_count_ - 1);
  const std::size_t i1 = (i + 1) % angular_count_;
  const double u = pos - static_cast<double>(i);
  const double v0 = (1.0 - b.u) * value(b.lo, i) + b.u * value(b.hi, i);
  const double v1 = (1.0 - b.u) * value(b.lo, i1) + b.u * value(b.hi, i1);
  return (1.0 - u) * v0 + u * v1;
}

SampledSymbol SampledSymbol::scaled(double factor) const {
  std::vector<double> v(values_);
  for (auto& x : v) x *= factor;
  return SampledSymbol(t_nodes_, angular_count_, std::move(v), linf_ * std::abs(factor));
}

// ---------------------------------------------------------------- norms

double integrate_radial_l1(const std::function<double(double)>& g, double a, double b,
                           std::span<const double> breaks) {
  return composite(panel_rule(), a, b, breaks, kPanelWidth, [&](double r) { return g(r) * kTwoPi * r; });
}

double l1_norm(const SimpleSymbol& s) {
  CompensatedSum sum;
  for (const auto& p : s.pieces()) sum.add(std::abs(p.coeff) * area(p.region));
  return sum.value();
}

double l1_norm(const RadialSymbol& s) {
  return integrate_radial_l1([&](double r) { return std::abs(s(r)); }, 0.0, s.effective_radius(), s.breakpoints());
}

double l1_norm(const SampledSymbol& s) {
  // dA = dt dtheta / (2 pi); bilinear cells in (t, theta) plus the constant core [0, t_0].
  const auto t = s.t_nodes();
  const std::size_t m = s.angular_count();
  const double h = kTwoPi / static_cast<double>(m);
  std::vector<double> t_edges{0.0};
  for (double x : t) {
    if (x > t_edges.back()) t_edges.push_back(x);
  }
  std::vector<double> ring(m);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < t_edges.size(); ++j) {
    total += panel(cell_rule(), t_edges[j], t_edges[j + 1], [&](double tt) {
      s.ring_values(std::sqrt(tt / kPi), ring);
      double ang = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double v0 = ring[i];
        const double v1 = ring[(i + 1) % m];
        ang += panel(cell_rule(), 0.0, h, [&](double th) { return std::abs(v0 + (v1 - v0) * th / h); });
      }
      return ang;
    });
  }
  return total / kTwoPi;
}

double l1_norm(const Symbol& s) {
  return std::visit([](const auto& x) { return l1_norm(x); }, s);
}

double linf_norm(const SimpleSymbol& s) {
  double m = 0.0;
  for (const auto& p : s.pieces()) m = std::max(m, std::abs(p.coeff));
  return m;
}

double linf_norm(const RadialSymbol& s) { return s.linf(); }
double linf_norm(const SampledSymbol& s) { return s.linf(); }

double linf_norm(const Symbol& s) {
  return std::visit([](const auto& x) { return linf_norm(x); }, s);
}

Symbol scaled(const Symbol& s, double factor) {
  return std::visit([factor](const auto& x) -> Symbol { return x.scaled(factor); }, s);
}

// ---------------------------------------------------------------- discretize

Discretization discretize(const RadialSymbol& s, const DiscretizeOptions& options) {
  check_cells(options);
  const double outer = options.outer_radius.value_or(s.truncation_radius(options.tail_tolerance));
  if (!(outer >= 0.0) || !std::isfinite(outer)) throw std::invalid_argument("discretize: invalid outer radius");
  Discretization out;
  out.outer_radius = outer;
  out.tail_mass = s.tail_mass(outer);
  if (!(out.tail_mass <= options.tail_tolerance)) {
    throw std::invalid_argument("discretize: declared support/decay leaves tail mass " +
                                std::to_string(out.tail_mass) + " beyond radius " + std::to_string(outer));
  }
  if (outer == 0.0) {
    out.l1_error = out.tail_mass;
    return out;
  }
  std::vector<SymbolPiece> pieces;
  CompensatedSum err;
  const double dr = outer / static_cast<double>(options.radial_cells);
  for (std::size_t k = 0; k < options.radial_cells; ++k) {
    const double r_lo = dr * static_cast<double>(k);
    const double r_hi = k + 1 == options.radial_cells ? outer : dr * static_cast<double>(k + 1);
    const double r_mid = 0.5 * (r_lo + r_hi);
    const double c = s(r_mid);
    std::vector<double> breaks(s.breakpoints().begin(), s.breakpoints().end());
    breaks.push_back(r_mid);
    err.add(integrate_radial_l1([&](double r) { return std::abs(s(r) - c); }, r_lo, r_hi, breaks));
    append_ring(pieces, r_lo, r_hi, options.angular_cells, [c](double) { return c; });
  }
  out.symbol = SimpleSymbol(std::move(pieces));
  err.add(out.tail_mass);
  out.l1_error = err.value();
  return out;
}

Discretization discretize(const SampledSymbol& s, const DiscretizeOptions& options) {
  check_cells(options);
  const double support = s.support_radius();
  const double outer = options.outer_radius.value_or(support);
  Discretization out;
  out.outer_radius = outer;
  if (outer < support) {
    out.tail_mass = integrate_radial_l1(
        [&](double r) {
          std::vector<double> ring(s.angular_count());
          s.ring_values(r, ring);
          double a = 0.0;
          for (double v : ring) a += std::abs(v);
          return a / static_cast<double>(ring.size());
        },
        outer, support);
    if (!(out.tail_mass <= options.tail_tolerance)) {
      throw std::invalid_argument("discretize: sampled symbol support extends beyond the grid");
    }
  }
  if (outer == 0.0) return out;

  const std::size_t m = s.angular_count();
  const double h = kTwoPi / static_cast<double>(m);
  std::vector<double> radial_breaks;
  for (double t : s.t_nodes()) radial_breaks.push_back(std::sqrt(t / kPi));
  std::vector<double> angular_breaks;
  for (std::size_t i = 0; i <= m; ++i) angular_breaks.push_back(h * static_cast<double>(i));

  std::vector<SymbolPiece> pieces;
  CompensatedSum err;
  const double dr = outer / static_cast<double>(options.radial_cells);
  std::vector<double> ring(m);
  for (std::size_t k = 0; k < options.radial_cells; ++k) {
    const double r_lo = dr * static_cast<double>(k);
    const double r_hi = k + 1 == options.radial_cells ? outer : dr * static_cast<double>(k + 1);
    const double r_mid = 0.5 * (r_lo + r_hi);
    for (std::size_t i = 0; i < options.angular_cells; ++i) {
      const double t0 = cell_angle(i, options.angular_cells);
      const double t1 = cell_angle(i + 1, options.angular_cells);
      const double c = s(std::polar(r_mid, 0.5 * (t0 + t1)));
      auto rb = radial_breaks;
      rb.push_back(r_mid);
      auto ab = angular_breaks;
      ab.push_back(0.5 * (t0 + t1));
      err.add(composite(cell_rule(), r_lo, r_hi, rb, kPanelWidth, [&](double r) {
        const double inner = composite(cell_rule(), t0, t1, ab, kTwoPi,
                                       [&](double th) { return std::abs(s(std::polar(r, th)) - c); });
        return inner * r;
      }));
      if (c != 0.0) pieces.push_back({Region::sector(r_lo, r_hi, t0, t1), c});
    }
  }
  out.symbol = SimpleSymbol(std::move(pieces));
  err.add(out.tail_mass);
  out.l1_error = err.value();
  return out;
}

// ---------------------------------------------------------------- JSON

void to_json(nlohmann::json& j, const SimpleSymbol& s) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : s.pieces()) {
    nlohmann::json item = p.region;
    item["coeff"] = p.coeff;
    pieces.push_back(std::move(item));
  }
  j = nlohmann::json{{"pieces", std::move(pieces)}};
}

void to_json(nlohmann::json& j, const Symbol& s) {
  if (const auto* simple = std::get_if<SimpleSymbol>(&s)) {
    to_json(j, *simple);
  } else if (const auto* radial = std::get_if<RadialSymbol>(&s)) {
    j = radial->to_json();
  } else {
    const auto& sampled = std::get<SampledSymbol>(s);
    std::vector<double> values;
    for (std::size_t a = 0; a < sampled.t_nodes().size(); ++a) {
      for (std::size_t b = 0; b < sampled.angular_count(); ++b) values.push_back(sampled.value(a, b));
    }
    j = {{"sampled",
          {{"t", std::vector<double>(sampled.t_nodes().begin(), sampled.t_nodes().end())},
           {"angular", sampled.angular_count()},
           {"values", values},
           {"linf", sampled.linf()}}}};
  }
}

SimpleSymbol simple_symbol_from_json(const nlohmann::json& j) {
  std::vector<SymbolPiece> pieces;
  for (const auto& item : j.at("pieces")) {
    pieces.push_back({region_from_json(item), item.at("coeff").get<double>()});
  }
  return SimpleSymbol(std::move(pieces));
}

RadialSymbol radial_symbol_from_json(const nlohmann::json& j) {
  const auto& spec = j.at("radial");
  const std::string id = spec.is_string() ? spec.get<std::string>() : spec.at("id").get<std::string>();
  const double height = spec.is_object() ? spec.value("height", 1.0) : 1.0;
  RadialSymbol out = [&] {
    if (id == "gaussian") return RadialSymbol::gaussian(height);
    if (id == "disc") return RadialSymbol::disc_indicator(spec.at("radius").get<double>(), height);
    if (id == "annulus") {
      const auto& r = spec.at("r");
      return RadialSymbol::annulus_indicator(r.at(0).get<double>(), r.at(1).get<double>(), height);
    }
    if (id == "table") {
      return RadialSymbol::table(spec.at("r").get<std::vector<double>>(),
                                 spec.at("values").get<std::vector<double>>());
    }
    throw std::invalid_argument("unknown radial symbol id '" + id + "'");
  }();
  if (j.contains("scale")) out = out.scaled(j.at("scale").get<double>());
  return out;
}

Symbol symbol_from_json(const nlohmann::json& j) {
  if (j.contains("pieces")) {
    SimpleSymbol s = simple_symbol_from_json(j);
    if (j.contains("scale")) s = s.scaled(j.at("scale").get<double>());
    return s;
  }
  if (j.contains("radial")) return radial_symbol_from_json(j);
  if (j.contains("sampled")) {
    const auto& s = j.at("sampled");
    return SampledSymbol(s.at("t").get<std::vector<double>>(), s.at("angular").get<std::size_t>(),
                         s.at("values").get<std::vector<double>>(), s.at("linf").get<double>());
  }
  throw std::invalid_argument("symbol JSON must contain \"pieces\", \"radial\" or \"sampled\"");
}

}  // namespace focklab
