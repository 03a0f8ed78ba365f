#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "focklab/regions.hpp"

namespace focklab {

struct SymbolPiece {
  Region region;
  double coeff = 0.0;
};

/// phi = sum_k coeff_k chi_{Omega_k} over pairwise disjoint regions.
class SimpleSymbol {
 public:
  /// The zero symbol.
  SimpleSymbol() = default;
  /// Throws std::invalid_argument if coefficients are non-finite or the regions
  /// are not certified disjoint by focklab::disjoint.
  explicit SimpleSymbol(std::vector<SymbolPiece> pieces);

  std::span<const SymbolPiece> pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  std::vector<Region> regions() const;

  SimpleSymbol scaled(double factor) const;
  double operator()(ComplexPoint z) const;

 private:
  std::vector<SymbolPiece> pieces_;
};

/// |phi(r)| <= amplitude * exp(-rate r^2) for every r.
struct GaussianDecay {
  double amplitude = 1.0;
  double rate = 1.0;
};

/// Radial profile phi(|z|) with a declared sup bound and an integrability witness
/// (compact support radius or Gaussian decay envelope).
class RadialSymbol {
 public:
  using Profile = std::function<double(double)>;

  /// Throws std::invalid_argument when neither witness is given, when linf < 0,
  /// or when sampled |profile| exceeds linf.
  RadialSymbol(nlohmann::json description, Profile profile, double linf,
               std::optional<double> support_radius, std::optional<GaussianDecay> decay,
               std::vector<double> breakpoints = {});

  /// height * chi_{|z| <= radius}
  static RadialSymbol disc_indicator(double radius, double height = 1.0);
  /// height * chi_{r_inner <= |z| <= r_outer}
  static RadialSymbol annulus_indicator(double r_inner, double r_outer, double height = 1.0);
  /// height * exp(-|z|^2)
  static RadialSymbol gaussian(double height = 1.0);
  /// Piecewise-linear interpolation of (radii, values); constant below radii[0],
  /// zero beyond radii.back().
  static RadialSymbol table(std::vector<double> radii, std::vector<double> values);

  double operator()(double r) const { return scale_ * profile_(r); }
  double linf() const { return std::abs(scale_) * linf_; }
  const std::optional<double>& support_radius() const { return support_; }
  const std::optional<GaussianDecay>& decay() const { return decay_; }
  /// Radii where the profile may fail to be smooth, increasing.
  std::span<const double> breakpoints() const { return breakpoints_; }

  RadialSymbol scaled(double factor) const;

  /// Upper bound on int_{|z| > radius} |phi| dA from the integrability witness.
  double tail_mass(double radius) const;
  /// Smallest radius whose tail bound is <= tol.
  double truncation_radius(double tol) const;
  /// Radius beyond which the profile is negligible at double precision.
  double effective_radius() const;

  nlohmann::json to_json() const;

 private:
  nlohmann::json description_;
  Profile profile_;
  double linf_;
  double scale_ = 1.0;
  std::optional<double> support_;
  std::optional<GaussianDecay> decay_;
  std::vector<double> breakpoints_;
};

/// Values on a polar grid: radial nodes in t = pi r^2 (increasing, t >= 0) times
/// `angular_count` equispaced angles theta_i = 2 pi i / M. Between nodes the symbol is
/// bilinear in (t, theta), periodic in theta, constant in t below the first node and
/// zero beyond the last.
class SampledSymbol {
 public:
  SampledSymbol(std::vector<double> t_nodes, std::size_t angular_count, std::vector<double> values,
                double linf);

  static SampledSymbol sample(const std::function<double(ComplexPoint)>& fn, std::vector<double> t_nodes,
                              std::size_t angular_count, double linf);

  std::span<const double> t_nodes() const { return t_nodes_; }
  std::size_t angular_count() const { return angular_count_; }
  double value(std::size_t radial, std::size_t angular) const {
    return values_[radial * angular_count_ + angular];
  }
  double linf() const { return linf_; }
  double support_radius() const;

  double operator()(ComplexPoint z) const;
  /// Angular samples at radius r (interpolated in t), written to out[0..M).
  void ring_values(double r, std::span<double> out) const;

  SampledSymbol scaled(double factor) const;

 private:
  struct Bracket {
    std::size_t lo;
    std::size_t hi;
    double u;
  };
  Bracket bracket(double t) const;

  std::vector<double> t_nodes_;
  std::size_t angular_count_;
  std::vector<double> values_;
  double linf_;
};

using Symbol = std::variant<SimpleSymbol, RadialSymbol, SampledSymbol>;

/// ||phi||_1 = int |phi| dA.
double l1_norm(const SimpleSymbol& s);
double l1_norm(const RadialSymbol& s);
double l1_norm(const SampledSymbol& s);
double l1_norm(const Symbol& s);

/// ||phi||_inf; declared bound for radial and sampled symbols, 0 for the zero symbol.
double linf_norm(const SimpleSymbol& s);
double linf_norm(const RadialSymbol& s);
double linf_norm(const SampledSymbol& s);
double linf_norm(const Symbol& s);

Symbol scaled(const Symbol& s, double factor);

struct DiscretizeOptions {
  std::size_t radial_cells = 16;
  std::size_t angular_cells = 16;
  /// Largest admissible L1 mass left outside the grid.
  double tail_tolerance = 1e-12;
  /// Outer grid radius; derived from the integrability witness when absent.
  std::optional<double> outer_radius;
};

struct Discretization {
  SimpleSymbol symbol;
  /// Quadrature of |phi - phi_discrete| over the grid plus the tail mass.
  double l1_error = 0.0;
  double tail_mass = 0.0;
  double outer_radius = 0.0;
};

/// Step-function approximation on a polar grid, one annular-sector piece per cell
/// with coefficient equal to the value at the cell centre (cells with value 0 are
/// dropped). Throws std::invalid_argument if the tail outside outer_radius exceeds
/// tail_tolerance or if cell counts are zero.
Discretization discretize(const RadialSymbol& s, const DiscretizeOptions& options);
Discretization discretize(const SampledSymbol& s, const DiscretizeOptions& options);

/// int_a^b g(r) 2 pi r dr by composite Gauss-Legendre, splitting at `breaks`.
double integrate_radial_l1(const std::function<double(double)>& g, double a, double b,
                           std::span<const double> breaks = {});

void to_json(nlohmann::json& j, const SimpleSymbol& s);
void to_json(nlohmann::json& j, const Symbol& s);
/// {"pieces": [...]}, {"radial": "gaussian" | {"id": ..., ...}, "scale": c} or
/// {"sampled": {"t": [...], "angular": M, "values": [...], "linf": x}}.
Symbol symbol_from_json(const nlohmann::json& j);
SimpleSymbol simple_symbol_from_json(const nlohmann::json& j);
RadialSymbol radial_symbol_from_json(const nlohmann::json& j);

}  // namespace focklab
