#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "focklab/fock_space.hpp"
#include "focklab/hermitian.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/regions.hpp"
#include "focklab/symbols.hpp"

namespace focklab {

inline constexpr double kNormSlack = 1e-8;
inline constexpr double kRegionSlack = 1e-10;

/// linf * (1 - exp(-l1 / linf)), evaluated with expm1. Zero when linf == 0.
/// Throws std::invalid_argument on negative or non-finite input.
double galbis_bound(double l1, double linf);

/// 1 - exp(-x) for x >= 0.
double concentration_bound(double measure);

struct VerificationReport {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs
  double margin = 0.0;
  /// margin >= -slack
  bool holds = true;
  double slack = 0.0;
  std::optional<std::uint64_t> seed;
  /// Truncation, rule orders and experiment-specific diagnostics, in insertion order.
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

VerificationReport make_report(std::string id, double lhs, double rhs, double slack,
                               nlohmann::ordered_json metadata = nlohmann::ordered_json::object());

/// Rule orders as report metadata.
nlohmann::ordered_json rules_metadata(const Rules& rules);

struct WeightedRegion {
  Region region;
  double epsilon = 1.0;
};

class WeightedPartition {
 public:
  WeightedPartition() = default;
  /// Throws std::invalid_argument unless every epsilon is in [0, 1] and the regions are disjoint.
  explicit WeightedPartition(std::vector<WeightedRegion> pieces);

  std::span<const WeightedRegion> pieces() const { return pieces_; }
  std::vector<Region> regions() const;

 private:
  std::vector<WeightedRegion> pieces_;
};

/// lhs = ||T_phi|| on the N x N compression, rhs = galbis_bound(||phi||_1, ||phi||_inf), slack 1e-8.
VerificationReport verify_main_theorem(const Symbol& symbol, std::size_t truncation, const Rules& rules,
                                       const NormOptions& options = {});

/// lhs = int_region |f|^2 dlambda, rhs = 1 - exp(-|region|), slack 1e-10.
/// Throws std::invalid_argument unless ||f|| = 1 within 1e-12.
VerificationReport verify_nt(const FockFunction& f, const Region& region, const Rules& rules);

/// Same inequality for a union of disjoint regions (integrals summed, areas summed).
VerificationReport verify_nt_union(const FockFunction& f, std::span<const Region> regions, const Rules& rules);

/// lhs = sum eps_k int_{Omega_k} |f|^2 dlambda, rhs = 1 - exp(-sum eps_k |Omega_k|), slack 1e-10.
VerificationReport verify_lemma(const FockFunction& f, const WeightedPartition& partition, const Rules& rules);

struct SharpnessResult {
  /// "sharpness/rayleigh", "sharpness/bound", "sharpness/norm".
  std::vector<VerificationReport> reports;
  /// |<v_top, coherent(w0)>| of the truncated matrix; diagnostic only.
  double overlap = 0.0;
};

/// (a) Rayleigh quotient of the coherent state at w0 on D(w0, R) against 1 - e^{-pi R^2};
/// (b) galbis_bound(pi R^2, 1) against the same closed form evaluated independently;
/// (c) certified norm of the compressed disc symbol against the bound.
SharpnessResult sharpness_experiment(ComplexPoint w0, double radius, std::size_t truncation, const Rules& rules);

struct ApproximationStage {
  std::size_t cells = 0;
  double l1_discrete = 0.0;
  double l1_error = 0.0;
  /// 1 - exp(-l1_discrete) + l1_error
  double bound = 0.0;
};

struct ApproximationResult {
  /// 1 / ||phi||_inf applied before discretizing.
  double scale = 1.0;
  double norm = 0.0;
  double l1 = 0.0;
  std::vector<ApproximationStage> stages;
  /// One "approximation/m=<cells>" report per stage, then "approximation/l1-decay".
  std::vector<VerificationReport> reports;
};

/// Simple-function approximation on m x m polar grids for each m in `grids`. The norm of
/// the rescaled symbol's compression must stay below every composite bound. Simple
/// symbols are their own discretization (l1_error = 0 at every stage).
ApproximationResult approximation_experiment(const Symbol& symbol, std::span<const std::size_t> grids,
                                             std::size_t truncation, const Rules& rules);

}  // namespace focklab
