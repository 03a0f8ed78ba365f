#include "focklab/sampling.hpp"

#include <cmath>
#include <numeric>

#include "focklab/special.hpp"

namespace focklab {
namespace {

constexpr double kMaxRadius = 2.5;
constexpr std::size_t kLatticeRings = 3;
constexpr std::size_t kLatticeArcs = 4;
constexpr int kMaxAttempts = 200;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<double> sorted_uniform(std::mt19937_64& rng, std::size_t count, double lo, double hi) {
  std::vector<double> v(count);
  for (auto& x : v) x = uniform(rng, lo, hi);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::mt19937_64 job_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

FockFunction random_unit_function(std::mt19937_64& rng, std::size_t degree, std::size_t truncation) {
  if (truncation <= degree) throw std::invalid_argument("random_unit_function: truncation must exceed degree");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<Complex> a(truncation);
  for (std::size_t n = 0; n <= degree; ++n) {
    const double re = normal(rng);
    const double im = normal(rng);
    a[n] = {re, im};
  }
  return FockFunction(std::move(a)).normalized();
}

Region random_region(std::mt19937_64& rng) {
  if (uniform(rng, 0.0, 1.0) < 0.5) {
    const double rho = 2.0 * std::sqrt(uniform(rng, 0.0, 1.0));
    const double arg = uniform(rng, 0.0, kTwoPi);
    const double radius = uniform(rng, 0.1, 1.2);
    return Region::disc(std::polar(rho, arg), radius);
  }
  const double r1 = uniform(rng, 0.0, 2.0);
  const double r2 = uniform(rng, r1 + 0.1, kMaxRadius);
  const double start = uniform(rng, 0.0, kTwoPi);
  const double span = uniform(rng, 0.2, kTwoPi);
  return Region::sector(r1, r2, start, start + span);
}

WeightedPartition random_partition(std::mt19937_64& rng, std::size_t max_pieces) {
  std::vector<double> radii{0.0};
  for (double r : sorted_uniform(rng, kLatticeRings, 0.05, kMaxRadius)) radii.push_back(r);
  const auto cuts = sorted_uniform(rng, kLatticeArcs, 0.0, kTwoPi);

  std::vector<std::size_t> cells(kLatticeRings * kLatticeArcs);
  std::iota(cells.begin(), cells.end(), 0);
  const auto count = std::uniform_int_distribution<std::size_t>(1, std::min(max_pieces, cells.size()))(rng);
  // Partial Fisher-Yates: the first `count` entries are a sample without replacement.
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = std::uniform_int_distribution<std::size_t>(i, cells.size() - 1)(rng);
    std::swap(cells[i], cells[j]);
  }

  std::vector<WeightedRegion> pieces;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t ring = cells[i] / kLatticeArcs;
    const std::size_t arc = cells[i] % kLatticeArcs;
    const double t0 = cuts[arc];
    const double t1 = arc + 1 < kLatticeArcs ? cuts[arc + 1] : cuts[0] + kTwoPi;
    if (radii[ring + 1] <= radii[ring]) continue;
    pieces.push_back({Region::sector(radii[ring], radii[ring + 1], t0, t1), uniform(rng, 0.0, 1.0)});
  }
  return WeightedPartition(std::move(pieces));
}

SimpleSymbol random_simple_symbol(std::mt19937_64& rng, std::size_t max_pieces) {
  const auto count = std::uniform_int_distribution<std::size_t>(1, max_pieces)(rng);
  std::vector<SymbolPiece> pieces;
  std::vector<Region> accepted;
  for (std::size_t k = 0; k < count; ++k) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Region candidate = random_region(rng);
      const bool clear = std::all_of(accepted.begin(), accepted.end(),
                                     [&](const Region& r) { return disjoint(r, candidate); });
      if (!clear) continue;
      accepted.push_back(candidate);
      pieces.push_back({std::move(candidate), uniform(rng, -1.0, 1.0)});
      break;
    }
  }
  return SimpleSymbol(std::move(pieces));
}

}  // namespace focklab
