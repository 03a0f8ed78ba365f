#include <cmath>

#include <gtest/gtest.h>

#include "focklab/quadrature.hpp"
#include "focklab/special.hpp"
#include "focklab/symbols.hpp"

using namespace focklab;

TEST(SimpleSymbol, ValidatesPieces) {
  EXPECT_THROW(SimpleSymbol({{Region::disc(0.0, 1.0), 1.0}, {Region::disc({1.0, 0.0}, 1.0), 2.0}}),
               std::invalid_argument);
  EXPECT_THROW(SimpleSymbol({{Region::disc(0.0, 1.0), INFINITY}}), std::invalid_argument);
  EXPECT_TRUE(SimpleSymbol().empty());
}

TEST(SimpleSymbol, EvaluatesAndMeasures) {
  const SimpleSymbol s({{Region::disc(0.0, 1.0), 0.5}, {Region::disc({3.0, 0.0}, 1.0), -0.5}});
  EXPECT_EQ(s({0.2, 0.1}), 0.5);
  EXPECT_EQ(s({3.0, 0.5}), -0.5);
  EXPECT_EQ(s({1.5, 0.0}), 0.0);
  EXPECT_NEAR(l1_norm(s), kPi, 1e-15);
  EXPECT_EQ(linf_norm(s), 0.5);
  EXPECT_EQ(linf_norm(SimpleSymbol()), 0.0);
  const auto t = s.scaled(-2.0);
  EXPECT_EQ(t({0.0, 0.0}), -1.0);
  EXPECT_NEAR(l1_norm(t), 2.0 * kPi, 1e-15);
}

TEST(RadialSymbol, NeedsWitnessAndHonestLinf) {
  auto f = [](double r) { return std::exp(-r); };
  EXPECT_THROW(RadialSymbol({}, f, 1.0, std::nullopt, std::nullopt), std::invalid_argument);
  EXPECT_THROW(RadialSymbol({}, f, 0.5, 3.0, std::nullopt), std::invalid_argument);
  EXPECT_NO_THROW(RadialSymbol({}, f, 1.0, 3.0, std::nullopt));
}

TEST(RadialSymbol, BuiltinNorms) {
  EXPECT_NEAR(l1_norm(RadialSymbol::disc_indicator(1.0, 2.0)), 2.0 * kPi, 1e-13);
  EXPECT_NEAR(l1_norm(RadialSymbol::annulus_indicator(1.0, 2.0)), 3.0 * kPi, 1e-13);
  EXPECT_NEAR(l1_norm(RadialSymbol::gaussian()), kPi, 1e-13);
  EXPECT_NEAR(l1_norm(RadialSymbol::gaussian(-3.0)), 3.0 * kPi, 1e-12);
  EXPECT_EQ(linf_norm(RadialSymbol::gaussian(-3.0)), 3.0);
  // 1 - r on [0, 1]: 2 pi (1/2 - 1/3)
  EXPECT_NEAR(l1_norm(RadialSymbol::table({0.0, 1.0}, {1.0, 0.0})), kPi / 3.0, 1e-13);
}

TEST(RadialSymbol, GaussianTail) {
  const auto g = RadialSymbol::gaussian();
  EXPECT_NEAR(g.tail_mass(2.0), kPi * std::exp(-4.0), 1e-15);
  const double r = g.truncation_radius(1e-12);
  EXPECT_NEAR(g.tail_mass(r), 1e-12, 1e-24);
  EXPECT_EQ(RadialSymbol::disc_indicator(1.5).tail_mass(1.5), 0.0);
}

TEST(SampledSymbol, BilinearInterpolation) {
  // t nodes {1, 2}, four angles; value = angle index + 10 * radial index
  const SampledSymbol s({1.0, 2.0}, 4, {0, 1, 2, 3, 10, 11, 12, 13}, 13.0);
  const double r1 = std::sqrt(1.0 / kPi);
  const double r15 = std::sqrt(1.5 / kPi);
  EXPECT_NEAR(s(std::polar(r1, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(s(std::polar(r1, kPi / 2.0)), 1.0, 1e-15);
  EXPECT_NEAR(s(std::polar(r1, kPi / 4.0)), 0.5, 1e-14);
  EXPECT_NEAR(s(std::polar(r15, kPi / 2.0)), 6.0, 1e-13);
  // Periodic between the last and first angle.
  EXPECT_NEAR(s(std::polar(r1, 1.75 * kPi)), 1.5, 1e-14);
  // Constant inside the first node, zero outside the last.
  EXPECT_NEAR(s(std::polar(0.1, kPi)), 2.0, 1e-15);
  EXPECT_EQ(s(std::polar(1.0, 0.0)), 0.0);
  EXPECT_THROW(SampledSymbol({1.0}, 2, {0.0, 2.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(SampledSymbol({2.0, 1.0}, 1, {0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST(SampledSymbol, ConstantSymbolL1IsArea) {
  // phi = 1 for t <= 3: area = 3
  const SampledSymbol s({0.5, 1.0, 3.0}, 8, std::vector<double>(24, 1.0), 1.0);
  EXPECT_NEAR(l1_norm(s), 3.0, 1e-14);
  EXPECT_NEAR(s.support_radius(), std::sqrt(3.0 / kPi), 1e-15);
}

TEST(Discretize, AlignedDiscIsExact) {
  DiscretizeOptions opt;
  opt.radial_cells = 4;
  opt.angular_cells = 6;
  const auto d = discretize(RadialSymbol::disc_indicator(1.0), opt);
  EXPECT_EQ(d.symbol.pieces().size(), 24u);
  EXPECT_NEAR(d.l1_error, 0.0, 1e-14);
  EXPECT_NEAR(l1_norm(d.symbol), kPi, 1e-13);
  EXPECT_TRUE(disjoint(d.symbol.regions()));
}

TEST(Discretize, TailBeyondGridIsRejected) {
  DiscretizeOptions opt;
  opt.outer_radius = 2.0;
  EXPECT_THROW(discretize(RadialSymbol::gaussian(), opt), std::invalid_argument);
  EXPECT_THROW(discretize(RadialSymbol::gaussian(), DiscretizeOptions{0, 4, 1e-12, std::nullopt}),
               std::invalid_argument);
}

// Independent L1 error of a radial step approximation: every cell is split at its
// quarter points (the midpoint, where the monotone profile crosses the cell value,
// is among them) and integrated with 20-point Gauss-Legendre.
double reference_l1_error(const RadialSymbol& s, const Discretization& d, std::size_t cells) {
  const auto rule = gauss_legendre(20);
  const double dr = d.outer_radius / static_cast<double>(cells);
  double total = d.tail_mass;
  for (std::size_t k = 0; k < cells; ++k) {
    const double lo = dr * static_cast<double>(k);
    const double c = s(lo + 0.5 * dr);
    for (int q = 0; q < 4; ++q) {
      const double a = lo + 0.25 * dr * q;
      const double h = 0.125 * dr;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double r = a + h * (rule.nodes[i] + 1.0);
        total += h * rule.weights[i] * std::abs(s(r) - c) * kTwoPi * r;
      }
    }
  }
  return total;
}

TEST(Discretize, GaussianErrorDecreasesAndDoesNotUnderestimate) {
  const auto g = RadialSymbol::gaussian();
  double previous = INFINITY;
  for (std::size_t m : {4u, 8u, 16u, 32u, 64u}) {
    DiscretizeOptions opt;
    opt.radial_cells = m;
    opt.angular_cells = m;
    const auto d = discretize(g, opt);
    EXPECT_LT(d.l1_error, previous) << m;
    previous = d.l1_error;
    EXPECT_GE(d.l1_error, reference_l1_error(g, d, m) - 1e-10) << m;
    EXPECT_TRUE(disjoint(d.symbol.regions()));
    // ||phi_m||_1 within the discretization error of ||phi||_1
    EXPECT_LE(std::abs(l1_norm(d.symbol) - kPi), d.l1_error + 1e-12);
  }
}

TEST(Discretize, SampledSymbolSmoothField) {
  const auto fn = [](ComplexPoint z) { return std::exp(-std::norm(z)) * (1.0 + 0.5 * std::cos(std::arg(z))) / 1.5; };
  std::vector<double> t;
  for (int j = 1; j <= 40; ++j) t.push_back(0.25 * j);
  const auto s = SampledSymbol::sample(fn, t, 32, 1.0);
  double previous = INFINITY;
  for (std::size_t m : {4u, 8u, 16u}) {
    DiscretizeOptions opt;
    opt.radial_cells = m;
    opt.angular_cells = m;
    const auto d = discretize(s, opt);
    EXPECT_LT(d.l1_error, previous);
    previous = d.l1_error;
    EXPECT_LE(std::abs(l1_norm(d.symbol) - l1_norm(s)), d.l1_error + 1e-9);
  }
}

TEST(SymbolJson, ParsesEveryForm) {
  const auto simple = symbol_from_json(nlohmann::json::parse(
      R"({"pieces": [{"disc": {"center": [0, 0], "radius": 1}, "coeff": 0.5}], "scale": 2})"));
  EXPECT_NEAR(l1_norm(simple), kPi, 1e-15);
  const auto gauss = symbol_from_json(nlohmann::json::parse(R"({"radial": "gaussian", "scale": 0.5})"));
  EXPECT_EQ(linf_norm(gauss), 0.5);
  const auto disc = symbol_from_json(nlohmann::json::parse(R"({"radial": {"id": "disc", "radius": 2, "height": 3}})"));
  EXPECT_NEAR(l1_norm(disc), 12.0 * kPi, 1e-12);
  const auto sampled = symbol_from_json(
      nlohmann::json::parse(R"({"sampled": {"t": [1, 2], "angular": 2, "values": [1, 1, 1, 1], "linf": 1}})"));
  EXPECT_NEAR(l1_norm(sampled), 2.0, 1e-14);
  EXPECT_THROW(symbol_from_json(nlohmann::json::parse(R"({"radial": "bessel"})")), std::invalid_argument);
  EXPECT_THROW(symbol_from_json(nlohmann::json::parse(R"({"other": 1})")), std::invalid_argument);
}

TEST(SymbolJson, RoundTrip) {
  const Symbol s = SimpleSymbol({{Region::sector(0.0, 1.0, 0.0, 1.0), -0.25}});
  const nlohmann::json j = s;
  EXPECT_EQ(nlohmann::json(symbol_from_json(j)), j);
  const Symbol r = RadialSymbol::gaussian().scaled(0.5);
  EXPECT_EQ(nlohmann::json(symbol_from_json(nlohmann::json(r))), nlohmann::json(r));
}
