// Acceptance gate: one PASS/FAIL line per criterion. Usage: focklab_acceptance [--criterion N]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "focklab/bounds.hpp"
#include "focklab/run.hpp"
#include "focklab/sampling.hpp"
#include "focklab/special.hpp"
#include "focklab/toeplitz.hpp"

using namespace focklab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("focklab-acceptance-" + name);
  fs::remove_all(dir);
  return dir;
}

const Rules& rules() {
  static const Rules r;
  return r;
}

const double kOneMinusInvE = -std::expm1(-1.0);

Outcome sharpness_centred() {
  Outcome o;
  const SimpleSymbol s({{Region::disc(0.0, 1.0 / std::sqrt(kPi)), 1.0}});
  const double norm = operator_norm(assemble(s, 40, rules())).value;
  const double bound = galbis_bound(1.0, 1.0);
  require(o, std::abs(norm - kOneMinusInvE) <= 1e-10, "norm off by " + fmt("%.3g", norm - kOneMinusInvE));
  require(o, std::abs(norm - bound) <= 1e-10, "norm != bound");
  o.detail = "norm " + fmt("%.17g", norm) + " bound " + fmt("%.17g", bound) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome radial_oracle() {
  Outcome o;
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    const auto g = radial_eigenvalues(RadialSymbol::disc_indicator(std::sqrt(x / kPi)), 51, rules());
    double partial = 0.0;
    double term = 1.0;
    for (std::size_t n = 0; n <= 50; ++n) {
      if (n > 0) term *= x / static_cast<double>(n);
      partial += term;
      worst = std::max(worst, std::abs(g[n] - (1.0 - std::exp(-x) * partial)));
    }
  }
  require(o, worst <= 1e-12, "max error " + fmt("%.3g", worst));
  if (o.pass) o.detail = "max error " + fmt("%.3g", worst);
  return o;
}

Outcome gaussian_closed_form() {
  Outcome o;
  const auto g = RadialSymbol::gaussian();
  const auto gamma = radial_eigenvalues(g, 41, rules());
  const double q = kPi / (kPi + 1.0);
  double worst = 0.0;
  for (std::size_t n = 0; n <= 40; ++n) worst = std::max(worst, std::abs(gamma[n] - std::pow(q, n + 1)));
  const double norm = operator_norm(radial_assemble(g, 41, rules())).value;
  const double bound = galbis_bound(l1_norm(g), linf_norm(g));
  require(o, worst <= 1e-12, "gamma error " + fmt("%.3g", worst));
  require(o, std::abs(norm - q) <= 1e-12, "norm " + fmt("%.17g", norm));
  require(o, std::abs(bound + std::expm1(-kPi)) <= 1e-12, "bound " + fmt("%.17g", bound));
  require(o, norm <= bound + kNormSlack, "norm exceeds bound");
  if (o.pass) o.detail = "norm " + fmt("%.17g", norm) + " bound " + fmt("%.17g", bound) + " gamma error " + fmt("%.3g", worst);
  return o;
}

Outcome orthonormality() {
  Outcome o;
  constexpr std::size_t n = 31;
  const auto& rule = rules().plane();
  std::vector<Complex> gram(n * n);
  std::vector<Complex> e(n);
  for (std::size_t j = 0; j < rule.radial.size(); ++j) {
    const double r = std::sqrt(rule.radial.nodes[j] / kPi);
    const double w = rule.radial.weights[j] * rule.angular.weight() / kTwoPi;
    for (std::size_t i = 0; i < rule.angular.count; ++i) {
      basis_values(std::polar(r, rule.angular.node(i)), e);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) gram[a * n + b] += w * e[a] * std::conj(e[b]);
      }
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) worst = std::max(worst, std::abs(gram[a * n + b] - (a == b ? 1.0 : 0.0)));
  }
  require(o, worst < 1e-12, "defect " + fmt("%.3g", worst));
  if (o.pass) o.detail = "defect " + fmt("%.3g", worst);
  return o;
}

RunConfig suite_config(const std::string& experiment, std::size_t cases) {
  RunConfig c;
  c.experiments = {experiment};
  c.cases = cases;
  c.seed = 20240601;
  c.output_dir = scratch(experiment);
  return c;
}

Outcome concentration_suite() {
  Outcome o;
  auto c = suite_config("verify-nt", 200);
  c.equality_cases = 20;
  const auto res = run(c);
  double worst = INFINITY;
  double worst_equality = 0.0;
  std::size_t random = 0;
  std::size_t equality = 0;
  for (const auto& r : res.reports) {
    if (r.id.rfind("verify-nt/equality/", 0) == 0) {
      ++equality;
      worst_equality = std::max(worst_equality, std::abs(r.margin));
    } else {
      ++random;
      worst = std::min(worst, r.margin);
    }
  }
  require(o, random == 200 && equality == 20, "wrong case count");
  require(o, worst >= -1e-10, "min margin " + fmt("%.3g", worst));
  require(o, worst_equality < 1e-10, "equality |margin| " + fmt("%.3g", worst_equality));
  if (o.pass) o.detail = "min margin " + fmt("%.3g", worst) + ", max equality |margin| " + fmt("%.3g", worst_equality);
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  const auto c = suite_config("verify-lemma", 200);
  const auto res = run(c);
  double worst = INFINITY;
  for (const auto& r : res.reports) worst = std::min(worst, r.margin);
  require(o, res.reports.size() == 200, "wrong case count");
  require(o, worst >= -1e-10, "min margin " + fmt("%.3g", worst));

  // Same partitions with every epsilon set to 1 against the plain union inequality.
  double worst_union = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    auto rng = job_rng(c.seed, i);
    const auto f = random_unit_function(rng);
    const auto partition = random_partition(rng);
    std::vector<WeightedRegion> ones;
    for (const auto& p : partition.pieces()) ones.push_back({p.region, 1.0});
    const auto lemma = verify_lemma(f, WeightedPartition(ones), rules());
    const auto regions = partition.regions();
    const auto uni = verify_nt_union(f, regions, rules());
    worst_union = std::max({worst_union, std::abs(lemma.lhs - uni.lhs), std::abs(lemma.rhs - uni.rhs)});
  }
  require(o, worst_union <= 1e-12, "epsilon=1 vs union " + fmt("%.3g", worst_union));
  if (o.pass) o.detail = "min margin " + fmt("%.3g", worst) + ", epsilon=1 vs union " + fmt("%.3g", worst_union);
  return o;
}

Outcome main_theorem_suite() {
  Outcome o;
  auto c = suite_config("bound", 50);
  c.truncation = 60;
  const auto res = run(c);
  double worst = INFINITY;
  bool certified = true;
  for (const auto& r : res.reports) {
    worst = std::min(worst, r.margin);
    certified = certified && r.metadata.at("certified").get<bool>();
  }
  require(o, res.reports.size() == 50, "wrong case count");
  require(o, worst >= -kNormSlack, "min margin " + fmt("%.3g", worst));
  require(o, certified, "uncertified norm");
  if (o.pass) o.detail = "min margin " + fmt("%.3g", worst) + ", all certified";
  return o;
}

Outcome translation() {
  Outcome o;
  const SimpleSymbol s({{Region::disc({1.0, 0.5}, 1.0 / std::sqrt(kPi)), 1.0}});
  double prev = -INFINITY;
  std::string values;
  for (std::size_t n : {20u, 40u, 60u}) {
    const double v = operator_norm(assemble(s, n, rules())).value;
    require(o, v >= prev, "decrease at N=" + std::to_string(n));
    prev = v;
    values += " N=" + std::to_string(n) + ":" + fmt("%.12f", v);
  }
  require(o, std::abs(prev - kOneMinusInvE) <= 1e-4, "N=60 error " + fmt("%.3g", prev - kOneMinusInvE));
  o.detail = "norms" + values + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome approximation() {
  Outcome o;
  const std::vector<std::size_t> grids{8, 16, 32, 64};
  const auto res = approximation_experiment(RadialSymbol::gaussian(), grids, kDefaultTruncation, rules());
  const double target = -std::expm1(-kPi);
  std::string errors;
  for (std::size_t k = 0; k < res.stages.size(); ++k) {
    const auto& st = res.stages[k];
    errors += " " + fmt("%.4g", st.l1_error);
    if (k > 0) require(o, st.l1_error < res.stages[k - 1].l1_error, "error not decreasing at m=" + std::to_string(st.cells));
    require(o, st.bound >= res.norm - kNormSlack, "bound below norm at m=" + std::to_string(st.cells));
  }
  const double final_bound = res.stages.back().bound;
  require(o, std::abs(final_bound - target) <= 5e-3,
          "final bound " + fmt("%.6f", final_bound) + " is " + fmt("%.3g", final_bound - target) + " from 1-e^{-pi}");
  o.detail = "norm " + fmt("%.6f", res.norm) + ", l1 errors" + errors + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const auto symbol = nlohmann::json::parse(
      R"({"pieces": [{"disc": {"center": [0.5, -0.25], "radius": 0.7}, "coeff": 0.9},
                     {"sector": {"r": [1.4, 2.0], "theta": [0.3, 2.4]}, "coeff": -0.6}]})");
  std::size_t files = 0;
  for (const bool with_symbol : {false, true}) {
    std::vector<std::vector<fs::path>> outputs;
    for (std::size_t threads : {1u, 4u}) {
      RunConfig c;
      c.seed = 7;
      c.threads = threads;
      c.output_dir = scratch((with_symbol ? "det-symbol-" : "det-") + std::to_string(threads));
      if (with_symbol) {
        c.symbol = symbol;
        c.experiments = {"assemble", "norm", "bound", "norm-table", "approximate"};
      } else {
        c.experiments = {"sharpness", "verify-nt", "verify-lemma", "bound", "approximate"};
        c.equality_cases = 20;
      }
      outputs.push_back(run(c).files);
    }
    require(o, outputs[0].size() == outputs[1].size(), "file count differs");
    for (std::size_t i = 0; i < std::min(outputs[0].size(), outputs[1].size()); ++i) {
      ++files;
      require(o, slurp(outputs[0][i]) == slurp(outputs[1][i]), outputs[0][i].filename().string() + " differs");
    }
  }
  if (o.pass) o.detail = std::to_string(files) + " files byte-identical";
  return o;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"disc sharpness", 1.0, sharpness_centred},
      {"radial incomplete-gamma oracle", 1.0, radial_oracle},
      {"gaussian closed form", 1.0, gaussian_closed_form},
      {"orthonormality", 5.0, orthonormality},
      {"concentration suite", 30.0, concentration_suite},
      {"weighted lemma suite", 30.0, lemma_suite},
      {"mixed-sign norm bound suite", 60.0, main_theorem_suite},
      {"translation invariance", 30.0, translation},
      {"approximation pipeline", 30.0, approximation},
      {"determinism", 300.0, determinism},
  };
  return all;
}

bool run_one(std::size_t index) {
  const auto& c = criteria()[index - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > c.budget_seconds) require(o, false, "runtime " + fmt("%.2f", seconds) + " s over budget");
  std::printf("criterion %zu %s: %s [%.2f s / %.0f s] %s\n", index, c.name.c_str(), o.pass ? "PASS" : "FAIL", seconds,
              c.budget_seconds, o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      const long n = std::strtol(argv[++i], nullptr, 10);
      if (n < 1 || n > static_cast<long>(criteria().size())) {
        std::fprintf(stderr, "criterion must be in [1, %zu]\n", criteria().size());
        return 2;
      }
      selected.push_back(static_cast<std::size_t>(n));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty()) {
    for (std::size_t n = 1; n <= criteria().size(); ++n) selected.push_back(n);
  }
  bool all = true;
  for (auto n : selected) all = run_one(n) && all;
  return all ? 0 : 1;
}
