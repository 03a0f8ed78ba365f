#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "focklab/run.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::size_t> truncation;
  std::optional<std::size_t> radial_nodes;
  std::optional<std::size_t> angular_nodes;
  std::optional<std::size_t> region_order;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> symbol;
  std::optional<std::size_t> cases;
  std::optional<std::size_t> equality_cases;
  std::optional<std::size_t> threads;
  std::vector<double> w0;
  std::optional<double> r_sq_pi;
  std::vector<std::size_t> grids;
  std::vector<std::size_t> n_list;
};

focklab::RunConfig build_config(const Flags& f, const std::vector<std::string>& experiments) {
  focklab::RunConfig c;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw focklab::ConfigError("cannot open config '" + *f.config + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw focklab::ConfigError(std::string("config JSON: ") + e.what());
    }
    c = focklab::apply_config_json(c, j);
  }
  if (f.truncation) c.truncation = *f.truncation;
  if (f.radial_nodes) c.rules.radial_nodes = *f.radial_nodes;
  if (f.angular_nodes) c.rules.angular_nodes = *f.angular_nodes;
  if (f.region_order) c.rules.region_order = *f.region_order;
  if (f.seed) c.seed = *f.seed;
  if (f.out_dir) c.output_dir = *f.out_dir;
  if (f.symbol) c.symbol = focklab::load_symbol_spec(*f.symbol);
  if (f.cases) c.cases = *f.cases;
  if (f.equality_cases) c.equality_cases = *f.equality_cases;
  if (f.threads) c.threads = *f.threads;
  if (!f.w0.empty()) c.w0 = {f.w0[0], f.w0[1]};
  if (f.r_sq_pi) c.r_sq_pi = *f.r_sq_pi;
  if (!f.grids.empty()) c.grids = f.grids;
  if (!f.n_list.empty()) c.n_list = f.n_list;
  if (!experiments.empty()) c.experiments = experiments;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz operators on the Fock space: assembly, norms and concentration bounds"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  Flags f;
  app.add_option("--config", f.config, "JSON config file; flags override its keys")->check(CLI::ExistingFile);
  app.add_option("--truncation", f.truncation, "Matrix size N");
  app.add_option("--radial-nodes", f.radial_nodes, "Gauss-Laguerre nodes K");
  app.add_option("--angular-nodes", f.angular_nodes, "Angular nodes M");
  app.add_option("--region-order", f.region_order, "Gauss-Legendre order for region quadrature");
  app.add_option("--seed", f.seed, "Base seed (default 0)");
  app.add_option("--out-dir", f.out_dir, "Output directory (default $FOCKLAB_OUT_DIR or ./focklab-out)");
  app.add_option("--symbol", f.symbol, "Symbol as inline JSON or a path to a JSON file");
  app.add_option("--cases", f.cases, "Number of random cases");
  app.add_option("--equality-cases", f.equality_cases, "verify-nt: coherent-state equality cases");
  app.add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  app.add_option("--w0", f.w0, "sharpness: disc centre as RE IM")->expected(2);
  app.add_option("--R-sq-pi", f.r_sq_pi, "sharpness: disc area pi R^2");
  app.add_option("--grids", f.grids, "approximate: grid sizes m (m x m polar cells)")->delimiter(',');
  app.add_option("--n-list", f.n_list, "norm-table: truncations")->delimiter(',');

  const std::vector<std::pair<std::string, std::string>> commands{
      {"assemble", "Write the truncated Toeplitz matrix (JSON and CSV)"},
      {"norm", "Certified operator norm of the truncated matrix"},
      {"bound", "Norm against the L1/Linf bound (random symbols without --symbol)"},
      {"verify-nt", "Random concentration-inequality cases"},
      {"verify-lemma", "Random weighted-partition cases"},
      {"sharpness", "Disc symbol and coherent state: equality case"},
      {"approximate", "Simple-function approximation pipeline"},
      {"norm-table", "Norm and bound for each truncation in --n-list"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : focklab::kExitConfig;
  }

  std::vector<std::string> experiments;
  for (const auto* sub : app.get_subcommands()) experiments.push_back(sub->get_name());

  try {
    const auto config = build_config(f, experiments);
    const auto result = focklab::run(config);
    std::size_t failed = 0;
    for (const auto& r : result.reports) {
      if (r.holds) continue;
      ++failed;
      std::fprintf(stderr, "VIOLATION %s: lhs=%.17g rhs=%.17g margin=%.3e\n", r.id.c_str(), r.lhs, r.rhs, r.margin);
    }
    std::printf("%zu reports, %zu violations\n", result.reports.size(), failed);
    for (const auto& p : result.files) std::printf("wrote %s\n", p.string().c_str());
    return result.status;
  } catch (const focklab::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return focklab::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return focklab::kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
