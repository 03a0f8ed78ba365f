#include "focklab/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "focklab/report_io.hpp"
#include "focklab/sampling.hpp"
#include "focklab/special.hpp"
#include "focklab/toeplitz.hpp"

namespace focklab {
namespace {

constexpr std::size_t kDefaultCases = 200;
constexpr std::size_t kDefaultSymbolCases = 50;
constexpr std::size_t kEqualityTruncation = 40;
constexpr std::size_t kMaxAngularNodes = 4096;

const std::vector<std::string>& known_experiments() {
  static const std::vector<std::string> names{"assemble",     "norm",      "bound",       "verify-nt",
                                              "verify-lemma", "sharpness", "approximate", "norm-table"};
  return names;
}

nlohmann::ordered_json ordered(const nlohmann::json& j) { return nlohmann::ordered_json::parse(j.dump()); }

template <class T>
T get_as(const nlohmann::json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& text, RunResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  result.files.push_back(path);
}

struct NormRow {
  std::size_t truncation;
  double norm;
  double bound;
};

std::vector<NormRow> norm_rows(const Symbol& symbol, const std::vector<std::size_t>& n_list, const Rules& rules) {
  const double bound = galbis_bound(l1_norm(symbol), linf_norm(symbol));
  std::vector<NormRow> rows;
  for (std::size_t n : n_list) {
    rows.push_back({n, operator_norm(assemble(symbol, n, rules)).value, bound});
  }
  return rows;
}

std::string norm_table_csv(const std::vector<NormRow>& rows) {
  std::string out = "N,norm,bound,margin\n";
  for (const auto& row : rows) {
    out += std::to_string(row.truncation) + ',' + format_double(row.norm) + ',' + format_double(row.bound) + ',' +
           format_double(row.bound - row.norm) + '\n';
  }
  return out;
}

Symbol require_symbol(const RunConfig& c, const std::string& experiment) {
  if (!c.symbol) throw ConfigError(experiment + " needs a symbol");
  try {
    return symbol_from_json(*c.symbol);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid symbol: ") + e.what());
  }
}

void stamp(VerificationReport& r, std::string id, std::uint64_t seed, std::size_t index) {
  r.id = std::move(id);
  r.seed = seed;
  r.metadata["case"] = index;
}

std::vector<VerificationReport> run_verify_nt(const RunConfig& c, const Rules& rules) {
  const std::size_t cases = c.cases.value_or(kDefaultCases);
  auto reports = parallel_map(
      cases + c.equality_cases,
      [&](std::size_t i) {
        auto rng = job_rng(c.seed, i);
        if (i < cases) {
          const auto f = random_unit_function(rng);
          const auto region = random_region(rng);
          auto r = verify_nt(f, region, rules);
          stamp(r, "verify-nt/" + std::to_string(i), c.seed, i);
          r.metadata["region"] = ordered(nlohmann::json(region));
          return r;
        }
        const double rho = 1.5 * std::sqrt(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
        const double arg = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
        const double radius = std::uniform_real_distribution<double>(0.2, 1.2)(rng);
        const ComplexPoint w0 = std::polar(rho, arg);
        const auto cs = coherent(w0, kEqualityTruncation);
        auto r = verify_nt(cs.function, Region::disc(w0, radius), rules);
        stamp(r, "verify-nt/equality/" + std::to_string(i - cases), c.seed, i);
        r.metadata["w0"] = {w0.real(), w0.imag()};
        r.metadata["radius"] = radius;
        r.metadata["coherent_tail"] = cs.tail_mass;
        return r;
      },
      c.threads);
  return reports;
}

std::vector<VerificationReport> run_verify_lemma(const RunConfig& c, const Rules& rules) {
  return parallel_map(
      c.cases.value_or(kDefaultCases),
      [&](std::size_t i) {
        auto rng = job_rng(c.seed, i);
        const auto f = random_unit_function(rng);
        const auto partition = random_partition(rng);
        auto r = verify_lemma(f, partition, rules);
        stamp(r, "verify-lemma/" + std::to_string(i), c.seed, i);
        nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
        for (const auto& p : partition.pieces()) {
          auto entry = ordered(nlohmann::json(p.region));
          entry["epsilon"] = p.epsilon;
          pieces.push_back(std::move(entry));
        }
        r.metadata["partition"] = std::move(pieces);
        return r;
      },
      c.threads);
}

std::vector<VerificationReport> run_bound(const RunConfig& c, const Rules& rules) {
  if (c.symbol) {
    auto r = verify_main_theorem(require_symbol(c, "bound"), c.truncation, rules);
    r.id = "bound";
    return {r};
  }
  return parallel_map(
      c.cases.value_or(kDefaultSymbolCases),
      [&](std::size_t i) {
        auto rng = job_rng(c.seed, i);
        const auto symbol = random_simple_symbol(rng);
        auto r = verify_main_theorem(Symbol(symbol), c.truncation, rules);
        stamp(r, "bound/" + std::to_string(i), c.seed, i);
        r.metadata["symbol"] = ordered(nlohmann::json(symbol));
        return r;
      },
      c.threads);
}

}  // namespace

std::filesystem::path default_output_dir() {
  const char* env = std::getenv(kOutDirEnv);
  if (env && *env) return env;
  return "focklab-out";
}

RunConfig apply_config_json(RunConfig c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    const char* k = key.c_str();
    if (key == "truncation") {
      c.truncation = get_as<std::size_t>(v, k);
    } else if (key == "radial_nodes") {
      c.rules.radial_nodes = get_as<std::size_t>(v, k);
    } else if (key == "angular_nodes") {
      c.rules.angular_nodes = get_as<std::size_t>(v, k);
    } else if (key == "region_order") {
      c.rules.region_order = get_as<std::size_t>(v, k);
    } else if (key == "seed") {
      c.seed = get_as<std::uint64_t>(v, k);
    } else if (key == "output_dir") {
      c.output_dir = get_as<std::string>(v, k);
    } else if (key == "experiments") {
      c.experiments = get_as<std::vector<std::string>>(v, k);
    } else if (key == "symbol") {
      c.symbol = v.is_string() ? load_symbol_spec(v.get<std::string>()) : v;
    } else if (key == "cases") {
      c.cases = get_as<std::size_t>(v, k);
    } else if (key == "equality_cases") {
      c.equality_cases = get_as<std::size_t>(v, k);
    } else if (key == "threads") {
      c.threads = get_as<std::size_t>(v, k);
    } else if (key == "w0") {
      const auto p = get_as<std::vector<double>>(v, k);
      if (p.size() != 2) throw ConfigError("config key 'w0' must be [re, im]");
      c.w0 = {p[0], p[1]};
    } else if (key == "R_sq_pi") {
      c.r_sq_pi = get_as<double>(v, k);
    } else if (key == "grids") {
      c.grids = get_as<std::vector<std::size_t>>(v, k);
    } else if (key == "n_list") {
      c.n_list = get_as<std::vector<std::size_t>>(v, k);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

nlohmann::json load_symbol_spec(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '{') return nlohmann::json::parse(text);
    std::ifstream in(text);
    if (!in) throw ConfigError("cannot open symbol file '" + text + "'");
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("symbol JSON: ") + e.what());
  }
}

void validate(const RunConfig& c) {
  const auto& r = c.rules;
  if (r.radial_nodes < 1 || r.radial_nodes > kMaxLaguerreNodes) {
    throw ConfigError("radial_nodes must be in [1, " + std::to_string(kMaxLaguerreNodes) + "]");
  }
  if (r.angular_nodes < 1 || r.angular_nodes > kMaxAngularNodes) {
    throw ConfigError("angular_nodes must be in [1, " + std::to_string(kMaxAngularNodes) + "]");
  }
  if (r.region_order < 1 || r.region_order > kMaxLegendreNodes) {
    throw ConfigError("region_order must be in [1, " + std::to_string(kMaxLegendreNodes) + "]");
  }
  std::size_t max_n = c.truncation;
  for (std::size_t n : c.n_list) max_n = std::max(max_n, n);
  if (c.truncation == 0 || std::find(c.n_list.begin(), c.n_list.end(), 0) != c.n_list.end()) {
    throw ConfigError("truncation must be >= 1");
  }
  if (2 * (max_n - 1) > 2 * r.radial_nodes - 1) {
    throw ConfigError("truncation " + std::to_string(max_n) + " exceeds what " + std::to_string(r.radial_nodes) +
                      " radial nodes resolve");
  }
  if (!(c.r_sq_pi > 0.0) || !std::isfinite(c.r_sq_pi)) throw ConfigError("R_sq_pi must be finite and > 0");
  if (!std::isfinite(c.w0.real()) || !std::isfinite(c.w0.imag())) throw ConfigError("w0 must be finite");
  if (c.grids.empty() || std::find(c.grids.begin(), c.grids.end(), 0) != c.grids.end()) {
    throw ConfigError("grids must be non-empty and positive");
  }
  if (c.experiments.empty()) throw ConfigError("no experiment selected");
  for (const auto& e : c.experiments) {
    const auto& names = known_experiments();
    if (std::find(names.begin(), names.end(), e) == names.end()) throw ConfigError("unknown experiment '" + e + "'");
  }
  if (c.symbol) require_symbol(c, "symbol");
}

std::string emit_norm_table(const Symbol& symbol, const std::vector<std::size_t>& n_list, const Rules& rules) {
  return norm_table_csv(norm_rows(symbol, n_list, rules));
}

RunResult run(const RunConfig& config) {
  validate(config);
  RunConfig c = config;
  if (c.output_dir.empty()) c.output_dir = default_output_dir();
  std::filesystem::create_directories(c.output_dir);
  const Rules rules(c.rules);
  const auto dir = c.output_dir;

  RunResult result;
  for (const auto& name : c.experiments) {
    std::vector<VerificationReport> reports;
    if (name == "assemble") {
      const auto m = assemble(require_symbol(c, name), c.truncation, rules);
      write_file(dir / "matrix.json", nlohmann::json(m).dump() + '\n', result);
      write_file(dir / "matrix_real.csv", real_part_csv(m), result);
      write_file(dir / "matrix_imag.csv", imag_part_csv(m), result);
      continue;
    }
    if (name == "norm") {
      const auto n = operator_norm(assemble(require_symbol(c, name), c.truncation, rules));
      nlohmann::ordered_json j;
      j["dimension"] = c.truncation;
      j["norm"] = n.value;
      j["power_value"] = n.power_value;
      j["jacobi_value"] = n.jacobi_value;
      j["top_eigenvalue"] = n.top_eigenvalue;
      j["power_iterations"] = n.iterations;
      j["power_converged"] = n.power_converged;
      j["certified"] = n.certified;
      write_file(dir / "norm.json", j.dump() + '\n', result);
      continue;
    }
    if (name == "bound") {
      reports = run_bound(c, rules);
    } else if (name == "verify-nt") {
      reports = run_verify_nt(c, rules);
    } else if (name == "verify-lemma") {
      reports = run_verify_lemma(c, rules);
    } else if (name == "sharpness") {
      const double radius = std::sqrt(c.r_sq_pi / kPi);
      reports = sharpness_experiment(c.w0, radius, c.truncation, rules).reports;
    } else if (name == "approximate") {
      const Symbol symbol = c.symbol ? require_symbol(c, name) : Symbol(RadialSymbol::gaussian());
      reports = approximation_experiment(symbol, c.grids, c.truncation, rules).reports;
    } else if (name == "norm-table") {
      const auto rows = norm_rows(require_symbol(c, name), c.n_list, rules);
      for (const auto& row : rows) {
        auto meta = rules_metadata(rules);
        meta["truncation"] = row.truncation;
        reports.push_back(
            make_report("norm-table/N=" + std::to_string(row.truncation), row.norm, row.bound, kNormSlack, meta));
      }
      write_file(dir / "norm_table.csv", norm_table_csv(rows), result);
    }
    write_file(dir / (name + ".jsonl"), to_json_lines(reports), result);
    write_file(dir / (name + ".csv"), to_csv_summary(reports), result);
    for (auto& r : reports) {
      if (!r.holds) result.status = kExitViolation;
      result.reports.push_back(std::move(r));
    }
  }
  return result;
}

}  // namespace focklab
