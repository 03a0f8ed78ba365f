#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "focklab/bounds.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/symbols.hpp"

namespace focklab {

/// Raised for malformed or out-of-range configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "FOCKLAB_OUT_DIR";

struct RunConfig {
  std::size_t truncation = kDefaultTruncation;
  Rules::Config rules;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  /// assemble, norm, bound, verify-nt, verify-lemma, sharpness, approximate, norm-table
  std::vector<std::string> experiments;
  /// Symbol JSON (see symbol_from_json). Required by assemble and norm.
  std::optional<nlohmann::json> symbol;

  /// Random cases for verify-nt / verify-lemma (default 200) and bound without a symbol (default 50).
  std::optional<std::size_t> cases;
  /// Extra verify-nt cases: coherent state on a disc around its own centre.
  std::size_t equality_cases = 0;
  /// Workers for independent jobs; 0 = hardware concurrency.
  std::size_t threads = 0;

  ComplexPoint w0{0.0, 0.0};
  /// pi R^2 for sharpness.
  double r_sq_pi = 1.0;
  std::vector<std::size_t> grids{8, 16, 32, 64};
  std::vector<std::size_t> n_list{5, 10, 20, 40};
};

/// $FOCKLAB_OUT_DIR when set and non-empty, else "focklab-out".
std::filesystem::path default_output_dir();

/// Applies the keys of a JSON config on top of `base`. Unknown keys and wrong types raise ConfigError.
RunConfig apply_config_json(RunConfig base, const nlohmann::json& j);

/// Inline JSON when the text starts with '{', otherwise a path to a JSON file.
nlohmann::json load_symbol_spec(const std::string& inline_or_path);

/// Throws ConfigError when an order, truncation or experiment parameter is out of range.
void validate(const RunConfig& config);

struct RunResult {
  int status = kExitOk;
  std::vector<VerificationReport> reports;
  std::vector<std::filesystem::path> files;
};

/// Validates, runs the selected experiments in order and writes their artifacts into
/// output_dir. Status 1 when any report fails; reports are written regardless.
RunResult run(const RunConfig& config);

/// CSV "N,norm,bound,margin" with one row per truncation.
std::string emit_norm_table(const Symbol& symbol, const std::vector<std::size_t>& n_list, const Rules& rules);

}  // namespace focklab
