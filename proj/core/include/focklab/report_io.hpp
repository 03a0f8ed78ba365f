#pragma once

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "focklab/bounds.hpp"

namespace focklab {

/// {"id", "lhs", "rhs", "margin", "holds", "slack", "seed", "metadata"}; seed is null when absent.
nlohmann::ordered_json report_to_json(const VerificationReport& report);

/// One compact JSON object per line.
std::string to_json_lines(std::span<const VerificationReport> reports);

/// Header "id,lhs,rhs,margin,holds,seed"; numbers as %.17g; fields quoted per RFC 4180 when needed.
std::string to_csv_summary(std::span<const VerificationReport> reports);

/// RFC 4180 quoting: wraps in double quotes (doubling inner quotes) when the field
/// contains a comma, quote, CR or LF.
std::string csv_field(const std::string& field);

/// %.17g
std::string format_double(double v);

}  // namespace focklab
