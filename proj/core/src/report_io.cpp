#include "focklab/report_io.hpp"

#include <cstdio>

namespace focklab {

nlohmann::ordered_json report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["holds"] = r.holds;
  j["slack"] = r.slack;
  j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
  j["metadata"] = r.metadata;
  return j;
}

std::string to_json_lines(std::span<const VerificationReport> reports) {
  std::string out;
  for (const auto& r : reports) {
    out += report_to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv_summary(std::span<const VerificationReport> reports) {
  std::string out = "id,lhs,rhs,margin,holds,seed\n";
  for (const auto& r : reports) {
    out += csv_field(r.id);
    out += ',' + format_double(r.lhs);
    out += ',' + format_double(r.rhs);
    out += ',' + format_double(r.margin);
    out += r.holds ? ",true," : ",false,";
    if (r.seed) out += std::to_string(*r.seed);
    out += '\n';
  }
  return out;
}

}  // namespace focklab
