#pragma once

#include <string>
#include <vector>

#include "dpscan/rules.hpp"

namespace dpscan {

// Findings report for one screen. Serialization is canonical: fixed key
// order, integer coordinates, trailing newline; parse/serialize round-trips
// byte-identically.
struct FindingsReport {
  std::string image;
  std::vector<Finding> findings;
};

std::string serialize_findings_report(const FindingsReport& report);
FindingsReport parse_findings_report(const std::string& json_text, const std::string& origin);
FindingsReport load_findings_report(const std::string& path);

}  // namespace dpscan
