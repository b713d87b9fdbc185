#pragma once

#include <string>

#include <json.hpp>

#include "dpscan/geometry.hpp"

namespace dpscan::jsonutil {

// Shared strict-parsing helpers. All throw SchemaError with `where`
// identifying the offending file/record/field.
nlohmann::json parse_document(const std::string& text, const std::string& origin);
const nlohmann::json& require_field(const nlohmann::json& obj, const char* key,
                                    const std::string& where);
int require_int(const nlohmann::json& obj, const char* key, const std::string& where);
std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where);
BBox require_bbox(const nlohmann::json& obj, const char* key, const std::string& where);

}  // namespace dpscan::jsonutil
