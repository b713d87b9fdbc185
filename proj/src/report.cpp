#include "dpscan/report.hpp"

#include <json.hpp>

#include "dpscan/errors.hpp"
#include "dpscan/json_util.hpp"
#include "dpscan/sidecar.hpp"

namespace dpscan {

using nlohmann::ordered_json;

std::string serialize_findings_report(const FindingsReport& report) {
  ordered_json doc;
  doc["image"] = report.image;
  doc["findings"] = ordered_json::array();
  for (const Finding& f : report.findings) {
    ordered_json jf;
    jf["dp_type"] = to_string(f.dp_type);
    jf["strategy"] = to_string(strategy_of(f.dp_type));
    jf["tier"] = to_string(f.tier);
    jf["container"] = {f.container.x1, f.container.y1, f.container.x2, f.container.y2};
    jf["evidence"] = ordered_json::array();
    for (const Evidence& ev : f.evidence) {
      ordered_json je;
      je["element"] = ev.element;
      je["role"] = ev.role;
      jf["evidence"].push_back(std::move(je));
    }
    jf["explanation"] = f.explanation;
    doc["findings"].push_back(std::move(jf));
  }
  return doc.dump(2) + "\n";
}

FindingsReport parse_findings_report(const std::string& json_text, const std::string& origin) {
  const nlohmann::json doc = jsonutil::parse_document(json_text, origin);
  FindingsReport out;
  out.image = jsonutil::require_string(doc, "image", origin);
  const auto& arr = jsonutil::require_field(doc, "findings", origin);
  if (!arr.is_array()) throw SchemaError(origin + ": 'findings' must be an array");

  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = origin + ": findings[" + std::to_string(i) + "]";
    const auto& jf = arr[i];
    if (!jf.is_object()) throw SchemaError(where + ": expected an object");

    Finding f;
    const std::string type_name = jsonutil::require_string(jf, "dp_type", where);
    const auto type = parse_dp_type(type_name);
    if (!type) throw SchemaError(where + ".dp_type: unknown type '" + type_name + "'");
    f.dp_type = *type;

    const std::string tier = jsonutil::require_string(jf, "tier", where);
    if (tier != std::string(to_string(tier_of(f.dp_type))))
      throw SchemaError(where + ".tier: '" + tier + "' does not match type " + type_name);
    f.tier = tier_of(f.dp_type);

    const std::string strategy = jsonutil::require_string(jf, "strategy", where);
    if (strategy != std::string(to_string(strategy_of(f.dp_type))))
      throw SchemaError(where + ".strategy: '" + strategy + "' does not match type " + type_name);

    f.container = jsonutil::require_bbox(jf, "container", where);

    const auto& evidence = jsonutil::require_field(jf, "evidence", where);
    if (!evidence.is_array() || evidence.empty())
      throw SchemaError(where + ".evidence: expected a non-empty array");
    for (std::size_t j = 0; j < evidence.size(); ++j) {
      const std::string ewhere = where + ".evidence[" + std::to_string(j) + "]";
      const auto& je = evidence[j];
      if (!je.is_object()) throw SchemaError(ewhere + ": expected an object");
      Evidence ev;
      ev.element = jsonutil::require_int(je, "element", ewhere);
      ev.role = jsonutil::require_string(je, "role", ewhere);
      f.evidence.push_back(std::move(ev));
    }
    f.explanation = jsonutil::require_string(jf, "explanation", where);
    out.findings.push_back(std::move(f));
  }
  return out;
}

FindingsReport load_findings_report(const std::string& path) {
  return parse_findings_report(read_text_file(path), path);
}

}  // namespace dpscan
