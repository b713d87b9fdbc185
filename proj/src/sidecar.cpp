#include "dpscan/sidecar.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dpscan/errors.hpp"
#include "dpscan/json_util.hpp"

namespace dpscan {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << content;
  if (!out) throw InputError(path + ": write failed");
}

namespace jsonutil {

json parse_document(const std::string& text, const std::string& origin) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    // Re-parse with exceptions to surface the byte offset.
    try {
      (void)json::parse(text);
    } catch (const json::parse_error& e) {
      throw SchemaError(origin + ": " + e.what());
    }
    throw SchemaError(origin + ": invalid JSON");
  }
  return doc;
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

int require_int(const json& obj, const char* key, const std::string& where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_number_integer()) throw SchemaError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_string()) throw SchemaError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

BBox require_bbox(const json& obj, const char* key, const std::string& where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_array() || v.size() != 4)
    throw SchemaError(where + "." + key + ": expected [x1,y1,x2,y2]");
  BBox box;
  int* coords[4] = {&box.x1, &box.y1, &box.x2, &box.y2};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!v[i].is_number()) throw SchemaError(where + "." + key + ": expected numeric coordinates");
    *coords[i] = static_cast<int>(v[i].get<double>());
  }
  if (box.x1 > box.x2 || box.y1 > box.y2)
    throw SchemaError(where + "." + key + ": inverted box coordinates");
  return box;
}

}  // namespace jsonutil

namespace {

using jsonutil::parse_document;
using jsonutil::require_bbox;
using jsonutil::require_field;
using jsonutil::require_int;
using jsonutil::require_string;

std::string record_name(const std::string& origin, const char* list, std::size_t i) {
  return origin + ": " + list + "[" + std::to_string(i) + "]";
}

}  // namespace

ElementSidecar parse_element_sidecar(const std::string& json_text, const std::string& origin) {
  const json doc = parse_document(json_text, origin);
  ElementSidecar out;
  out.image = require_string(doc, "image", origin);
  out.width = require_int(doc, "width", origin);
  out.height = require_int(doc, "height", origin);
  if (out.width <= 0 || out.height <= 0)
    throw SchemaError(origin + ": width/height must be positive");

  const json& elements = require_field(doc, "elements", origin);
  if (!elements.is_array()) throw SchemaError(origin + ": 'elements' must be an array");

  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string where = record_name(origin, "elements", i);
    const json& e = elements[i];
    if (!e.is_object()) throw SchemaError(where + ": expected an object");

    ElementSidecar::Entry entry;
    entry.bbox = require_bbox(e, "bbox", where);
    entry.bbox = clip(entry.bbox, out.width, out.height);
    if (entry.bbox.area() <= 0) throw SchemaError(where + ".bbox: zero area inside the screen");

    const std::string type_name = require_string(e, "type", where);
    const auto type = parse_element_type(type_name);
    if (!type) throw SchemaError(where + ".type: unknown element type '" + type_name + "'");
    entry.type = *type;

    if (auto it = e.find("text"); it != e.end() && !it->is_null()) {
      if (!it->is_string()) throw SchemaError(where + ".text: expected a string");
      entry.text = it->get<std::string>();
    }
    if (auto it = e.find("icon"); it != e.end() && !it->is_null()) {
      if (!it->is_string()) throw SchemaError(where + ".icon: expected a string");
      const auto icon = parse_icon_class(it->get<std::string>());
      if (!icon) throw SchemaError(where + ".icon: unknown icon class '" + it->get<std::string>() + "'");
      entry.icon = *icon;
    }
    if (auto it = e.find("status"); it != e.end() && !it->is_null()) {
      if (!it->is_string()) throw SchemaError(where + ".status: expected a string");
      const auto status = parse_widget_status(it->get<std::string>());
      if (!status) throw SchemaError(where + ".status: unknown status '" + it->get<std::string>() + "'");
      entry.status = *status;
    }
    if (auto it = e.find("confidence"); it != e.end() && !it->is_null()) {
      if (!it->is_number()) throw SchemaError(where + ".confidence: expected a number");
      entry.confidence = it->get<double>();
      if (entry.confidence < 0.0 || entry.confidence > 1.0)
        throw SchemaError(where + ".confidence: must be in [0,1]");
    }
    out.elements.push_back(std::move(entry));
  }
  return out;
}

OcrSidecar parse_ocr_sidecar(const std::string& json_text, const std::string& origin) {
  const json doc = parse_document(json_text, origin);
  OcrSidecar out;
  const json& lines = require_field(doc, "lines", origin);
  if (!lines.is_array()) throw SchemaError(origin + ": 'lines' must be an array");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string where = record_name(origin, "lines", i);
    const json& l = lines[i];
    if (!l.is_object()) throw SchemaError(where + ": expected an object");
    TextLine line;
    line.bbox = require_bbox(l, "bbox", where);
    if (line.bbox.area() <= 0) throw SchemaError(where + ".bbox: zero-area line box");
    line.text = require_string(l, "text", where);
    if (line.text.empty()) throw SchemaError(where + ".text: empty text line");
    out.lines.push_back(std::move(line));
  }
  return out;
}

ElementSidecar load_element_sidecar(const std::string& path) {
  return parse_element_sidecar(read_text_file(path), path);
}

OcrSidecar load_ocr_sidecar(const std::string& path) {
  return parse_ocr_sidecar(read_text_file(path), path);
}

std::string serialize_element_sidecar(const ElementSidecar& sidecar) {
  ordered_json doc;
  doc["image"] = sidecar.image;
  doc["width"] = sidecar.width;
  doc["height"] = sidecar.height;
  doc["elements"] = ordered_json::array();
  for (const auto& e : sidecar.elements) {
    ordered_json je;
    je["bbox"] = {e.bbox.x1, e.bbox.y1, e.bbox.x2, e.bbox.y2};
    je["type"] = to_string(e.type);
    if (e.text) je["text"] = *e.text;
    if (e.icon) je["icon"] = to_string(*e.icon);
    if (e.status) je["status"] = to_string(*e.status);
    je["confidence"] = e.confidence;
    doc["elements"].push_back(std::move(je));
  }
  return doc.dump(2) + "\n";
}

std::string serialize_ocr_sidecar(const OcrSidecar& sidecar) {
  ordered_json doc;
  doc["lines"] = ordered_json::array();
  for (const auto& l : sidecar.lines) {
    ordered_json jl;
    jl["bbox"] = {l.bbox.x1, l.bbox.y1, l.bbox.x2, l.bbox.y2};
    jl["text"] = l.text;
    doc["lines"].push_back(std::move(jl));
  }
  return doc.dump(2) + "\n";
}

}  // namespace dpscan
