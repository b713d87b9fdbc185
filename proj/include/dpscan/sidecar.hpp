#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpscan/model.hpp"

namespace dpscan {

// One OCR text line: tight box plus non-empty content.
struct TextLine {
  BBox bbox;
  std::string text;
};

// Parsed element sidecar:
//   {image, width, height, elements:[{bbox:[x1,y1,x2,y2], type, text?, icon?,
//    status?, confidence?}]}
struct ElementSidecar {
  struct Entry {
    BBox bbox;
    ElementType type = ElementType::Unknown;
    std::optional<std::string> text;
    std::optional<IconClass> icon;
    std::optional<WidgetStatus> status;
    double confidence = 1.0;
  };

  std::string image;
  int width = 0;
  int height = 0;
  std::vector<Entry> elements;
};

// Parsed OCR sidecar: {lines:[{bbox, text}]}
struct OcrSidecar {
  std::vector<TextLine> lines;
};

// All parsers throw InputError on a missing file and SchemaError with the
// offending record/field named on malformed content.
ElementSidecar load_element_sidecar(const std::string& path);
OcrSidecar load_ocr_sidecar(const std::string& path);

ElementSidecar parse_element_sidecar(const std::string& json_text, const std::string& origin);
OcrSidecar parse_ocr_sidecar(const std::string& json_text, const std::string& origin);

std::string serialize_element_sidecar(const ElementSidecar& sidecar);
std::string serialize_ocr_sidecar(const OcrSidecar& sidecar);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dpscan
