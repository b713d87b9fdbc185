#include "dpscan/extractors.hpp"

#include <algorithm>
#include <tuple>

#include "dpscan/errors.hpp"

namespace dpscan {

namespace {

class AnnotationElementDetector : public ElementDetector {
 public:
  explicit AnnotationElementDetector(std::vector<ElementSidecar::Entry> entries)
      : entries_(std::move(entries)) {}

  DetectorOutput detect(const ImageU8&) const override {
    DetectorOutput out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back({e.bbox, e.type, e.confidence});
    return out;
  }
  bool shareable() const override { return true; }

 private:
  std::vector<ElementSidecar::Entry> entries_;
};

class AnnotationTextRecognizer : public TextRecognizer {
 public:
  explicit AnnotationTextRecognizer(std::vector<TextLine> lines) : lines_(std::move(lines)) {}

  std::vector<TextLine> recognize(const ImageU8&) const override { return lines_; }
  bool shareable() const override { return true; }

 private:
  std::vector<TextLine> lines_;
};

// Looks an element up by its exact box. Detector boxes survive the pipeline
// unchanged for icon/status carriers (only textual boxes get refined), so an
// exact match identifies the annotated record.
const ElementSidecar::Entry* find_entry(const std::vector<ElementSidecar::Entry>& entries,
                                        const BBox& box) {
  for (const auto& e : entries) {
    if (e.bbox == box) return &e;
  }
  return nullptr;
}

class AnnotationIconClassifier : public IconClassifier {
 public:
  explicit AnnotationIconClassifier(std::vector<ElementSidecar::Entry> entries)
      : entries_(std::move(entries)) {}

  std::optional<IconClass> classify(const ImageU8&, const BBox& box) const override {
    const auto* entry = find_entry(entries_, box);
    if (!entry) {
      throw SchemaError("annotation icon classifier: no sidecar entry for crop [" +
                        std::to_string(box.x1) + "," + std::to_string(box.y1) + "," +
                        std::to_string(box.x2) + "," + std::to_string(box.y2) + "]");
    }
    return entry->icon;
  }
  bool shareable() const override { return true; }

 private:
  std::vector<ElementSidecar::Entry> entries_;
};

class AnnotationStatusClassifier : public StatusClassifier {
 public:
  explicit AnnotationStatusClassifier(std::vector<ElementSidecar::Entry> entries)
      : entries_(std::move(entries)) {}

  std::optional<WidgetStatus> classify(const ImageU8&, const BBox& box) const override {
    const auto* entry = find_entry(entries_, box);
    if (!entry) {
      throw SchemaError("annotation status classifier: no sidecar entry for crop [" +
                        std::to_string(box.x1) + "," + std::to_string(box.y1) + "," +
                        std::to_string(box.x2) + "," + std::to_string(box.y2) + "]");
    }
    return entry->status;
  }
  bool shareable() const override { return true; }

 private:
  std::vector<ElementSidecar::Entry> entries_;
};

}  // namespace

ExtractorSuite ExtractorSuite::from_annotations(ElementSidecar elements,
                                                std::optional<OcrSidecar> ocr) {
  ExtractorSuite suite;
  suite.element_detector = std::make_shared<AnnotationElementDetector>(elements.elements);
  suite.text_recognizer = std::make_shared<AnnotationTextRecognizer>(
      ocr ? std::move(ocr->lines) : std::vector<TextLine>{});
  suite.icon_classifier = std::make_shared<AnnotationIconClassifier>(elements.elements);
  suite.status_classifier = std::make_shared<AnnotationStatusClassifier>(std::move(elements.elements));
  return suite;
}

DetectorOutput non_max_suppression(const DetectorOutput& dets, double iou_threshold,
                                   double conf_threshold) {
  DetectorOutput sorted;
  sorted.reserve(dets.size());
  for (const auto& d : dets) {
    if (d.confidence >= conf_threshold) sorted.push_back(d);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const Detection& a, const Detection& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.bbox.area() != b.bbox.area()) return a.bbox.area() < b.bbox.area();
    return bbox_less(a.bbox, b.bbox);
  });

  DetectorOutput kept;
  for (const auto& cand : sorted) {
    bool suppressed = false;
    for (const auto& k : kept) {
      if (k.type == cand.type && iou(k.bbox, cand.bbox) >= iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(cand);
  }
  return kept;
}

void classify_icons(Screen& screen, const ExtractorSuite& suite) {
  for (std::size_t i = 0; i < screen.elements.size(); ++i) {
    UIElement& el = screen.elements[i];
    if (!is_icon_carrier(el.etype) || el.icon.has_value()) continue;
    const BBox c = clip(el.bbox, screen.width, screen.height);
    if (c != el.bbox || c.area() <= 0) {
      screen.warnings.push_back("classify_icons: element " + std::to_string(i) +
                                " crop outside image bounds, skipped");
      continue;
    }
    const auto icon = suite.icon_classifier->classify(screen.image, el.bbox);
    el.icon = icon.value_or(IconClass::Other);
  }
}

void classify_status(Screen& screen, const ExtractorSuite& suite) {
  for (std::size_t i = 0; i < screen.elements.size(); ++i) {
    UIElement& el = screen.elements[i];
    if (!is_togglable(el.etype)) {
      el.status = WidgetStatus::NotApplicable;
      continue;
    }
    const BBox c = clip(el.bbox, screen.width, screen.height);
    if (c != el.bbox || c.area() <= 0) {
      screen.warnings.push_back("classify_status: element " + std::to_string(i) +
                                " crop outside image bounds, skipped");
      el.status = WidgetStatus::Unknown;
      continue;
    }
    const auto status = suite.status_classifier->classify(screen.image, el.bbox);
    el.status = status.value_or(WidgetStatus::Unknown);
  }
}

}  // namespace dpscan
