#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "dpscan/model.hpp"
#include "dpscan/sidecar.hpp"

namespace dpscan {

struct Detection {
  BBox bbox;
  ElementType type = ElementType::Unknown;
  double confidence = 1.0;

  bool operator==(const Detection&) const = default;
};

using DetectorOutput = std::vector<Detection>;

// The four extraction capabilities. Implementations wrap either the
// annotation sidecars (reference implementations below) or real models
// supplied by the embedding application. `shareable()` tells the engine
// whether one instance may serve concurrent analyses.
class ElementDetector {
 public:
  virtual ~ElementDetector() = default;
  virtual DetectorOutput detect(const ImageU8& image) const = 0;
  virtual bool shareable() const { return false; }
};

class TextRecognizer {
 public:
  virtual ~TextRecognizer() = default;
  virtual std::vector<TextLine> recognize(const ImageU8& image) const = 0;
  virtual bool shareable() const { return false; }
};

class IconClassifier {
 public:
  virtual ~IconClassifier() = default;
  // Classifies the crop of `image` bounded by `box`. nullopt means the
  // classifier abstains (callers map it to IconClass::Other).
  virtual std::optional<IconClass> classify(const ImageU8& image, const BBox& box) const = 0;
  virtual bool shareable() const { return false; }
};

class StatusClassifier {
 public:
  virtual ~StatusClassifier() = default;
  virtual std::optional<WidgetStatus> classify(const ImageU8& image, const BBox& box) const = 0;
  virtual bool shareable() const { return false; }
};

struct ExtractorSuite {
  std::shared_ptr<const ElementDetector> element_detector;
  std::shared_ptr<const TextRecognizer> text_recognizer;
  std::shared_ptr<const IconClassifier> icon_classifier;
  std::shared_ptr<const StatusClassifier> status_classifier;

  bool complete() const {
    return element_detector && text_recognizer && icon_classifier && status_classifier;
  }

  // Annotation-backed suite reading from parsed sidecars. Stateless and
  // shareable. The OCR sidecar is optional; without it the recognizer
  // returns no lines.
  static ExtractorSuite from_annotations(ElementSidecar elements,
                                         std::optional<OcrSidecar> ocr = std::nullopt);
};

// Greedy same-type suppression: detections below conf_threshold are dropped;
// among same-type detections with pairwise IoU >= iou_threshold only the most
// confident survives. Ties break by smaller area, then box reading order.
// Idempotent; never increases any per-type count.
DetectorOutput non_max_suppression(const DetectorOutput& dets, double iou_threshold = 0.5,
                                   double conf_threshold = 0.65);

// Applies the icon classifier to every ImageView/ImageButton without an icon.
// Elements whose crop falls outside the image are skipped with a warning
// record on the screen.
void classify_icons(Screen& screen, const ExtractorSuite& suite);

// Applies the status classifier to Checkbox/Switch/ToggleButton elements;
// every other type is pinned to not_applicable. Abstentions become unknown.
void classify_status(Screen& screen, const ExtractorSuite& suite);

}  // namespace dpscan
