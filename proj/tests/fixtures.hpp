#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpscan/engine.hpp"
#include "dpscan/eval.hpp"

namespace dpscan::testfix {

// One hand-built screen: synthetic raster + annotation sidecars + the
// expected findings frozen as ground truth. `unlock_stage` is the index of
// the first ablation-ladder configuration at which the instance is
// detectable (0 = text only).
struct ExpectedInstance {
  DPType dp_type;
  BBox container;
  int unlock_stage = 0;
};

struct Fixture {
  std::string name;
  ImageU8 image;
  ElementSidecar elements;
  std::optional<OcrSidecar> ocr;
  std::vector<ExpectedInstance> expected;

  GroundTruthFile ground_truth() const;
  ExtractorSuite suite() const;
};

// The rule corpus: at least two screens per supported dark pattern type.
std::vector<Fixture> malicious_fixtures();

// Near-miss screens that must produce zero findings.
std::vector<Fixture> benign_fixtures();

// Materializes <name>.png, <name>.elements.json, optional <name>.ocr.json
// into `input_dir` and <name>.gt.json into `gt_dir` (may equal input_dir).
void write_fixture(const Fixture& fx, const std::string& input_dir, const std::string& gt_dir);

}  // namespace dpscan::testfix
