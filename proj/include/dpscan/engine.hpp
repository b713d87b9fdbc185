#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpscan/checker.hpp"
#include "dpscan/eval.hpp"
#include "dpscan/extractors.hpp"
#include "dpscan/fusion.hpp"
#include "dpscan/grouping.hpp"
#include "dpscan/report.hpp"
#include "dpscan/template_match.hpp"

namespace dpscan {

// Every tunable in one place; all fields map 1:1 onto the JSON config file
// (see README for the documented defaults).
struct EngineConfig {
  double nms_iou_threshold = 0.5;
  double nms_confidence_threshold = 0.65;
  double fusion_match_threshold = 0.5;
  TemplateMatchParams templates;
  std::string template_dir;  // empty -> compiled-in patches
  GroupingParams grouping;
  CheckerParams checker;
  double eval_iou_threshold = 0.5;
  std::string rules_file;  // empty -> built-in registry
  StageFlags stages;

  static EngineConfig from_json(const std::string& json_text, const std::string& origin);
  static EngineConfig load(const std::string& path);
};

// Immutable after construction; safe to share across analysis threads as long
// as the extractor suites used with it are shareable.
class Engine {
 public:
  explicit Engine(EngineConfig config = {});

  const EngineConfig& config() const { return config_; }
  const std::vector<RuleSpec>& rules() const { return rules_; }
  void set_rules(std::vector<RuleSpec> rules) { rules_ = std::move(rules); }
  void load_rules(const std::string& path) { rules_ = load_rules_file(path); }
  void set_stages(const StageFlags& stages) { config_.stages = stages; }

  // Full property-extraction pipeline: NMS -> fusion -> template matching ->
  // icon/status classification -> colors -> grouping. Stages disabled in the
  // config are skipped.
  Screen extract(ImageU8 image, const ExtractorSuite& suite) const;

  CheckResult check(const Screen& screen) const;

  struct Analysis {
    Screen screen;
    CheckResult result;
    FindingsReport report;
  };

  Analysis analyze(ImageU8 image, const std::string& image_name,
                   const ExtractorSuite& suite) const;

  // Loads the image plus sidecars and analyzes. elements_path is required
  // (the annotation-backed detector fails loudly without it); ocr_path may be
  // empty, in which case element texts from the sidecar stand in for OCR
  // lines.
  Analysis analyze_file(const std::string& image_path, const std::string& elements_path,
                        const std::string& ocr_path = "") const;

  // Pairs <stem>.report.json under pred_dir with <stem>.gt.json under gt_dir.
  // Missing reports count as screens with no findings.
  MetricsReport evaluate_dirs(const std::string& pred_dir, const std::string& gt_dir) const;

  // Ablation sweep over analysis inputs: input_dir holds <stem>.<png|jpg> +
  // <stem>.elements.json [+ <stem>.ocr.json]; gt_dir holds <stem>.gt.json.
  std::vector<std::pair<std::string, MetricsReport>> run_ablation_dirs(
      const std::string& input_dir, const std::string& gt_dir) const;

 private:
  EngineConfig config_;
  std::vector<RuleSpec> rules_;
  std::vector<Template> templates_;
};

// "image.png" -> sidecar path "image.elements.json" etc.
std::string sidecar_path_for(const std::string& image_path, const std::string& suffix);

}  // namespace dpscan
