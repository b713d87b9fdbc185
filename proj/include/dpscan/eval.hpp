#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpscan/checker.hpp"
#include "dpscan/rules.hpp"

namespace dpscan {

struct GroundTruthElement {
  BBox bbox;
  ElementType type = ElementType::Unknown;
};

// One annotated dark-pattern instance: the relevant elements plus a container
// box spanning the whole instance.
struct GroundTruthInstance {
  DPType dp_type = DPType::FaPayAvoidAds;
  BBox container;
  std::vector<GroundTruthElement> elements;
};

struct GroundTruthFile {
  std::string image;
  std::vector<GroundTruthInstance> instances;
};

GroundTruthFile load_ground_truth(const std::string& path);
GroundTruthFile parse_ground_truth(const std::string& json_text, const std::string& origin);
std::string serialize_ground_truth(const GroundTruthFile& gt);

// Per-type tallies; fp = n_det - tp, fn = n_gt - tp.
struct EvalCounts {
  struct Row {
    int n_gt = 0;
    int n_det = 0;
    int tp = 0;

    int fp() const { return n_det - tp; }
    int fn() const { return n_gt - tp; }
  };

  std::map<DPType, Row> per_type;

  void add(const EvalCounts& other);
};

// Greedy one-to-one matching per type: findings in canonical order claim the
// unmatched ground-truth instance of the same type with the highest container
// IoU >= iou_threshold.
EvalCounts match_findings(const std::vector<Finding>& findings,
                          const std::vector<GroundTruthInstance>& gts, double iou_threshold = 0.5);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // 0/0 is defined as 0 throughout.
  static Prf from_counts(double tp, double fp, double fn);
};

struct MetricsReport {
  struct TypeRow {
    DPType type = DPType::FaPayAvoidAds;
    EvalCounts::Row counts;
    Prf prf;
  };
  struct StrategyRow {
    Strategy strategy = Strategy::Nagging;
    EvalCounts::Row counts;
    Prf prf;
  };

  std::vector<TypeRow> per_type;
  std::vector<StrategyRow> per_strategy;
  Prf macro;  // unweighted mean over strategies with any data
  Prf micro;  // global-count P/R/F1
  std::optional<double> binary_accuracy;
};

MetricsReport metrics(const EvalCounts& counts);

// Fraction of screens whose malicious/benign verdict is correct. A screen is
// predicted malicious iff it has at least one finding.
struct ScreenVerdict {
  bool gt_malicious = false;
  bool predicted_malicious = false;
};
double binary_accuracy(const std::vector<ScreenVerdict>& per_screen_results);

// One fully extracted screen paired with its ground truth.
struct ScreenCase {
  Screen screen;
  std::vector<GroundTruthInstance> gts;
};

struct AblationConfig {
  std::string name;
  StageFlags stages;
};

// The cumulative configurations, base (text-only) first, full stack last.
std::vector<AblationConfig> ablation_ladder();

// Re-checks every case under each ladder configuration (intersected with
// `limit`) and reports the metrics per configuration. Screens must have run
// the full extraction pipeline; ablation masks property layers at check time.
std::vector<std::pair<std::string, MetricsReport>> run_ablation(
    const std::vector<ScreenCase>& cases, const std::vector<RuleSpec>& rules,
    const CheckerParams& params = {}, double iou_threshold = 0.5, const StageFlags& limit = {});

// Canonical JSON (fixed key order, floats rounded to 4 decimals) and a
// console table with per-type, per-strategy and aggregate rows.
std::string metrics_report_json(const MetricsReport& report);
std::string metrics_report_table(const MetricsReport& report);

}  // namespace dpscan
