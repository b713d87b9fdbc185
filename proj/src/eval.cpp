#include "dpscan/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "dpscan/errors.hpp"
#include "dpscan/json_util.hpp"
#include "dpscan/sidecar.hpp"

namespace dpscan {

using nlohmann::ordered_json;

GroundTruthFile parse_ground_truth(const std::string& json_text, const std::string& origin) {
  const nlohmann::json doc = jsonutil::parse_document(json_text, origin);
  GroundTruthFile out;
  out.image = jsonutil::require_string(doc, "image", origin);
  const auto& arr = jsonutil::require_field(doc, "instances", origin);
  if (!arr.is_array()) throw SchemaError(origin + ": 'instances' must be an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = origin + ": instances[" + std::to_string(i) + "]";
    const auto& inst = arr[i];
    if (!inst.is_object()) throw SchemaError(where + ": expected an object");
    GroundTruthInstance g;
    const std::string type_name = jsonutil::require_string(inst, "dp_type", where);
    const auto type = parse_dp_type(type_name);
    if (!type) throw SchemaError(where + ".dp_type: unknown type '" + type_name + "'");
    g.dp_type = *type;
    g.container = jsonutil::require_bbox(inst, "container", where);
    if (auto it = inst.find("elements"); it != inst.end() && !it->is_null()) {
      if (!it->is_array()) throw SchemaError(where + ".elements: expected an array");
      for (std::size_t j = 0; j < it->size(); ++j) {
        const std::string ewhere = where + ".elements[" + std::to_string(j) + "]";
        const auto& el = (*it)[j];
        if (!el.is_object()) throw SchemaError(ewhere + ": expected an object");
        GroundTruthElement ge;
        ge.bbox = jsonutil::require_bbox(el, "bbox", ewhere);
        const std::string etype = jsonutil::require_string(el, "type", ewhere);
        const auto parsed = parse_element_type(etype);
        if (!parsed) throw SchemaError(ewhere + ".type: unknown element type '" + etype + "'");
        ge.type = *parsed;
        g.elements.push_back(ge);
      }
    }
    out.instances.push_back(std::move(g));
  }
  return out;
}

GroundTruthFile load_ground_truth(const std::string& path) {
  return parse_ground_truth(read_text_file(path), path);
}

std::string serialize_ground_truth(const GroundTruthFile& gt) {
  ordered_json doc;
  doc["image"] = gt.image;
  doc["instances"] = ordered_json::array();
  for (const auto& inst : gt.instances) {
    ordered_json ji;
    ji["dp_type"] = to_string(inst.dp_type);
    ji["container"] = {inst.container.x1, inst.container.y1, inst.container.x2, inst.container.y2};
    ji["elements"] = ordered_json::array();
    for (const auto& el : inst.elements) {
      ordered_json je;
      je["bbox"] = {el.bbox.x1, el.bbox.y1, el.bbox.x2, el.bbox.y2};
      je["type"] = to_string(el.type);
      ji["elements"].push_back(std::move(je));
    }
    doc["instances"].push_back(std::move(ji));
  }
  return doc.dump(2) + "\n";
}

void EvalCounts::add(const EvalCounts& other) {
  for (const auto& [type, row] : other.per_type) {
    Row& mine = per_type[type];
    mine.n_gt += row.n_gt;
    mine.n_det += row.n_det;
    mine.tp += row.tp;
  }
}

EvalCounts match_findings(const std::vector<Finding>& findings,
                          const std::vector<GroundTruthInstance>& gts, double iou_threshold) {
  EvalCounts counts;
  for (const auto& gt : gts) counts.per_type[gt.dp_type].n_gt += 1;
  for (const auto& f : findings) counts.per_type[f.dp_type].n_det += 1;

  std::vector<std::size_t> order(findings.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Finding& fa = findings[a];
    const Finding& fb = findings[b];
    if (strategy_of(fa.dp_type) != strategy_of(fb.dp_type))
      return strategy_of(fa.dp_type) < strategy_of(fb.dp_type);
    if (fa.dp_type != fb.dp_type) return fa.dp_type < fb.dp_type;
    return bbox_less(fa.container, fb.container);
  });

  std::vector<bool> gt_matched(gts.size(), false);
  for (const std::size_t fi : order) {
    const Finding& f = findings[fi];
    int best = -1;
    double best_iou = 0.0;
    for (std::size_t gi = 0; gi < gts.size(); ++gi) {
      if (gt_matched[gi] || gts[gi].dp_type != f.dp_type) continue;
      const double v = iou(f.container, gts[gi].container);
      if (v < iou_threshold) continue;
      if (best < 0 || v > best_iou) {
        best = static_cast<int>(gi);
        best_iou = v;
      }
    }
    if (best >= 0) {
      gt_matched[best] = true;
      counts.per_type[f.dp_type].tp += 1;
    }
  }
  return counts;
}

Prf Prf::from_counts(double tp, double fp, double fn) {
  Prf out;
  out.precision = (tp + fp) > 0.0 ? tp / (tp + fp) : 0.0;
  out.recall = (tp + fn) > 0.0 ? tp / (tp + fn) : 0.0;
  out.f1 = (out.precision + out.recall) > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

MetricsReport metrics(const EvalCounts& counts) {
  MetricsReport report;

  std::map<Strategy, EvalCounts::Row> strategy_rows;
  EvalCounts::Row global;
  for (const auto& [type, row] : counts.per_type) {
    MetricsReport::TypeRow tr;
    tr.type = type;
    tr.counts = row;
    tr.prf = Prf::from_counts(row.tp, row.fp(), row.fn());
    report.per_type.push_back(tr);

    EvalCounts::Row& sr = strategy_rows[strategy_of(type)];
    sr.n_gt += row.n_gt;
    sr.n_det += row.n_det;
    sr.tp += row.tp;
    global.n_gt += row.n_gt;
    global.n_det += row.n_det;
    global.tp += row.tp;
  }
  std::sort(report.per_type.begin(), report.per_type.end(),
            [](const auto& a, const auto& b) { return a.type < b.type; });

  int strategies_with_data = 0;
  for (const auto& [strategy, row] : strategy_rows) {
    MetricsReport::StrategyRow sr;
    sr.strategy = strategy;
    sr.counts = row;
    sr.prf = Prf::from_counts(row.tp, row.fp(), row.fn());
    report.per_strategy.push_back(sr);
    if (row.n_gt > 0 || row.n_det > 0) {
      report.macro.precision += sr.prf.precision;
      report.macro.recall += sr.prf.recall;
      report.macro.f1 += sr.prf.f1;
      strategies_with_data += 1;
    }
  }
  std::sort(report.per_strategy.begin(), report.per_strategy.end(),
            [](const auto& a, const auto& b) { return a.strategy < b.strategy; });
  if (strategies_with_data > 0) {
    report.macro.precision /= strategies_with_data;
    report.macro.recall /= strategies_with_data;
    report.macro.f1 /= strategies_with_data;
  }

  report.micro = Prf::from_counts(global.tp, global.fp(), global.fn());
  return report;
}

double binary_accuracy(const std::vector<ScreenVerdict>& per_screen_results) {
  if (per_screen_results.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& r : per_screen_results) {
    if (r.gt_malicious == r.predicted_malicious) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(per_screen_results.size());
}

std::vector<AblationConfig> ablation_ladder() {
  std::vector<AblationConfig> ladder;
  StageFlags flags{false, false, false, false};
  ladder.push_back({"text_only", flags});
  flags.icon_semantic = true;
  ladder.push_back({"+icon_semantic", flags});
  flags.template_matching = true;
  ladder.push_back({"+template_matching", flags});
  flags.status_recognition = true;
  ladder.push_back({"+status_recognition", flags});
  flags.color_grouping = true;
  ladder.push_back({"+color_grouping", flags});
  return ladder;
}

std::vector<std::pair<std::string, MetricsReport>> run_ablation(
    const std::vector<ScreenCase>& cases, const std::vector<RuleSpec>& rules,
    const CheckerParams& params, double iou_threshold, const StageFlags& limit) {
  std::vector<std::pair<std::string, MetricsReport>> out;
  for (const AblationConfig& config : ablation_ladder()) {
    StageFlags stages = config.stages;
    stages.icon_semantic &= limit.icon_semantic;
    stages.template_matching &= limit.template_matching;
    stages.status_recognition &= limit.status_recognition;
    stages.color_grouping &= limit.color_grouping;

    EvalCounts total;
    for (const ScreenCase& c : cases) {
      const CheckResult result = check_screen(c.screen, rules, params, stages);
      total.add(match_findings(result.findings, c.gts, iou_threshold));
    }
    out.emplace_back(config.name, metrics(total));
  }
  return out;
}

namespace {

double round4(double v) { return std::round(v * 10000.0) / 10000.0; }

ordered_json prf_json(const Prf& prf) {
  ordered_json j;
  j["precision"] = round4(prf.precision);
  j["recall"] = round4(prf.recall);
  j["f1"] = round4(prf.f1);
  return j;
}

ordered_json row_json(const EvalCounts::Row& row) {
  ordered_json j;
  j["n_gt"] = row.n_gt;
  j["n_det"] = row.n_det;
  j["tp"] = row.tp;
  j["fp"] = row.fp();
  j["fn"] = row.fn();
  return j;
}

}  // namespace

std::string metrics_report_json(const MetricsReport& report) {
  ordered_json doc;
  doc["per_type"] = ordered_json::array();
  for (const auto& tr : report.per_type) {
    ordered_json j;
    j["dp_type"] = to_string(tr.type);
    j["strategy"] = to_string(strategy_of(tr.type));
    j["counts"] = row_json(tr.counts);
    j["metrics"] = prf_json(tr.prf);
    doc["per_type"].push_back(std::move(j));
  }
  doc["per_strategy"] = ordered_json::array();
  for (const auto& sr : report.per_strategy) {
    ordered_json j;
    j["strategy"] = to_string(sr.strategy);
    j["counts"] = row_json(sr.counts);
    j["metrics"] = prf_json(sr.prf);
    doc["per_strategy"].push_back(std::move(j));
  }
  doc["macro"] = prf_json(report.macro);
  doc["micro"] = prf_json(report.micro);
  if (report.binary_accuracy) doc["binary_accuracy"] = round4(*report.binary_accuracy);
  return doc.dump(2) + "\n";
}

std::string metrics_report_table(const MetricsReport& report) {
  char line[256];
  std::string out;
  auto add_row = [&](const std::string& label, const EvalCounts::Row* row, const Prf& prf) {
    if (row) {
      std::snprintf(line, sizeof(line), "%-28s %6d %6d %10.2f %8.2f %8.2f\n", label.c_str(),
                    row->n_gt, row->n_det, prf.precision, prf.recall, prf.f1);
    } else {
      std::snprintf(line, sizeof(line), "%-28s %6s %6s %10.2f %8.2f %8.2f\n", label.c_str(), "-",
                    "-", prf.precision, prf.recall, prf.f1);
    }
    out += line;
  };

  std::snprintf(line, sizeof(line), "%-28s %6s %6s %10s %8s %8s\n", "DP Type", "GT", "Det",
                "Precision", "Recall", "F1");
  out += line;
  out += std::string(72, '-') + "\n";
  for (const auto& tr : report.per_type) {
    add_row(std::string(to_string(tr.type)), &tr.counts, tr.prf);
  }
  out += std::string(72, '-') + "\n";
  for (const auto& sr : report.per_strategy) {
    add_row(std::string(to_string(sr.strategy)), &sr.counts, sr.prf);
  }
  out += std::string(72, '-') + "\n";
  add_row("Macro Average", nullptr, report.macro);
  add_row("Micro Average", nullptr, report.micro);
  if (report.binary_accuracy) {
    std::snprintf(line, sizeof(line), "%-28s %.4f\n", "Binary screen accuracy",
                  *report.binary_accuracy);
    out += line;
  }
  return out;
}

}  // namespace dpscan
