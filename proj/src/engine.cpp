#include "dpscan/engine.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include <json.hpp>

#include "dpscan/color.hpp"
#include "dpscan/errors.hpp"
#include "dpscan/image_io.hpp"
#include "dpscan/json_util.hpp"

namespace dpscan {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double get_number(const json& obj, const char* key, double fallback, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_number()) throw SchemaError(where + "." + key + ": expected a number");
  return it->get<double>();
}

std::string get_string(const json& obj, const char* key, std::string fallback,
                       const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_string()) throw SchemaError(where + "." + key + ": expected a string");
  return it->get<std::string>();
}

}  // namespace

EngineConfig EngineConfig::from_json(const std::string& json_text, const std::string& origin) {
  const json doc = jsonutil::parse_document(json_text, origin);
  if (!doc.is_object()) throw SchemaError(origin + ": expected a JSON object");
  EngineConfig cfg;

  if (auto it = doc.find("nms"); it != doc.end()) {
    cfg.nms_iou_threshold = get_number(*it, "iou_threshold", cfg.nms_iou_threshold, origin + ".nms");
    cfg.nms_confidence_threshold =
        get_number(*it, "confidence_threshold", cfg.nms_confidence_threshold, origin + ".nms");
  }
  if (auto it = doc.find("fusion"); it != doc.end()) {
    cfg.fusion_match_threshold =
        get_number(*it, "match_threshold", cfg.fusion_match_threshold, origin + ".fusion");
  }
  if (auto it = doc.find("templates"); it != doc.end()) {
    const std::string where = origin + ".templates";
    cfg.templates.ncc_threshold =
        get_number(*it, "ncc_threshold", cfg.templates.ncc_threshold, where);
    cfg.templates.overlap_iou = get_number(*it, "overlap_iou", cfg.templates.overlap_iou, where);
    cfg.template_dir = get_string(*it, "dir", cfg.template_dir, where);
    if (auto s = it->find("scales"); s != it->end() && !s->is_null()) {
      if (!s->is_array()) throw SchemaError(where + ".scales: expected an array of numbers");
      cfg.templates.scales.clear();
      for (const auto& v : *s) {
        if (!v.is_number()) throw SchemaError(where + ".scales: expected an array of numbers");
        cfg.templates.scales.push_back(v.get<double>());
      }
    }
  }
  if (auto it = doc.find("grouping"); it != doc.end()) {
    const std::string where = origin + ".grouping";
    cfg.grouping.alpha = get_number(*it, "alpha", cfg.grouping.alpha, where);
    cfg.grouping.beta = static_cast<int>(get_number(*it, "beta", cfg.grouping.beta, where));
    if (auto w = it->find("weights"); w != it->end()) {
      cfg.grouping.weight_type = get_number(*w, "type", cfg.grouping.weight_type, where);
      cfg.grouping.weight_size = get_number(*w, "size", cfg.grouping.weight_size, where);
      cfg.grouping.weight_position = get_number(*w, "position", cfg.grouping.weight_position, where);
      cfg.grouping.weight_text = get_number(*w, "text", cfg.grouping.weight_text, where);
    }
  }
  if (auto it = doc.find("checker"); it != doc.end()) {
    const std::string where = origin + ".checker";
    CheckerParams& p = cfg.checker;
    p.popup_min_area_frac = get_number(*it, "popup_min_area_frac", p.popup_min_area_frac, where);
    p.popup_max_area_frac = get_number(*it, "popup_max_area_frac", p.popup_max_area_frac, where);
    p.popup_margin_frac = get_number(*it, "popup_margin_frac", p.popup_margin_frac, where);
    p.popup_gap_frac = get_number(*it, "popup_gap_frac", p.popup_gap_frac, where);
    p.adjacency_factor = get_number(*it, "adjacency_factor", p.adjacency_factor, where);
    p.smallness_frac = get_number(*it, "smallness_frac", p.smallness_frac, where);
    p.saliency_threshold = get_number(*it, "saliency_threshold", p.saliency_threshold, where);
    p.screen_bg_tolerance = get_number(*it, "screen_bg_tolerance", p.screen_bg_tolerance, where);
    p.size_similarity = get_number(*it, "size_similarity", p.size_similarity, where);
    p.dedup_iou = get_number(*it, "dedup_iou", p.dedup_iou, where);
  }
  if (auto it = doc.find("evaluation"); it != doc.end()) {
    cfg.eval_iou_threshold =
        get_number(*it, "iou_threshold", cfg.eval_iou_threshold, origin + ".evaluation");
  }
  cfg.rules_file = get_string(doc, "rules_file", cfg.rules_file, origin);
  if (auto it = doc.find("disabled_stages"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) throw SchemaError(origin + ".disabled_stages: expected an array");
    for (const auto& v : *it) {
      if (!v.is_string()) throw SchemaError(origin + ".disabled_stages: expected stage names");
      if (!apply_stage_name(cfg.stages, v.get<std::string>(), false))
        throw SchemaError(origin + ".disabled_stages: unknown stage '" + v.get<std::string>() + "'");
    }
  }
  return cfg;
}

EngineConfig EngineConfig::load(const std::string& path) {
  return from_json(read_text_file(path), path);
}

Engine::Engine(EngineConfig config) : config_(std::move(config)) {
  rules_ = config_.rules_file.empty() ? builtin_rules() : load_rules_file(config_.rules_file);
  templates_ =
      config_.template_dir.empty() ? builtin_templates() : load_templates_from_dir(config_.template_dir);
}

Screen Engine::extract(ImageU8 image, const ExtractorSuite& suite) const {
  if (!suite.complete()) throw ArgumentError("extractor suite has unpopulated slots");
  Screen screen = Screen::from_image(std::move(image));

  DetectorOutput dets = suite.element_detector->detect(screen.image);
  dets = non_max_suppression(dets, config_.nms_iou_threshold, config_.nms_confidence_threshold);

  std::vector<UIElement> elements;
  elements.reserve(dets.size());
  for (const Detection& d : dets) {
    UIElement el;
    el.bbox = clip(d.bbox, screen.width, screen.height);
    el.etype = d.type;
    el.confidence = d.confidence;
    elements.push_back(std::move(el));
  }

  const std::vector<TextLine> lines = suite.text_recognizer->recognize(screen.image);
  screen.elements = merge_text_lines(elements, lines, config_.fusion_match_threshold);

  if (config_.stages.template_matching && !screen.image.empty()) {
    const auto matches =
        match_templates(screen.image, templates_, config_.templates, &screen.warnings);
    apply_template_matches(screen, matches);
  }
  if (config_.stages.icon_semantic || config_.stages.template_matching) {
    classify_icons(screen, suite);
  }
  if (config_.stages.status_recognition) {
    classify_status(screen, suite);
  } else {
    for (auto& el : screen.elements)
      el.status = is_togglable(el.etype) ? WidgetStatus::Unknown : WidgetStatus::NotApplicable;
  }
  if (config_.stages.color_grouping) {
    if (!screen.image.empty()) extract_element_colors(screen);
    group_elements(screen, config_.grouping);
  }
  return screen;
}

CheckResult Engine::check(const Screen& screen) const {
  return check_screen(screen, rules_, config_.checker, config_.stages);
}

Engine::Analysis Engine::analyze(ImageU8 image, const std::string& image_name,
                                 const ExtractorSuite& suite) const {
  Analysis a;
  a.screen = extract(std::move(image), suite);
  a.result = check(a.screen);
  a.report.image = image_name;
  a.report.findings = a.result.findings;
  return a;
}

Engine::Analysis Engine::analyze_file(const std::string& image_path,
                                      const std::string& elements_path,
                                      const std::string& ocr_path) const {
  ImageU8 image = load_image(image_path);
  ElementSidecar elements = load_element_sidecar(elements_path);
  if (elements.width != image.width || elements.height != image.height) {
    throw SchemaError(elements_path + ": sidecar dimensions " + std::to_string(elements.width) +
                      "x" + std::to_string(elements.height) + " do not match image " +
                      std::to_string(image.width) + "x" + std::to_string(image.height));
  }
  std::optional<OcrSidecar> ocr;
  if (!ocr_path.empty()) ocr = load_ocr_sidecar(ocr_path);

  const ExtractorSuite suite = ExtractorSuite::from_annotations(std::move(elements), std::move(ocr));
  return analyze(std::move(image), fs::path(image_path).filename().string(), suite);
}

std::string sidecar_path_for(const std::string& image_path, const std::string& suffix) {
  fs::path p(image_path);
  p.replace_extension();
  return p.string() + suffix;
}

namespace {

// Strips a double suffix like ".report.json" and returns the stem.
std::optional<std::string> stem_for(const fs::path& path, const std::string& suffix) {
  const std::string name = path.filename().string();
  if (name.size() <= suffix.size() || name.substr(name.size() - suffix.size()) != suffix)
    return std::nullopt;
  return name.substr(0, name.size() - suffix.size());
}

}  // namespace

MetricsReport Engine::evaluate_dirs(const std::string& pred_dir, const std::string& gt_dir) const {
  if (!fs::is_directory(pred_dir)) throw InputError(pred_dir + ": prediction directory not found");
  if (!fs::is_directory(gt_dir)) throw InputError(gt_dir + ": ground-truth directory not found");

  std::map<std::string, fs::path> preds;
  for (const auto& entry : fs::directory_iterator(pred_dir)) {
    if (!entry.is_regular_file()) continue;
    if (const auto stem = stem_for(entry.path(), ".report.json")) preds[*stem] = entry.path();
  }
  std::map<std::string, fs::path> gts;
  for (const auto& entry : fs::directory_iterator(gt_dir)) {
    if (!entry.is_regular_file()) continue;
    if (const auto stem = stem_for(entry.path(), ".gt.json")) gts[*stem] = entry.path();
  }

  EvalCounts total;
  std::vector<ScreenVerdict> verdicts;
  std::set<std::string> stems;
  for (const auto& [stem, _] : preds) stems.insert(stem);
  for (const auto& [stem, _] : gts) stems.insert(stem);

  for (const std::string& stem : stems) {
    std::vector<Finding> findings;
    if (auto it = preds.find(stem); it != preds.end()) {
      findings = load_findings_report(it->second.string()).findings;
    }
    std::vector<GroundTruthInstance> instances;
    if (auto it = gts.find(stem); it != gts.end()) {
      instances = load_ground_truth(it->second.string()).instances;
    }
    total.add(match_findings(findings, instances, config_.eval_iou_threshold));
    verdicts.push_back({!instances.empty(), !findings.empty()});
  }

  MetricsReport report = metrics(total);
  report.binary_accuracy = binary_accuracy(verdicts);
  return report;
}

std::vector<std::pair<std::string, MetricsReport>> Engine::run_ablation_dirs(
    const std::string& input_dir, const std::string& gt_dir) const {
  if (!fs::is_directory(input_dir)) throw InputError(input_dir + ": input directory not found");
  if (!fs::is_directory(gt_dir)) throw InputError(gt_dir + ": ground-truth directory not found");

  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(input_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") images.push_back(entry.path());
  }
  std::sort(images.begin(), images.end());

  std::vector<ScreenCase> cases;
  for (const fs::path& image_path : images) {
    const std::string elements_path = sidecar_path_for(image_path.string(), ".elements.json");
    if (!fs::exists(elements_path)) {
      throw InputError(elements_path + ": element sidecar required for ablation input " +
                       image_path.filename().string());
    }
    std::string ocr_path = sidecar_path_for(image_path.string(), ".ocr.json");
    if (!fs::exists(ocr_path)) ocr_path.clear();

    const Analysis a = analyze_file(image_path.string(), elements_path, ocr_path);
    ScreenCase c;
    c.screen = a.screen;

    const std::string gt_path =
        (fs::path(gt_dir) / (fs::path(image_path).stem().string() + ".gt.json")).string();
    if (fs::exists(gt_path)) c.gts = load_ground_truth(gt_path).instances;
    cases.push_back(std::move(c));
  }
  return run_ablation(cases, rules_, config_.checker, config_.eval_iou_threshold, config_.stages);
}

}  // namespace dpscan
