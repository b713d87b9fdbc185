#include "dpscan/dpscan.h"

#include <filesystem>
#include <string>

#include "dpscan/engine.hpp"
#include "dpscan/errors.hpp"
#include "dpscan/image_io.hpp"
#include "dpscan/overlay.hpp"
#include "dpscan/sidecar.hpp"

namespace {

thread_local std::string g_last_error;

dpscan_status record_error(dpscan_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
dpscan_status guarded(Fn&& fn) {
  try {
    fn();
    return DPSCAN_OK;
  } catch (const dpscan::Error& e) {
    switch (e.code()) {
      case dpscan::ErrorCode::Input:
        return record_error(DPSCAN_ERR_INPUT, e.what());
      case dpscan::ErrorCode::Schema:
        return record_error(DPSCAN_ERR_SCHEMA, e.what());
      case dpscan::ErrorCode::Argument:
        return record_error(DPSCAN_ERR_ARG, e.what());
      default:
        return record_error(DPSCAN_ERR_INTERNAL, e.what());
    }
  } catch (const std::exception& e) {
    return record_error(DPSCAN_ERR_INTERNAL, e.what());
  } catch (...) {
    return record_error(DPSCAN_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

struct dpscan_engine {
  dpscan::Engine impl;
};

struct dpscan_result {
  dpscan::Engine::Analysis analysis;
  std::string report_json;
};

struct dpscan_eval {
  std::string report_json;
  std::string table;
};

extern "C" {

const char* dpscan_version(void) { return "1.0.0"; }

const char* dpscan_status_name(dpscan_status status) {
  switch (status) {
    case DPSCAN_OK:
      return "ok";
    case DPSCAN_ERR_INPUT:
      return "input-missing";
    case DPSCAN_ERR_SCHEMA:
      return "schema-violation";
    case DPSCAN_ERR_INTERNAL:
      return "internal-error";
    case DPSCAN_ERR_ARG:
      return "invalid-argument";
  }
  return "unknown";
}

const char* dpscan_last_error(void) { return g_last_error.c_str(); }

dpscan_status dpscan_engine_create(const char* config_path, dpscan_engine** out) {
  if (!out) return record_error(DPSCAN_ERR_ARG, "engine_create: out is null");
  *out = nullptr;
  return guarded([&] {
    dpscan::EngineConfig config;
    if (config_path && *config_path) config = dpscan::EngineConfig::load(config_path);
    *out = new dpscan_engine{dpscan::Engine(std::move(config))};
  });
}

dpscan_status dpscan_engine_load_rules(dpscan_engine* engine, const char* rules_path) {
  if (!engine || !rules_path) return record_error(DPSCAN_ERR_ARG, "engine_load_rules: null argument");
  return guarded([&] { engine->impl.load_rules(rules_path); });
}

dpscan_status dpscan_engine_disable_stage(dpscan_engine* engine, const char* stage) {
  if (!engine || !stage) return record_error(DPSCAN_ERR_ARG, "engine_disable_stage: null argument");
  dpscan::StageFlags stages = engine->impl.config().stages;
  if (!dpscan::apply_stage_name(stages, stage, false)) {
    return record_error(DPSCAN_ERR_ARG, std::string("unknown stage '") + stage + "'");
  }
  engine->impl.set_stages(stages);
  return DPSCAN_OK;
}

void dpscan_engine_destroy(dpscan_engine* engine) { delete engine; }

dpscan_status dpscan_analyze_file(const dpscan_engine* engine, const char* image_path,
                                  const char* elements_path, const char* ocr_path,
                                  dpscan_result** out) {
  if (!engine || !image_path || !out)
    return record_error(DPSCAN_ERR_ARG, "analyze_file: null argument");
  *out = nullptr;
  return guarded([&] {
    std::string elements =
        elements_path ? elements_path : dpscan::sidecar_path_for(image_path, ".elements.json");
    std::string ocr;
    if (ocr_path) {
      ocr = ocr_path;
    } else {
      const std::string candidate = dpscan::sidecar_path_for(image_path, ".ocr.json");
      if (std::filesystem::exists(candidate)) ocr = candidate;
    }
    auto result = std::make_unique<dpscan_result>();
    result->analysis = engine->impl.analyze_file(image_path, elements, ocr);
    result->report_json = dpscan::serialize_findings_report(result->analysis.report);
    *out = result.release();
  });
}

int dpscan_result_finding_count(const dpscan_result* result) {
  if (!result) return -1;
  return static_cast<int>(result->analysis.result.findings.size());
}

const char* dpscan_result_report_json(const dpscan_result* result) {
  if (!result) return nullptr;
  return result->report_json.c_str();
}

dpscan_status dpscan_result_write_report(const dpscan_result* result, const char* path) {
  if (!result || !path) return record_error(DPSCAN_ERR_ARG, "write_report: null argument");
  return guarded([&] { dpscan::write_text_file(path, result->report_json); });
}

dpscan_status dpscan_result_write_overlay(const dpscan_result* result, const char* path) {
  if (!result || !path) return record_error(DPSCAN_ERR_ARG, "write_overlay: null argument");
  return guarded([&] {
    const dpscan::ImageU8 overlay =
        dpscan::render_overlay(result->analysis.screen, result->analysis.result.findings);
    dpscan::save_png(overlay, path);
  });
}

void dpscan_result_destroy(dpscan_result* result) { delete result; }

dpscan_status dpscan_evaluate_dirs(const dpscan_engine* engine, const char* pred_dir,
                                   const char* gt_dir, int run_ablation, dpscan_eval** out) {
  if (!engine || !pred_dir || !gt_dir || !out)
    return record_error(DPSCAN_ERR_ARG, "evaluate_dirs: null argument");
  *out = nullptr;
  return guarded([&] {
    auto eval = std::make_unique<dpscan_eval>();
    if (run_ablation) {
      const auto reports = engine->impl.run_ablation_dirs(pred_dir, gt_dir);
      std::string json = "{\n  \"ablation\": [\n";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        std::string body = dpscan::metrics_report_json(reports[i].second);
        if (!body.empty() && body.back() == '\n') body.pop_back();
        json += "    {\"config\": \"" + reports[i].first + "\", \"report\": " + body + "}";
        json += (i + 1 < reports.size()) ? ",\n" : "\n";
        eval->table += "== " + reports[i].first + " ==\n";
        eval->table += dpscan::metrics_report_table(reports[i].second);
        eval->table += "\n";
      }
      json += "  ]\n}\n";
      eval->report_json = std::move(json);
    } else {
      const dpscan::MetricsReport report = engine->impl.evaluate_dirs(pred_dir, gt_dir);
      eval->report_json = dpscan::metrics_report_json(report);
      eval->table = dpscan::metrics_report_table(report);
    }
    *out = eval.release();
  });
}

const char* dpscan_eval_report_json(const dpscan_eval* eval) {
  if (!eval) return nullptr;
  return eval->report_json.c_str();
}

const char* dpscan_eval_table(const dpscan_eval* eval) {
  if (!eval) return nullptr;
  return eval->table.c_str();
}

dpscan_status dpscan_eval_write_report(const dpscan_eval* eval, const char* path) {
  if (!eval || !path) return record_error(DPSCAN_ERR_ARG, "eval_write_report: null argument");
  return guarded([&] { dpscan::write_text_file(path, eval->report_json); });
}

void dpscan_eval_destroy(dpscan_eval* eval) { delete eval; }

}  // extern "C"
