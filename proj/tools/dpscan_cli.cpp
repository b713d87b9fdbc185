// dpscan command line: `analyze` runs the detection pipeline on one
// screenshot (or a directory of them), `evaluate` scores findings reports
// against ground truth. Everything goes through the public C API.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dpscan/dpscan.h"

namespace fs = std::filesystem;

namespace {

int status_to_exit(dpscan_status status) {
  switch (status) {
    case DPSCAN_OK:
      return 0;
    case DPSCAN_ERR_INPUT:
      return 2;
    case DPSCAN_ERR_SCHEMA:
      return 3;
    default:
      return 4;
  }
}

int fail(dpscan_status status, const std::string& context) {
  std::cerr << "dpscan: " << context << ": " << dpscan_status_name(status) << ": "
            << dpscan_last_error() << "\n";
  return status_to_exit(status);
}

struct EngineHandle {
  dpscan_engine* ptr = nullptr;
  ~EngineHandle() { dpscan_engine_destroy(ptr); }
};

std::string stem_of(const fs::path& image) { return image.stem().string(); }

std::string default_sidecar(const fs::path& image, const char* suffix) {
  fs::path p = image;
  p.replace_extension();
  return p.string() + suffix;
}

int analyze_one(const dpscan_engine* engine, const fs::path& image, const std::string& elements,
                const std::string& ocr, const std::string& out_path,
                const std::string& overlay_path, bool print_report) {
  dpscan_result* result = nullptr;
  dpscan_status status =
      dpscan_analyze_file(engine, image.string().c_str(), elements.empty() ? nullptr : elements.c_str(),
                          ocr.empty() ? nullptr : ocr.c_str(), &result);
  if (status != DPSCAN_OK) return fail(status, image.string());

  int exit_code = 0;
  if (!out_path.empty()) {
    status = dpscan_result_write_report(result, out_path.c_str());
    if (status != DPSCAN_OK) exit_code = fail(status, out_path);
  } else if (print_report) {
    std::cout << dpscan_result_report_json(result);
  }
  if (exit_code == 0 && !overlay_path.empty()) {
    status = dpscan_result_write_overlay(result, overlay_path.c_str());
    if (status != DPSCAN_OK) exit_code = fail(status, overlay_path);
  }
  dpscan_result_destroy(result);
  return exit_code;
}

int analyze_directory(const dpscan_engine* engine, const fs::path& dir, const std::string& out_dir,
                      bool overlays, unsigned jobs) {
  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext != ".png" && ext != ".jpg" && ext != ".jpeg") continue;
    if (!fs::exists(default_sidecar(entry.path(), ".elements.json"))) {
      std::cerr << "dpscan: skipping " << entry.path().filename().string()
                << " (no element sidecar)\n";
      continue;
    }
    images.push_back(entry.path());
  }
  std::sort(images.begin(), images.end());

  const fs::path out(out_dir.empty() ? dir : fs::path(out_dir));
  fs::create_directories(out);

  std::atomic<std::size_t> next{0};
  std::atomic<int> worst_exit{0};
  std::mutex io_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= images.size()) return;
      const fs::path& image = images[i];
      const std::string report_path = (out / (stem_of(image) + ".report.json")).string();
      const std::string overlay_path =
          overlays ? (out / (stem_of(image) + ".overlay.png")).string() : std::string();

      dpscan_result* result = nullptr;
      dpscan_status status = dpscan_analyze_file(engine, image.string().c_str(), nullptr, nullptr,
                                                 &result);
      int exit_code = 0;
      if (status != DPSCAN_OK) {
        std::lock_guard<std::mutex> lock(io_mutex);
        exit_code = fail(status, image.string());
      } else {
        status = dpscan_result_write_report(result, report_path.c_str());
        if (status != DPSCAN_OK) {
          std::lock_guard<std::mutex> lock(io_mutex);
          exit_code = fail(status, report_path);
        }
        if (exit_code == 0 && !overlay_path.empty()) {
          status = dpscan_result_write_overlay(result, overlay_path.c_str());
          if (status != DPSCAN_OK) {
            std::lock_guard<std::mutex> lock(io_mutex);
            exit_code = fail(status, overlay_path);
          }
        }
      }
      dpscan_result_destroy(result);
      if (exit_code != 0) {
        int expected = 0;
        worst_exit.compare_exchange_strong(expected, exit_code);
      }
    }
  };

  std::vector<std::thread> pool;
  const unsigned n = std::max(1u, jobs);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::cerr << "dpscan: analyzed " << images.size() << " screen(s) into " << out.string() << "\n";
  return worst_exit.load();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dark pattern detection for mobile UI screenshots"};
  app.require_subcommand(1);

  // analyze
  std::string image, elements, ocr, rules, config, out, overlay;
  std::vector<std::string> disabled;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* analyze = app.add_subcommand("analyze", "Detect dark patterns in a screenshot");
  analyze->add_option("image", image, "Screenshot (PNG/JPEG) or a directory of screenshots")
      ->required();
  analyze->add_option("--elements", elements, "Element sidecar JSON (default <image>.elements.json)");
  analyze->add_option("--ocr", ocr, "OCR sidecar JSON (default <image>.ocr.json if present)");
  analyze->add_option("--rules", rules, "Rules file overriding the built-in registry");
  analyze->add_option("--config", config, "Engine config JSON");
  analyze->add_option("--out", out, "Report destination (file; directory in batch mode)");
  analyze->add_option("--overlay", overlay, "Overlay PNG destination (flag-like in batch mode)");
  analyze->add_option("--disable", disabled,
                      "Disable a stage: icon_semantic, template_matching, status_recognition, "
                      "color_grouping (repeatable)");
  analyze->add_option("--jobs", jobs, "Worker threads in batch mode");

  // evaluate
  std::string pred_dir, gt_dir, eval_out, eval_rules, eval_config;
  bool ablation = false;
  auto* evaluate = app.add_subcommand("evaluate", "Score findings reports against ground truth");
  evaluate->add_option("--pred", pred_dir, "Directory of *.report.json (analysis inputs with --ablation)")
      ->required();
  evaluate->add_option("--gt", gt_dir, "Directory of *.gt.json")->required();
  evaluate->add_flag("--ablation", ablation, "Sweep the cumulative stage configurations");
  evaluate->add_option("--config", eval_config, "Engine config JSON");
  evaluate->add_option("--rules", eval_rules, "Rules file overriding the built-in registry");
  evaluate->add_option("--out", eval_out, "Write the JSON metrics report here");

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) {
    EngineHandle engine;
    dpscan_status status = dpscan_engine_create(config.empty() ? nullptr : config.c_str(), &engine.ptr);
    if (status != DPSCAN_OK) return fail(status, "engine");
    if (!rules.empty()) {
      status = dpscan_engine_load_rules(engine.ptr, rules.c_str());
      if (status != DPSCAN_OK) return fail(status, rules);
    }
    for (const auto& stage : disabled) {
      status = dpscan_engine_disable_stage(engine.ptr, stage.c_str());
      if (status != DPSCAN_OK) return fail(status, "--disable " + stage);
    }
    if (fs::is_directory(image)) {
      return analyze_directory(engine.ptr, image, out, !overlay.empty(), jobs);
    }
    return analyze_one(engine.ptr, image, elements, ocr, out, overlay, /*print_report=*/true);
  }

  // evaluate
  EngineHandle engine;
  dpscan_status status =
      dpscan_engine_create(eval_config.empty() ? nullptr : eval_config.c_str(), &engine.ptr);
  if (status != DPSCAN_OK) return fail(status, "engine");
  if (!eval_rules.empty()) {
    status = dpscan_engine_load_rules(engine.ptr, eval_rules.c_str());
    if (status != DPSCAN_OK) return fail(status, eval_rules);
  }

  dpscan_eval* eval = nullptr;
  status = dpscan_evaluate_dirs(engine.ptr, pred_dir.c_str(), gt_dir.c_str(), ablation ? 1 : 0, &eval);
  if (status != DPSCAN_OK) return fail(status, "evaluate");

  std::cout << dpscan_eval_table(eval);
  int exit_code = 0;
  if (!eval_out.empty()) {
    status = dpscan_eval_write_report(eval, eval_out.c_str());
    if (status != DPSCAN_OK) exit_code = fail(status, eval_out);
  }
  dpscan_eval_destroy(eval);
  return exit_code;
}
