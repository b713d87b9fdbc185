/*
 * dpscan — dark pattern detection for mobile UI screenshots.
 *
 * C API over the analysis engine: opaque handles, status codes, and
 * canonical JSON in/out. All functions are thread-safe on distinct handles;
 * a single engine handle may be shared by concurrent analyses (it is
 * immutable after configuration).
 */
#ifndef DPSCAN_H
#define DPSCAN_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpscan_status {
  DPSCAN_OK = 0,
  DPSCAN_ERR_INPUT = 2,    /* missing file or unreadable input */
  DPSCAN_ERR_SCHEMA = 3,   /* malformed sidecar/config/rules content */
  DPSCAN_ERR_INTERNAL = 4, /* unexpected failure */
  DPSCAN_ERR_ARG = 5       /* null handle or invalid argument */
} dpscan_status;

typedef struct dpscan_engine dpscan_engine;
typedef struct dpscan_result dpscan_result;
typedef struct dpscan_eval dpscan_eval;

const char* dpscan_version(void);
const char* dpscan_status_name(dpscan_status status);

/* Thread-local detail message for the last failing call on this thread. */
const char* dpscan_last_error(void);

/* --- engine ------------------------------------------------------------- */

/* config_path may be NULL for built-in defaults. */
dpscan_status dpscan_engine_create(const char* config_path, dpscan_engine** out);
dpscan_status dpscan_engine_load_rules(dpscan_engine* engine, const char* rules_path);
/* stage: icon_semantic | template_matching | status_recognition | color_grouping */
dpscan_status dpscan_engine_disable_stage(dpscan_engine* engine, const char* stage);
void dpscan_engine_destroy(dpscan_engine* engine);

/* --- analysis ------------------------------------------------------------ */

/*
 * elements_path: element sidecar JSON; NULL resolves <image>.elements.json.
 * ocr_path: OCR sidecar JSON; NULL resolves <image>.ocr.json when present,
 * otherwise element texts from the sidecar stand in for OCR lines.
 */
dpscan_status dpscan_analyze_file(const dpscan_engine* engine, const char* image_path,
                                  const char* elements_path, const char* ocr_path,
                                  dpscan_result** out);

int dpscan_result_finding_count(const dpscan_result* result);
/* Canonical findings report (fixed key order, trailing newline). Owned by the
 * result; valid until dpscan_result_destroy. */
const char* dpscan_result_report_json(const dpscan_result* result);
dpscan_status dpscan_result_write_report(const dpscan_result* result, const char* path);
/* PNG with red container boxes and an explanation legend. */
dpscan_status dpscan_result_write_overlay(const dpscan_result* result, const char* path);
void dpscan_result_destroy(dpscan_result* result);

/* --- evaluation ----------------------------------------------------------- */

/*
 * Pairs <stem>.report.json under pred_dir with <stem>.gt.json under gt_dir
 * and computes per-type/per-strategy/macro/micro metrics plus binary screen
 * accuracy. With run_ablation != 0, pred_dir must instead hold analysis
 * inputs (<stem>.png + <stem>.elements.json [+ <stem>.ocr.json]); the sweep
 * re-checks each screen under the cumulative stage configurations.
 */
dpscan_status dpscan_evaluate_dirs(const dpscan_engine* engine, const char* pred_dir,
                                   const char* gt_dir, int run_ablation, dpscan_eval** out);

const char* dpscan_eval_report_json(const dpscan_eval* eval);
const char* dpscan_eval_table(const dpscan_eval* eval);
dpscan_status dpscan_eval_write_report(const dpscan_eval* eval, const char* path);
void dpscan_eval_destroy(dpscan_eval* eval);

#ifdef __cplusplus
}
#endif

#endif /* DPSCAN_H */
