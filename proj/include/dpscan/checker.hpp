#pragma once

#include <string>
#include <vector>

#include "dpscan/rules.hpp"

namespace dpscan {

// Extraction stages the checker can run without. Coordinates/types and text
// are always available (the base configuration).
struct StageFlags {
  bool icon_semantic = true;
  bool template_matching = true;
  bool status_recognition = true;
  bool color_grouping = true;

  bool operator==(const StageFlags&) const = default;
};

std::vector<std::string> stage_names();
bool apply_stage_name(StageFlags& flags, const std::string& name, bool value);

// Thresholds behind the spatial/visual predicates. All overridable via the
// engine config.
struct CheckerParams {
  // Pop-up region: dialog-cluster box area within [min,max] of the screen and
  // side margins of at least margin_frac * screen width.
  double popup_min_area_frac = 0.15;
  double popup_max_area_frac = 0.85;
  double popup_margin_frac = 0.04;
  double popup_gap_frac = 0.02;  // cluster expansion gap, of max screen dim

  // Checkbox-text adjacency: nearest widget whose center is within
  // adjacency_factor * text height vertically or horizontally.
  double adjacency_factor = 1.5;

  // Small-close: both dimensions below smallness_frac * screen width.
  double smallness_frac = 0.035;

  // False hierarchy saliency.
  double saliency_threshold = 60.0;
  double screen_bg_tolerance = 20.0;

  // Disguised ad: sibling size similarity tolerance.
  double size_similarity = 0.10;

  // Same-type findings with container IoU >= dedup_iou merge.
  double dedup_iou = 0.5;
};

struct Abstention {
  DPType rule = DPType::FaPayAvoidAds;
  std::string missing_property;

  bool operator==(const Abstention&) const = default;
};

struct CheckResult {
  std::vector<Finding> findings;
  std::vector<Abstention> abstentions;
};

// Pop-up region estimation: grow the seed element's box by absorbing every
// element within the gap distance until a fixed point, then test the
// area/margin predicate.
BBox dialog_cluster_box(const Screen& screen, int seed, const CheckerParams& params,
                        const StageFlags& stages);
bool is_popup_box(const BBox& box, const Screen& screen, const CheckerParams& params);

// Ad indicator: badge text ("AD"/"Ads" leading token) or an ad-specific icon.
bool is_ad_indicator(const UIElement& el, const RuleSpec& rule, const StageFlags& stages);

// Evaluates one rule against a fully extracted screen.
std::vector<Finding> evaluate_rule(const RuleSpec& rule, const Screen& screen,
                                   const CheckerParams& params, const StageFlags& stages,
                                   std::vector<Abstention>* abstentions = nullptr);

// Runs every enabled rule, merges duplicate findings of the same type
// (container IoU >= dedup_iou), and sorts the result canonically by
// (strategy, dp_type, y1, x1).
CheckResult check_screen(const Screen& screen, const std::vector<RuleSpec>& rules,
                         const CheckerParams& params = {}, const StageFlags& stages = {});

}  // namespace dpscan
