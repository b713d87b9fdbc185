#pragma once

#include <string>
#include <vector>

#include "dpscan/model.hpp"

namespace dpscan {

// A grayscale patch scanned over the screenshot. Ad-specific icons render
// identically across apps, which is what makes plain correlation viable.
struct Template {
  IconClass name = IconClass::AdChoicesTriangle;
  GrayF32 patch;
  int nominal_size = 0;
};

struct TemplateMatch {
  BBox bbox;
  IconClass icon = IconClass::AdChoicesTriangle;
  double score = 0.0;
};

struct TemplateMatchParams {
  double ncc_threshold = 0.8;
  std::vector<double> scales = {0.75, 1.0, 1.25, 1.5};
  double overlap_iou = 0.3;  // overlapping reports collapse to the best score
};

// The two compiled-in ad templates (AdChoices triangle, ad close cross).
std::vector<Template> builtin_templates();

// RGB rendering of a builtin patch, used to bundle PNG assets and to build
// test fixtures.
ImageU8 builtin_template_image(IconClass icon);

// Loads <icon_name>.png patches from a directory; files that do not name a
// known icon class are reported as warnings.
std::vector<Template> load_templates_from_dir(const std::string& dir,
                                              std::vector<std::string>* warnings = nullptr);

// Normalized cross-correlation of `tpl` against the window of `img` anchored
// at (x, y). Zero-variance windows or templates score 0.
double ncc_at(const GrayF32& img, const GrayF32& tpl, int x, int y);

// Scans every template at every scale, reports local maxima with
// score >= ncc_threshold, and collapses overlapping reports (IoU >=
// overlap_iou) to the highest score. Scales at which a template exceeds the
// image are skipped with a warning. Results are deterministic: sorted by
// descending score, then icon, then box reading order.
std::vector<TemplateMatch> match_templates(const ImageU8& image,
                                           const std::vector<Template>& templates,
                                           const TemplateMatchParams& params = {},
                                           std::vector<std::string>* warnings = nullptr);

// Appends matches to the screen as ImageView elements carrying the template's
// icon class, confidence = score.
void apply_template_matches(Screen& screen, const std::vector<TemplateMatch>& matches);

}  // namespace dpscan
