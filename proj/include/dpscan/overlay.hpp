#pragma once

#include <string>
#include <vector>

#include "dpscan/rules.hpp"

namespace dpscan {

// 5x7 bitmap text, printable ASCII only (other bytes render as '?').
void draw_text(ImageU8& img, int x, int y, const std::string& text, Rgb color, int scale = 1);
int text_width(const std::string& text, int scale = 1);

// Screenshot copy with each finding's container drawn in red, an index tab
// per box, and a legend strip appended below listing type, tier and
// explanation per finding.
ImageU8 render_overlay(const Screen& screen, const std::vector<Finding>& findings);

}  // namespace dpscan
