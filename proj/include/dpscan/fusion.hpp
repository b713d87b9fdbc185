#pragma once

#include <vector>

#include "dpscan/model.hpp"
#include "dpscan/sidecar.hpp"

namespace dpscan {

// Merges OCR text lines into detected elements:
//   1. elements are visited by ascending area (ties by reading order);
//   2. an element takes every still-unmatched line with IoU >= match_threshold
//      or full containment; each line is consumed at most once;
//   3. matched line texts concatenate in reading order;
//   4. unconsumed lines become TextView elements with confidence 1.0;
//   5. textual elements (TextView/Button/EditText) with matches get their bbox
//      replaced by the union of the matched line boxes.
// Line conservation holds: every input line is either assigned to exactly one
// element or appears as a new TextView.
std::vector<UIElement> merge_text_lines(const std::vector<UIElement>& elements,
                                        const std::vector<TextLine>& lines,
                                        double match_threshold = 0.5);

}  // namespace dpscan
