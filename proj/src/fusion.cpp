#include "dpscan/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace dpscan {

std::vector<UIElement> merge_text_lines(const std::vector<UIElement>& elements,
                                        const std::vector<TextLine>& lines,
                                        double match_threshold) {
  std::vector<std::size_t> order(elements.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto area_a = elements[a].bbox.area();
    const auto area_b = elements[b].bbox.area();
    if (area_a != area_b) return area_a < area_b;
    return bbox_less(elements[a].bbox, elements[b].bbox);
  });

  std::vector<UIElement> out = elements;
  std::vector<bool> consumed(lines.size(), false);
  std::vector<std::vector<std::size_t>> matched_lines(elements.size());

  for (const std::size_t ei : order) {
    const UIElement& el = elements[ei];
    for (std::size_t li = 0; li < lines.size(); ++li) {
      if (consumed[li]) continue;
      const TextLine& line = lines[li];
      if (iou(el.bbox, line.bbox) >= match_threshold || contains(el.bbox, line.bbox)) {
        consumed[li] = true;
        matched_lines[ei].push_back(li);
      }
    }
  }

  for (std::size_t ei = 0; ei < out.size(); ++ei) {
    auto& taken = matched_lines[ei];
    if (taken.empty()) continue;

    // Reading order: top-to-bottom, then left-to-right.
    std::stable_sort(taken.begin(), taken.end(), [&](std::size_t a, std::size_t b) {
      return bbox_less(lines[a].bbox, lines[b].bbox);
    });

    std::string joined;
    std::vector<BBox> line_boxes;
    line_boxes.reserve(taken.size());
    for (const std::size_t li : taken) {
      if (!joined.empty()) joined += ' ';
      joined += lines[li].text;
      line_boxes.push_back(lines[li].bbox);
    }

    UIElement& el = out[ei];
    if (el.has_text()) {
      el.text = *el.text + ' ' + joined;
    } else {
      el.text = joined;
    }
    if (is_textual(el.etype)) {
      el.bbox = union_box(line_boxes);
    }
  }

  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (consumed[li]) continue;
    UIElement tv;
    tv.bbox = lines[li].bbox;
    tv.etype = ElementType::TextView;
    tv.text = lines[li].text;
    tv.confidence = 1.0;
    out.push_back(std::move(tv));
  }
  return out;
}

}  // namespace dpscan
