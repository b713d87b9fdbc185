#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dpscan {

// Axis-aligned box in integer pixel coordinates, origin top-left.
// Valid boxes satisfy x1 < x2 and y1 < y2; degenerate boxes are tolerated by
// the area/IoU helpers (they report zero area) so callers can filter them.
struct BBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  int width() const { return x2 - x1; }
  int height() const { return y2 - y1; }
  std::int64_t area() const {
    if (x2 <= x1 || y2 <= y1) return 0;
    return static_cast<std::int64_t>(x2 - x1) * static_cast<std::int64_t>(y2 - y1);
  }
  double center_x() const { return 0.5 * (x1 + x2); }
  double center_y() const { return 0.5 * (y1 + y2); }
  bool valid() const { return x1 < x2 && y1 < y2 && x1 >= 0 && y1 >= 0; }

  bool operator==(const BBox&) const = default;
};

// Lexicographic (y1, x1, y2, x2): reading order first, used for all
// deterministic tie-breaks.
bool bbox_less(const BBox& a, const BBox& b);

std::int64_t intersection_area(const BBox& a, const BBox& b);

// Intersection over union. Symmetric; degenerate inputs give 0.
double iou(const BBox& a, const BBox& b);

// True iff `inner` is (almost) fully inside `outer`: the intersection covers
// at least `min_cover` of inner's area. The 0.95 default absorbs a pixel or
// two of OCR jitter.
bool contains(const BBox& outer, const BBox& inner, double min_cover = 0.95);

// Minimal enclosing box. Throws on an empty list.
BBox union_box(std::span<const BBox> boxes);
BBox union_box(const std::vector<BBox>& boxes);

BBox clip(const BBox& box, int width, int height);

}  // namespace dpscan
