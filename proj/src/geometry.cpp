#include "dpscan/geometry.hpp"

#include <algorithm>
#include <tuple>

#include "dpscan/errors.hpp"

namespace dpscan {

bool bbox_less(const BBox& a, const BBox& b) {
  return std::tie(a.y1, a.x1, a.y2, a.x2) < std::tie(b.y1, b.x1, b.y2, b.x2);
}

std::int64_t intersection_area(const BBox& a, const BBox& b) {
  const int ix1 = std::max(a.x1, b.x1);
  const int iy1 = std::max(a.y1, b.y1);
  const int ix2 = std::min(a.x2, b.x2);
  const int iy2 = std::min(a.y2, b.y2);
  if (ix2 <= ix1 || iy2 <= iy1) return 0;
  return static_cast<std::int64_t>(ix2 - ix1) * static_cast<std::int64_t>(iy2 - iy1);
}

double iou(const BBox& a, const BBox& b) {
  const std::int64_t inter = intersection_area(a, b);
  const std::int64_t uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

bool contains(const BBox& outer, const BBox& inner, double min_cover) {
  const std::int64_t inner_area = inner.area();
  if (inner_area <= 0) return false;
  const std::int64_t inter = intersection_area(outer, inner);
  return static_cast<double>(inter) >= min_cover * static_cast<double>(inner_area);
}

BBox union_box(std::span<const BBox> boxes) {
  if (boxes.empty()) throw InternalError("union_box: empty box list");
  BBox out = boxes.front();
  for (const BBox& b : boxes.subspan(1)) {
    out.x1 = std::min(out.x1, b.x1);
    out.y1 = std::min(out.y1, b.y1);
    out.x2 = std::max(out.x2, b.x2);
    out.y2 = std::max(out.y2, b.y2);
  }
  return out;
}

BBox union_box(const std::vector<BBox>& boxes) {
  return union_box(std::span<const BBox>(boxes.data(), boxes.size()));
}

BBox clip(const BBox& box, int width, int height) {
  BBox out = box;
  out.x1 = std::clamp(out.x1, 0, width);
  out.y1 = std::clamp(out.y1, 0, height);
  out.x2 = std::clamp(out.x2, 0, width);
  out.y2 = std::clamp(out.y2, 0, height);
  return out;
}

}  // namespace dpscan
