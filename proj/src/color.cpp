#include "dpscan/color.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dpscan/errors.hpp"

namespace dpscan {

namespace {

constexpr int kLevels = 32;  // bucket width 8 per channel
constexpr int kBuckets = kLevels * kLevels * kLevels;

struct Bucket {
  std::int64_t count = 0;
  std::int64_t sum_r = 0;
  std::int64_t sum_g = 0;
  std::int64_t sum_b = 0;

  Rgb representative() const {
    return Rgb{static_cast<std::uint8_t>(sum_r / count), static_cast<std::uint8_t>(sum_g / count),
               static_cast<std::uint8_t>(sum_b / count)};
  }
};

inline int bucket_index(Rgb c) {
  return (c.r / 8) * kLevels * kLevels + (c.g / 8) * kLevels + (c.b / 8);
}

}  // namespace

double contrast(Rgb a, Rgb b) {
  const double dr = static_cast<double>(a.r) - b.r;
  const double dg = static_cast<double>(a.g) - b.g;
  const double db = static_cast<double>(a.b) - b.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

ColorPair extract_colors(const ImageU8& crop, double min_fraction) {
  if (crop.empty()) throw ArgumentError("extract_colors: zero-area crop");

  std::vector<Bucket> hist(kBuckets);
  const std::int64_t total = static_cast<std::int64_t>(crop.width) * crop.height;
  for (int y = 0; y < crop.height; ++y) {
    for (int x = 0; x < crop.width; ++x) {
      const Rgb c = crop.at(x, y);
      Bucket& b = hist[bucket_index(c)];
      b.count += 1;
      b.sum_r += c.r;
      b.sum_g += c.g;
      b.sum_b += c.b;
    }
  }

  int mode = -1;
  for (int i = 0; i < kBuckets; ++i) {
    if (hist[i].count == 0) continue;
    if (mode < 0 || hist[i].count > hist[mode].count) mode = i;
  }

  const Rgb background = hist[mode].representative();
  const std::int64_t floor_count =
      static_cast<std::int64_t>(std::ceil(min_fraction * static_cast<double>(total)));

  Rgb foreground = background;
  double best_distance = -1.0;
  for (int i = 0; i < kBuckets; ++i) {
    if (i == mode || hist[i].count < floor_count || hist[i].count == 0) continue;
    const Rgb rep = hist[i].representative();
    const double d = contrast(rep, background);
    if (d > best_distance) {
      best_distance = d;
      foreground = rep;
    }
  }
  return ColorPair{background, foreground};
}

void extract_element_colors(Screen& screen) {
  for (auto& el : screen.elements) {
    const ImageU8 c = crop(screen.image, el.bbox);
    if (c.empty()) continue;
    el.colors = extract_colors(c);
  }
}

}  // namespace dpscan
