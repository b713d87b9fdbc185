#pragma once

#include <cstdint>
#include <vector>

#include "dpscan/geometry.hpp"

namespace dpscan {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

// Interleaved 8-bit RGB raster.
struct ImageU8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // size = width * height * 3

  static ImageU8 filled(int width, int height, Rgb color);

  bool empty() const { return width <= 0 || height <= 0; }

  Rgb at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    return Rgb{data[i], data[i + 1], data[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    data[i] = c.r;
    data[i + 1] = c.g;
    data[i + 2] = c.b;
  }
};

// Single-channel float raster used by the template matcher.
struct GrayF32 {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  bool empty() const { return width <= 0 || height <= 0; }
  float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

// Crop clipped to the image bounds; an out-of-bounds box yields an empty image.
ImageU8 crop(const ImageU8& img, const BBox& box);

// Rec. 601 luma.
GrayF32 to_gray(const ImageU8& img);

GrayF32 resize_bilinear(const GrayF32& src, int width, int height);

// 2x2 box-filter downsample (floor halving), used by the match pyramid.
GrayF32 downsample2(const GrayF32& src);

void fill_rect(ImageU8& img, const BBox& box, Rgb color);
void draw_rect_outline(ImageU8& img, const BBox& box, Rgb color, int thickness);
void paste(ImageU8& dst, const ImageU8& src, int x, int y);

}  // namespace dpscan
