#include "dpscan/image.hpp"

#include <algorithm>
#include <cmath>

namespace dpscan {

ImageU8 ImageU8::filled(int width, int height, Rgb color) {
  ImageU8 img;
  img.width = width;
  img.height = height;
  img.data.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    img.data[i] = color.r;
    img.data[i + 1] = color.g;
    img.data[i + 2] = color.b;
  }
  return img;
}

ImageU8 crop(const ImageU8& img, const BBox& box) {
  const BBox c = clip(box, img.width, img.height);
  ImageU8 out;
  if (c.width() <= 0 || c.height() <= 0) return out;
  out.width = c.width();
  out.height = c.height();
  out.data.resize(static_cast<std::size_t>(out.width) * out.height * 3);
  for (int y = 0; y < out.height; ++y) {
    const std::uint8_t* src = &img.data[(static_cast<std::size_t>(c.y1 + y) * img.width + c.x1) * 3];
    std::uint8_t* dst = &out.data[static_cast<std::size_t>(y) * out.width * 3];
    std::copy(src, src + static_cast<std::size_t>(out.width) * 3, dst);
  }
  return out;
}

GrayF32 to_gray(const ImageU8& img) {
  GrayF32 out;
  out.width = img.width;
  out.height = img.height;
  out.data.resize(static_cast<std::size_t>(img.width) * img.height);
  const std::uint8_t* p = img.data.data();
  for (std::size_t i = 0; i < out.data.size(); ++i, p += 3) {
    out.data[i] = 0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2];
  }
  return out;
}

GrayF32 resize_bilinear(const GrayF32& src, int width, int height) {
  GrayF32 out;
  out.width = width;
  out.height = height;
  out.data.resize(static_cast<std::size_t>(width) * height);
  if (src.empty() || width <= 0 || height <= 0) return out;
  const float sx = static_cast<float>(src.width) / width;
  const float sy = static_cast<float>(src.height) / height;
  for (int y = 0; y < height; ++y) {
    const float fy = (y + 0.5f) * sy - 0.5f;
    const int y0 = std::clamp(static_cast<int>(std::floor(fy)), 0, src.height - 1);
    const int y1 = std::min(y0 + 1, src.height - 1);
    const float wy = std::clamp(fy - y0, 0.0f, 1.0f);
    for (int x = 0; x < width; ++x) {
      const float fx = (x + 0.5f) * sx - 0.5f;
      const int x0 = std::clamp(static_cast<int>(std::floor(fx)), 0, src.width - 1);
      const int x1 = std::min(x0 + 1, src.width - 1);
      const float wx = std::clamp(fx - x0, 0.0f, 1.0f);
      const float top = src.at(x0, y0) * (1.0f - wx) + src.at(x1, y0) * wx;
      const float bot = src.at(x0, y1) * (1.0f - wx) + src.at(x1, y1) * wx;
      out.at(x, y) = top * (1.0f - wy) + bot * wy;
    }
  }
  return out;
}

GrayF32 downsample2(const GrayF32& src) {
  GrayF32 out;
  out.width = std::max(1, src.width / 2);
  out.height = std::max(1, src.height / 2);
  out.data.resize(static_cast<std::size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const int x0 = std::min(2 * x, src.width - 1);
      const int x1 = std::min(2 * x + 1, src.width - 1);
      const int y0 = std::min(2 * y, src.height - 1);
      const int y1 = std::min(2 * y + 1, src.height - 1);
      out.at(x, y) = 0.25f * (src.at(x0, y0) + src.at(x1, y0) + src.at(x0, y1) + src.at(x1, y1));
    }
  }
  return out;
}

void fill_rect(ImageU8& img, const BBox& box, Rgb color) {
  const BBox c = clip(box, img.width, img.height);
  for (int y = c.y1; y < c.y2; ++y) {
    for (int x = c.x1; x < c.x2; ++x) img.set(x, y, color);
  }
}

void draw_rect_outline(ImageU8& img, const BBox& box, Rgb color, int thickness) {
  fill_rect(img, BBox{box.x1, box.y1, box.x2, box.y1 + thickness}, color);
  fill_rect(img, BBox{box.x1, box.y2 - thickness, box.x2, box.y2}, color);
  fill_rect(img, BBox{box.x1, box.y1, box.x1 + thickness, box.y2}, color);
  fill_rect(img, BBox{box.x2 - thickness, box.y1, box.x2, box.y2}, color);
}

void paste(ImageU8& dst, const ImageU8& src, int x, int y) {
  for (int sy = 0; sy < src.height; ++sy) {
    const int dy = y + sy;
    if (dy < 0 || dy >= dst.height) continue;
    for (int sx = 0; sx < src.width; ++sx) {
      const int dx = x + sx;
      if (dx < 0 || dx >= dst.width) continue;
      dst.set(dx, dy, src.at(sx, sy));
    }
  }
}

}  // namespace dpscan
