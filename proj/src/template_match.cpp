#include "dpscan/template_match.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <tuple>

#include "dpscan/errors.hpp"
#include "dpscan/image_io.hpp"

namespace dpscan {

namespace {

constexpr double kVarianceEps = 1e-6;
// Windows*area budget above which the scan switches to a coarse-to-fine pass.
constexpr double kDirectScanBudget = 30e6;
constexpr int kMinCoarseTemplate = 8;

struct ScanHit {
  int x = 0;
  int y = 0;
  double score = 0.0;
};

struct IntegralImage {
  int width = 0;
  int height = 0;
  std::vector<double> sum;
  std::vector<double> sum_sq;

  explicit IntegralImage(const GrayF32& img) : width(img.width), height(img.height) {
    sum.assign(static_cast<std::size_t>(width + 1) * (height + 1), 0.0);
    sum_sq.assign(sum.size(), 0.0);
    for (int y = 0; y < height; ++y) {
      double row = 0.0, row_sq = 0.0;
      for (int x = 0; x < width; ++x) {
        const double v = img.at(x, y);
        row += v;
        row_sq += v * v;
        const std::size_t idx = static_cast<std::size_t>(y + 1) * (width + 1) + (x + 1);
        sum[idx] = sum[idx - (width + 1)] + row;
        sum_sq[idx] = sum_sq[idx - (width + 1)] + row_sq;
      }
    }
  }

  double window_sum(const std::vector<double>& t, int x, int y, int w, int h) const {
    const int stride = width + 1;
    return t[static_cast<std::size_t>(y + h) * stride + (x + w)] -
           t[static_cast<std::size_t>(y) * stride + (x + w)] -
           t[static_cast<std::size_t>(y + h) * stride + x] +
           t[static_cast<std::size_t>(y) * stride + x];
  }
};

struct TemplateStats {
  double sum = 0.0;
  double centered_norm_sq = 0.0;  // sum of (T - meanT)^2
  double mean = 0.0;
};

TemplateStats template_stats(const GrayF32& tpl) {
  TemplateStats s;
  for (const float v : tpl.data) s.sum += v;
  const double n = static_cast<double>(tpl.data.size());
  s.mean = s.sum / n;
  for (const float v : tpl.data) {
    const double d = v - s.mean;
    s.centered_norm_sq += d * d;
  }
  return s;
}

double ncc_with_stats(const GrayF32& img, const GrayF32& tpl, const TemplateStats& ts,
                      const IntegralImage& integral, int x, int y) {
  const int w = tpl.width, h = tpl.height;
  if (ts.centered_norm_sq <= kVarianceEps) return 0.0;

  double cross = 0.0;
  for (int ty = 0; ty < h; ++ty) {
    const float* irow = &img.data[static_cast<std::size_t>(y + ty) * img.width + x];
    const float* trow = &tpl.data[static_cast<std::size_t>(ty) * w];
    for (int tx = 0; tx < w; ++tx) cross += static_cast<double>(irow[tx]) * trow[tx];
  }
  const double n = static_cast<double>(w) * h;
  const double win_sum = integral.window_sum(integral.sum, x, y, w, h);
  const double win_sum_sq = integral.window_sum(integral.sum_sq, x, y, w, h);
  const double win_var = std::max(0.0, win_sum_sq - win_sum * win_sum / n);
  if (win_var <= kVarianceEps) return 0.0;
  const double num = cross - ts.mean * win_sum;
  return num / std::sqrt(win_var * ts.centered_norm_sq);
}

// Exhaustive score map; hits are 8-neighborhood local maxima >= threshold.
std::vector<ScanHit> full_scan(const GrayF32& img, const GrayF32& tpl, double threshold) {
  std::vector<ScanHit> hits;
  const int xs = img.width - tpl.width + 1;
  const int ys = img.height - tpl.height + 1;
  if (xs <= 0 || ys <= 0) return hits;

  const IntegralImage integral(img);
  const TemplateStats ts = template_stats(tpl);
  std::vector<double> scores(static_cast<std::size_t>(xs) * ys);
  for (int y = 0; y < ys; ++y) {
    for (int x = 0; x < xs; ++x) {
      scores[static_cast<std::size_t>(y) * xs + x] = ncc_with_stats(img, tpl, ts, integral, x, y);
    }
  }
  for (int y = 0; y < ys; ++y) {
    for (int x = 0; x < xs; ++x) {
      const double s = scores[static_cast<std::size_t>(y) * xs + x];
      if (s < threshold) continue;
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= xs || ny >= ys) continue;
          if (scores[static_cast<std::size_t>(ny) * xs + nx] > s) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) hits.push_back({x, y, s});
    }
  }
  return hits;
}

// Coarse-to-fine: scan at a downsampled level, then re-score candidates on
// the full-resolution rasters in a small neighborhood.
std::vector<ScanHit> pyramid_scan(const GrayF32& img, const GrayF32& tpl, double threshold) {
  GrayF32 coarse_img = img;
  GrayF32 coarse_tpl = tpl;
  int factor = 1;
  auto cost = [](const GrayF32& i, const GrayF32& t) {
    const double xs = std::max(0, i.width - t.width + 1);
    const double ys = std::max(0, i.height - t.height + 1);
    return xs * ys * t.width * t.height;
  };
  while (cost(coarse_img, coarse_tpl) > kDirectScanBudget &&
         std::min(coarse_tpl.width, coarse_tpl.height) / 2 >= kMinCoarseTemplate) {
    coarse_img = downsample2(coarse_img);
    coarse_tpl = downsample2(coarse_tpl);
    factor *= 2;
  }
  if (factor == 1) return full_scan(img, tpl, threshold);

  // Margin absorbs correlation lost to the box filter.
  const double coarse_threshold = std::max(0.5, threshold - 0.15);
  const std::vector<ScanHit> coarse_hits = full_scan(coarse_img, coarse_tpl, coarse_threshold);

  const IntegralImage integral(img);
  const TemplateStats ts = template_stats(tpl);
  const int xs = img.width - tpl.width + 1;
  const int ys = img.height - tpl.height + 1;
  const int radius = factor + 2;

  std::vector<ScanHit> hits;
  for (const ScanHit& c : coarse_hits) {
    const int cx = c.x * factor;
    const int cy = c.y * factor;
    ScanHit best{0, 0, -2.0};
    for (int y = std::max(0, cy - radius); y <= std::min(ys - 1, cy + radius); ++y) {
      for (int x = std::max(0, cx - radius); x <= std::min(xs - 1, cx + radius); ++x) {
        const double s = ncc_with_stats(img, tpl, ts, integral, x, y);
        if (s > best.score) best = {x, y, s};
      }
    }
    if (best.score >= threshold) hits.push_back(best);
  }
  return hits;
}

void draw_disk(ImageU8& img, double cx, double cy, double radius, Rgb color) {
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= radius * radius) img.set(x, y, color);
    }
  }
}

bool in_triangle(double px, double py, double ax, double ay, double bx, double by, double cx,
                 double cy) {
  auto side = [](double x1, double y1, double x2, double y2, double x, double y) {
    return (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1);
  };
  const double d1 = side(ax, ay, bx, by, px, py);
  const double d2 = side(bx, by, cx, cy, px, py);
  const double d3 = side(cx, cy, ax, ay, px, py);
  const bool has_neg = (d1 < 0) || (d2 < 0) || (d3 < 0);
  const bool has_pos = (d1 > 0) || (d2 > 0) || (d3 > 0);
  return !(has_neg && has_pos);
}

}  // namespace

ImageU8 builtin_template_image(IconClass icon) {
  const int n = 24;
  ImageU8 img = ImageU8::filled(n, n, Rgb{255, 255, 255});
  const Rgb ink{40, 40, 40};

  if (icon == IconClass::AdChoicesTriangle) {
    // Right-pointing triangle outline with an "i" mark.
    const double ax = 4, ay = 3, bx = 4, by = 21, cx = 21, cy = 12;
    const double gx = (ax + bx + cx) / 3.0, gy = (ay + by + cy) / 3.0;
    auto shrink = [&](double x, double y, double f) {
      return std::pair<double, double>{gx + (x - gx) * f, gy + (y - gy) * f};
    };
    const auto [iax, iay] = shrink(ax, ay, 0.55);
    const auto [ibx, iby] = shrink(bx, by, 0.55);
    const auto [icx, icy] = shrink(cx, cy, 0.55);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double px = x + 0.5, py = y + 0.5;
        if (in_triangle(px, py, ax, ay, bx, by, cx, cy) &&
            !in_triangle(px, py, iax, iay, ibx, iby, icx, icy)) {
          img.set(x, y, ink);
        }
      }
    }
    draw_disk(img, 9.5, 9.0, 1.4, ink);
    fill_rect(img, BBox{8, 11, 11, 16}, ink);
    return img;
  }

  if (icon == IconClass::AdClose) {
    // Circle outline with an X.
    const double c = n / 2.0, r_out = 10.0, r_in = 8.2;
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double dx = x + 0.5 - c, dy = y + 0.5 - c;
        const double d = std::sqrt(dx * dx + dy * dy);
        if (d <= r_out && d >= r_in) img.set(x, y, ink);
        if (d < r_in - 1.0 && std::abs(std::abs(dx) - std::abs(dy)) <= 1.2 && d > 1.0) {
          img.set(x, y, ink);
        }
      }
    }
    return img;
  }

  throw ArgumentError("builtin_template_image: no builtin patch for icon '" +
                      std::string(to_string(icon)) + "'");
}

std::vector<Template> builtin_templates() {
  std::vector<Template> out;
  for (const IconClass icon : {IconClass::AdChoicesTriangle, IconClass::AdClose}) {
    Template t;
    t.name = icon;
    t.patch = to_gray(builtin_template_image(icon));
    t.nominal_size = t.patch.width;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Template> load_templates_from_dir(const std::string& dir,
                                              std::vector<std::string>* warnings) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError(dir + ": template directory not found");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Template> out;
  for (const auto& path : files) {
    const auto icon = parse_icon_class(path.stem().string());
    if (!icon) {
      if (warnings)
        warnings->push_back("template dir: '" + path.filename().string() +
                            "' does not name a known icon class, ignored");
      continue;
    }
    Template t;
    t.name = *icon;
    t.patch = to_gray(load_image(path.string()));
    t.nominal_size = std::max(t.patch.width, t.patch.height);
    out.push_back(std::move(t));
  }
  return out;
}

double ncc_at(const GrayF32& img, const GrayF32& tpl, int x, int y) {
  if (x < 0 || y < 0 || x + tpl.width > img.width || y + tpl.height > img.height) {
    throw ArgumentError("ncc_at: window out of image bounds");
  }
  const IntegralImage integral(img);
  return ncc_with_stats(img, tpl, template_stats(tpl), integral, x, y);
}

std::vector<TemplateMatch> match_templates(const ImageU8& image,
                                           const std::vector<Template>& templates,
                                           const TemplateMatchParams& params,
                                           std::vector<std::string>* warnings) {
  const GrayF32 gray = to_gray(image);
  std::vector<TemplateMatch> raw;

  for (const Template& t : templates) {
    for (const double scale : params.scales) {
      const int sw = std::max(1, static_cast<int>(std::lround(t.patch.width * scale)));
      const int sh = std::max(1, static_cast<int>(std::lround(t.patch.height * scale)));
      if (sw > gray.width || sh > gray.height) {
        if (warnings)
          warnings->push_back("match_templates: template '" + std::string(to_string(t.name)) +
                              "' at scale " + std::to_string(scale) +
                              " exceeds the image, skipped");
        continue;
      }
      const GrayF32 scaled =
          (sw == t.patch.width && sh == t.patch.height) ? t.patch : resize_bilinear(t.patch, sw, sh);
      for (const ScanHit& hit : pyramid_scan(gray, scaled, params.ncc_threshold)) {
        raw.push_back({BBox{hit.x, hit.y, hit.x + sw, hit.y + sh}, t.name, hit.score});
      }
    }
  }

  std::sort(raw.begin(), raw.end(), [](const TemplateMatch& a, const TemplateMatch& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.icon != b.icon) return a.icon < b.icon;
    return bbox_less(a.bbox, b.bbox);
  });

  std::vector<TemplateMatch> kept;
  for (const TemplateMatch& cand : raw) {
    bool overlapped = false;
    for (const TemplateMatch& k : kept) {
      if (iou(k.bbox, cand.bbox) >= params.overlap_iou) {
        overlapped = true;
        break;
      }
    }
    if (!overlapped) kept.push_back(cand);
  }
  return kept;
}

void apply_template_matches(Screen& screen, const std::vector<TemplateMatch>& matches) {
  for (const TemplateMatch& m : matches) {
    UIElement el;
    el.bbox = clip(m.bbox, screen.width, screen.height);
    el.etype = ElementType::ImageView;
    el.icon = m.icon;
    el.confidence = std::min(1.0, m.score);
    el.from_template = true;
    screen.elements.push_back(std::move(el));
  }
}

}  // namespace dpscan
