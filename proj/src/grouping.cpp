#include "dpscan/grouping.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <string>

namespace dpscan {

namespace {

std::string lowercase(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::size_t levenshtein(const std::string& a, const std::string& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = (a[i - 1] == b[j - 1]) ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double text_distance(const UIElement& a, const UIElement& b) {
  const bool ha = a.has_text(), hb = b.has_text();
  if (!ha && !hb) return 0.0;
  if (ha != hb) return 0.5;
  const std::string la = lowercase(*a.text);
  const std::string lb = lowercase(*b.text);
  const std::size_t max_len = std::max(la.size(), lb.size());
  if (max_len == 0) return 0.0;
  return static_cast<double>(levenshtein(la, lb)) / static_cast<double>(max_len);
}

}  // namespace

double pairwise_distance(const UIElement& a, const UIElement& b, const GroupingParams& params,
                         int screen_w, int screen_h) {
  const double type_d = (a.etype == b.etype) ? 0.0 : 1.0;

  const double denom_size = static_cast<double>(screen_w + screen_h);
  const double size_d =
      denom_size > 0.0
          ? (std::abs(a.bbox.width() - b.bbox.width()) + std::abs(a.bbox.height() - b.bbox.height())) /
                denom_size
          : 0.0;

  const double diag = std::sqrt(static_cast<double>(screen_w) * screen_w +
                                static_cast<double>(screen_h) * screen_h);
  const double dx = a.bbox.center_x() - b.bbox.center_x();
  const double dy = a.bbox.center_y() - b.bbox.center_y();
  const double pos_d = diag > 0.0 ? std::sqrt(dx * dx + dy * dy) / diag : 0.0;

  return params.weight_type * type_d + params.weight_size * size_d +
         params.weight_position * pos_d + params.weight_text * text_distance(a, b);
}

GroupingResult dbscan(const std::vector<UIElement>& elements, const std::vector<int>& candidates,
                      const GroupingParams& params, int screen_w, int screen_h) {
  const int n = static_cast<int>(candidates.size());

  // Canonical visiting order: (y1, x1), then id.
  std::vector<int> order(candidates);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const BBox& ba = elements[a].bbox;
    const BBox& bb = elements[b].bbox;
    if (ba.y1 != bb.y1) return ba.y1 < bb.y1;
    if (ba.x1 != bb.x1) return ba.x1 < bb.x1;
    return a < b;
  });
  std::vector<int> pos_of(elements.size(), -1);
  for (int i = 0; i < n; ++i) pos_of[order[i]] = i;

  // Neighborhoods are eps-inclusive and contain the point itself.
  std::vector<std::vector<int>> neighbors(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (pairwise_distance(elements[order[i]], elements[order[j]], params, screen_w, screen_h) <=
          params.alpha) {
        neighbors[i].push_back(j);
      }
    }
  }

  constexpr int kUnvisited = -1;
  constexpr int kNoise = -2;
  std::vector<int> label(n, kUnvisited);
  int next_cluster = 0;

  for (int i = 0; i < n; ++i) {
    if (label[i] != kUnvisited) continue;
    if (static_cast<int>(neighbors[i].size()) < params.beta) {
      label[i] = kNoise;
      continue;
    }
    const int cluster = next_cluster++;
    label[i] = cluster;
    std::deque<int> seeds(neighbors[i].begin(), neighbors[i].end());
    while (!seeds.empty()) {
      const int q = seeds.front();
      seeds.pop_front();
      if (label[q] == kNoise) label[q] = cluster;  // border point
      if (label[q] != kUnvisited) continue;
      label[q] = cluster;
      if (static_cast<int>(neighbors[q].size()) >= params.beta) {
        for (const int r : neighbors[q]) seeds.push_back(r);
      }
    }
  }

  GroupingResult result;
  result.groups.assign(next_cluster, {});
  for (int i = 0; i < n; ++i) {
    if (label[i] >= 0) {
      result.groups[label[i]].push_back(order[i]);
    } else {
      result.outliers.push_back(order[i]);
    }
  }
  for (auto& g : result.groups) std::sort(g.begin(), g.end());
  std::sort(result.outliers.begin(), result.outliers.end());
  std::sort(result.groups.begin(), result.groups.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
  return result;
}

void group_elements(Screen& screen, const GroupingParams& params) {
  std::vector<int> candidates;
  for (int i = 0; i < static_cast<int>(screen.elements.size()); ++i) {
    if (is_groupable(screen.elements[i].etype)) candidates.push_back(i);
  }
  const GroupingResult result =
      dbscan(screen.elements, candidates, params, screen.width, screen.height);
  screen.groups = result.groups;
  for (auto& el : screen.elements) el.group_id.reset();
  for (int g = 0; g < static_cast<int>(result.groups.size()); ++g) {
    for (const int id : result.groups[g]) screen.elements[id].group_id = g;
  }
}

}  // namespace dpscan
