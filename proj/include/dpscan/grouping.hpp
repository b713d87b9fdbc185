#pragma once

#include <vector>

#include "dpscan/model.hpp"

namespace dpscan {

// DBSCAN parameters over the composite element distance.
struct GroupingParams {
  double alpha = 0.18;  // distance threshold (eps)
  int beta = 2;         // density threshold (minPts, neighborhood includes the point)
  double weight_type = 0.40;
  double weight_size = 0.25;
  double weight_position = 0.25;
  double weight_text = 0.10;
};

// Weighted sum of four feature distances:
//   type: 0 if equal element types, else 1
//   size: (|dw| + |dh|) / (screen_w + screen_h)
//   position: center distance / screen diagonal
//   text: 1 - normalized Levenshtein similarity of lowercased texts;
//         0.5 when exactly one text is missing, 0 when both are.
double pairwise_distance(const UIElement& a, const UIElement& b, const GroupingParams& params,
                         int screen_w, int screen_h);

struct GroupingResult {
  std::vector<std::vector<int>> groups;  // element ids, each sorted ascending
  std::vector<int> outliers;
};

// Standard DBSCAN over the candidate ids with eps = alpha, minPts = beta
// (inclusive neighborhood). Border points reachable from several clusters go
// to the first cluster in deterministic (y1, x1) element order.
GroupingResult dbscan(const std::vector<UIElement>& elements, const std::vector<int>& candidates,
                      const GroupingParams& params, int screen_w, int screen_h);

// Filters the groupable candidates (TextView/Button/ImageButton), clusters
// them, and writes group ids back onto the screen.
void group_elements(Screen& screen, const GroupingParams& params);

}  // namespace dpscan
