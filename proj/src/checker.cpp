#include "dpscan/checker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>

#include "dpscan/color.hpp"

namespace dpscan {

namespace {

std::string format_double(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string snippet(const std::string& text) {
  constexpr std::size_t kMax = 60;
  if (text.size() <= kMax) return text;
  return text.substr(0, kMax) + "...";
}

std::string render(std::string tmpl, const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    const std::string needle = "{" + key + "}";
    std::size_t pos = 0;
    while ((pos = tmpl.find(needle, pos)) != std::string::npos) {
      tmpl.replace(pos, needle.size(), value);
      pos += value.size();
    }
  }
  return tmpl;
}

// Ablation masking. Ad-specific icon classes belong to the template-matching
// layer, every other icon class to the icon-semantic layer.
bool icon_layer_enabled(IconClass icon, const StageFlags& stages) {
  if (icon == IconClass::AdChoicesTriangle || icon == IconClass::AdClose)
    return stages.template_matching;
  return stages.icon_semantic;
}

bool element_visible(const UIElement& el, const StageFlags& stages) {
  return !(el.from_template && !stages.template_matching);
}

std::optional<IconClass> effective_icon(const UIElement& el, const StageFlags& stages) {
  if (!el.icon) return std::nullopt;
  if (!icon_layer_enabled(*el.icon, stages)) return std::nullopt;
  return el.icon;
}

WidgetStatus effective_status(const UIElement& el, const StageFlags& stages) {
  if (!is_togglable(el.etype)) return WidgetStatus::NotApplicable;
  return stages.status_recognition ? el.status : WidgetStatus::Unknown;
}

std::optional<ColorPair> effective_colors(const UIElement& el, const StageFlags& stages) {
  return stages.color_grouping ? el.colors : std::nullopt;
}

std::optional<int> effective_group(const UIElement& el, const StageFlags& stages) {
  return stages.color_grouping ? el.group_id : std::nullopt;
}

const TextPattern* match_first(const std::vector<TextPattern>& patterns, const std::string& text) {
  for (const auto& p : patterns) {
    if (match_text(p, text)) return &p;
  }
  return nullptr;
}

struct CheckContext {
  const Screen& screen;
  const CheckerParams& params;
  const StageFlags& stages;
  std::optional<Rgb> screen_bg;

  CheckContext(const Screen& s, const CheckerParams& p, const StageFlags& f)
      : screen(s), params(p), stages(f) {
    if (!s.image.empty()) screen_bg = extract_colors(s.image).background;
  }

  const UIElement& el(int i) const { return screen.elements[i]; }
  bool visible(int i) const { return element_visible(el(i), stages); }
  int count() const { return static_cast<int>(screen.elements.size()); }
};

Finding finalize(DPType type, std::vector<Evidence> evidence, std::string explanation,
                 const Screen& screen) {
  Finding f;
  f.dp_type = type;
  f.tier = tier_of(type);
  std::sort(evidence.begin(), evidence.end(), [](const Evidence& a, const Evidence& b) {
    if (a.element != b.element) return a.element < b.element;
    return a.role < b.role;
  });
  evidence.erase(std::unique(evidence.begin(), evidence.end()), evidence.end());
  f.evidence = std::move(evidence);
  std::vector<BBox> boxes;
  boxes.reserve(f.evidence.size());
  for (const auto& ev : f.evidence) boxes.push_back(screen.elements[ev.element].bbox);
  f.container = clip(union_box(boxes), screen.width, screen.height);
  f.explanation = std::move(explanation);
  return f;
}

// --- ad indicator -----------------------------------------------------------

bool badge_text_matches(const std::vector<TextPattern>& badge_patterns, const UIElement& el) {
  if (!el.has_text()) return false;
  return match_first(badge_patterns, *el.text) != nullptr;
}

std::optional<std::string> indicator_descriptor(const UIElement& el,
                                                const std::vector<TextPattern>& badge_patterns,
                                                const std::vector<IconClass>& ad_icons,
                                                const StageFlags& stages) {
  if (badge_text_matches(badge_patterns, el)) return "'" + snippet(*el.text) + "' badge";
  const auto icon = effective_icon(el, stages);
  if (icon && std::find(ad_icons.begin(), ad_icons.end(), *icon) != ad_icons.end()) {
    return std::string(to_string(*icon)) + " icon";
  }
  return std::nullopt;
}

std::string indicator_role(const UIElement& el, const std::vector<TextPattern>& badge_patterns,
                           const StageFlags& stages) {
  if (badge_text_matches(badge_patterns, el)) return "ad-indicator(text:ad-badge)";
  const auto icon = effective_icon(el, stages);
  return "ad-indicator(icon:" + std::string(icon ? to_string(*icon) : "other") + ")";
}

}  // namespace

std::vector<std::string> stage_names() {
  return {"icon_semantic", "template_matching", "status_recognition", "color_grouping"};
}

bool apply_stage_name(StageFlags& flags, const std::string& name, bool value) {
  if (name == "icon_semantic") {
    flags.icon_semantic = value;
  } else if (name == "template_matching") {
    flags.template_matching = value;
  } else if (name == "status_recognition") {
    flags.status_recognition = value;
  } else if (name == "color_grouping") {
    flags.color_grouping = value;
  } else {
    return false;
  }
  return true;
}

BBox dialog_cluster_box(const Screen& screen, int seed, const CheckerParams& params,
                        const StageFlags& stages) {
  const double max_area =
      params.popup_max_area_frac * static_cast<double>(screen.width) * screen.height;
  const int gap =
      static_cast<int>(std::lround(params.popup_gap_frac * std::max(screen.width, screen.height)));

  BBox box = screen.elements[seed].bbox;
  std::vector<bool> absorbed(screen.elements.size(), false);
  absorbed[seed] = true;

  bool grew = true;
  while (grew) {
    grew = false;
    for (int i = 0; i < static_cast<int>(screen.elements.size()); ++i) {
      if (absorbed[i] || !element_visible(screen.elements[i], stages)) continue;
      const BBox& b = screen.elements[i].bbox;
      // Screen-spanning backdrops do not join the dialog cluster.
      if (static_cast<double>(b.area()) > max_area) continue;
      const int dx = std::max({b.x1 - box.x2, box.x1 - b.x2, 0});
      const int dy = std::max({b.y1 - box.y2, box.y1 - b.y2, 0});
      if (dx <= gap && dy <= gap) {
        absorbed[i] = true;
        box.x1 = std::min(box.x1, b.x1);
        box.y1 = std::min(box.y1, b.y1);
        box.x2 = std::max(box.x2, b.x2);
        box.y2 = std::max(box.y2, b.y2);
        grew = true;
      }
    }
  }
  return box;
}

bool is_popup_box(const BBox& box, const Screen& screen, const CheckerParams& params) {
  const double screen_area = static_cast<double>(screen.width) * screen.height;
  if (screen_area <= 0.0) return false;
  const double frac = static_cast<double>(box.area()) / screen_area;
  if (frac < params.popup_min_area_frac || frac > params.popup_max_area_frac) return false;
  const double margin = params.popup_margin_frac * screen.width;
  return box.x1 >= margin && (screen.width - box.x2) >= margin;
}

bool is_ad_indicator(const UIElement& el, const RuleSpec& rule, const StageFlags& stages) {
  return indicator_descriptor(el, rule.patterns, rule.required_icons, stages).has_value();
}

namespace {

// Nearest Checkbox/Switch/ToggleButton whose center lies within
// adjacency_factor * text height of the text center, vertically or
// horizontally.
std::optional<int> find_adjacent_togglable(const CheckContext& ctx, int text_idx) {
  const UIElement& text_el = ctx.el(text_idx);
  const double reach = ctx.params.adjacency_factor * text_el.bbox.height();
  std::optional<int> best;
  double best_dist = 0.0;
  for (int i = 0; i < ctx.count(); ++i) {
    if (i == text_idx || !ctx.visible(i)) continue;
    const UIElement& w = ctx.el(i);
    if (!is_togglable(w.etype)) continue;
    const double dx = std::abs(w.bbox.center_x() - text_el.bbox.center_x());
    const double dy = std::abs(w.bbox.center_y() - text_el.bbox.center_y());
    if (dy > reach && dx > reach) continue;
    const double dist = std::sqrt(dx * dx + dy * dy);
    if (!best || dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

// One finding per element whose text matches a primary pattern.
std::vector<Finding> eval_text_only(const RuleSpec& rule, const CheckContext& ctx) {
  std::vector<Finding> out;
  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i) || !ctx.el(i).has_text()) continue;
    const TextPattern* p = match_first(rule.patterns, *ctx.el(i).text);
    if (!p) continue;
    const std::string explanation = render(rule.explanation, {{"text", snippet(*ctx.el(i).text)}});
    out.push_back(finalize(rule.dp_type, {{i, "text:" + p->id}}, explanation, ctx.screen));
  }
  return out;
}

std::vector<Finding> eval_popup_ad(const RuleSpec& rule, const CheckContext& ctx) {
  std::vector<Finding> out;
  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i)) continue;
    const auto desc = indicator_descriptor(ctx.el(i), rule.patterns, rule.required_icons, ctx.stages);
    if (!desc) continue;
    const BBox cluster = dialog_cluster_box(ctx.screen, i, ctx.params, ctx.stages);
    if (!is_popup_box(cluster, ctx.screen, ctx.params)) continue;

    std::vector<Evidence> evidence{{i, indicator_role(ctx.el(i), rule.patterns, ctx.stages)}};
    for (int j = 0; j < ctx.count(); ++j) {
      if (j == i || !ctx.visible(j)) continue;
      if (contains(cluster, ctx.el(j).bbox)) evidence.push_back({j, "popup-member"});
    }
    const double area_pct = 100.0 * static_cast<double>(cluster.area()) /
                            (static_cast<double>(ctx.screen.width) * ctx.screen.height);
    const std::string explanation = render(
        rule.explanation, {{"indicator", *desc}, {"area_pct", format_double(area_pct, 0)}});
    out.push_back(finalize(rule.dp_type, std::move(evidence), explanation, ctx.screen));
  }
  return out;
}

std::vector<Finding> eval_rate(const RuleSpec& rule, const CheckContext& ctx,
                               std::vector<Abstention>* abstentions) {
  std::vector<Finding> out;
  if (!ctx.stages.icon_semantic) {
    if (abstentions) abstentions->push_back({rule.dp_type, "icon_semantic"});
    return out;
  }
  std::vector<int> stars;
  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i)) continue;
    const auto icon = effective_icon(ctx.el(i), ctx.stages);
    if (icon &&
        std::find(rule.required_icons.begin(), rule.required_icons.end(), *icon) !=
            rule.required_icons.end()) {
      stars.push_back(i);
    }
  }
  if (stars.empty()) return out;

  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i) || !ctx.el(i).has_text()) continue;
    const TextPattern* p = match_first(rule.patterns, *ctx.el(i).text);
    if (!p) continue;
    std::vector<Evidence> evidence{{i, "rate-prompt(text:" + p->id + ")"}};
    for (const int s : stars) {
      evidence.push_back({s, "star-icon(icon:" + std::string(to_string(*ctx.el(s).icon)) + ")"});
    }
    const std::string explanation =
        render(rule.explanation,
               {{"text", snippet(*ctx.el(i).text)}, {"stars", std::to_string(stars.size())}});
    out.push_back(finalize(rule.dp_type, std::move(evidence), explanation, ctx.screen));
  }
  return out;
}

// Co-occurrence of a primary-pattern element and a distinct secondary-pattern
// element (one screen-level finding), used by the currency rule.
std::vector<Finding> eval_currency(const RuleSpec& rule, const CheckContext& ctx) {
  std::vector<std::pair<int, const TextPattern*>> primary, secondary;
  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i) || !ctx.el(i).has_text()) continue;
    if (const TextPattern* p = match_first(rule.patterns, *ctx.el(i).text)) primary.push_back({i, p});
    if (const TextPattern* s = match_first(rule.secondary_patterns, *ctx.el(i).text))
      secondary.push_back({i, s});
  }
  bool has_pair = false;
  for (const auto& [pi, pp] : primary) {
    for (const auto& [si, sp] : secondary) {
      if (pi != si) has_pair = true;
    }
  }
  if (!has_pair) return {};

  std::map<int, std::string> roles;
  std::string virtual_text, real_text;
  for (const auto& [i, p] : primary) {
    roles[i] = "virtual-currency(text:" + p->id + ")";
    if (virtual_text.empty()) virtual_text = snippet(*ctx.el(i).text);
  }
  for (const auto& [i, s] : secondary) {
    if (roles.count(i)) {
      roles[i] = "virtual+real-currency";
    } else {
      roles[i] = "real-currency(text:" + s->id + ")";
    }
    if (real_text.empty()) real_text = snippet(*ctx.el(i).text);
  }
  std::vector<Evidence> evidence;
  for (const auto& [i, role] : roles) evidence.push_back({i, role});
  const std::string explanation =
      render(rule.explanation, {{"virtual", virtual_text}, {"real", real_text}});
  std::vector<Finding> out;
  out.push_back(finalize(rule.dp_type, std::move(evidence), explanation, ctx.screen));
  return out;
}

std::vector<Finding> eval_forced_continuity(const RuleSpec& rule, const CheckContext& ctx) {
  std::vector<Finding> out;
  std::vector<std::pair<int, const TextPattern*>> primary, secondary;
  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i) || !ctx.el(i).has_text()) continue;
    const TextPattern* p = match_first(rule.patterns, *ctx.el(i).text);
    const TextPattern* s = match_first(rule.secondary_patterns, *ctx.el(i).text);
    if (p && s) {
      // Both halves inside one element ("7 days free, then $84.00/year").
      const std::string explanation =
          render(rule.explanation, {{"text", snippet(*ctx.el(i).text)}});
      out.push_back(finalize(rule.dp_type,
                             {{i, "free-trial+charge(text:" + p->id + "+" + s->id + ")"}},
                             explanation, ctx.screen));
    } else if (p) {
      primary.push_back({i, p});
    } else if (s) {
      secondary.push_back({i, s});
    }
  }
  if (out.empty() && !primary.empty() && !secondary.empty()) {
    std::vector<Evidence> evidence;
    for (const auto& [i, p] : primary) evidence.push_back({i, "free-trial-offer(text:" + p->id + ")"});
    for (const auto& [i, s] : secondary)
      evidence.push_back({i, "post-trial-charge(text:" + s->id + ")"});
    const std::string explanation =
        render(rule.explanation, {{"text", snippet(*ctx.el(primary.front().first).text)}});
    out.push_back(finalize(rule.dp_type, std::move(evidence), explanation, ctx.screen));
  }
  return out;
}

std::vector<Finding> eval_preselection_checked(const RuleSpec& rule, const CheckContext& ctx,
                                               std::vector<Abstention>* abstentions) {
  std::vector<Finding> out;
  if (!ctx.stages.status_recognition) {
    if (abstentions) abstentions->push_back({rule.dp_type, "status_recognition"});
    return out;
  }
  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i) || !ctx.el(i).has_text()) continue;
    const TextPattern* p = match_first(rule.patterns, *ctx.el(i).text);
    if (!p) continue;
    const auto widget = find_adjacent_togglable(ctx, i);
    if (!widget) continue;
    if (effective_status(ctx.el(*widget), ctx.stages) != WidgetStatus::Checked) continue;
    const std::string explanation =
        render(rule.explanation, {{"text", snippet(*ctx.el(i).text)},
                                  {"widget", std::string(to_string(ctx.el(*widget).etype))}});
    out.push_back(finalize(rule.dp_type,
                           {{i, "preselection-prompt(text:" + p->id + ")"},
                            {*widget, "checked-widget(status:checked)"}},
                           explanation, ctx.screen));
  }
  return out;
}

std::vector<Finding> eval_preselection_no_checkbox(const RuleSpec& rule, const CheckContext& ctx) {
  for (int i = 0; i < ctx.count(); ++i) {
    if (ctx.el(i).etype == ElementType::Checkbox) return {};
  }
  return eval_text_only(rule, ctx);
}

std::vector<Finding> eval_false_hierarchy(const RuleSpec& rule, const CheckContext& ctx,
                                          std::vector<Abstention>* abstentions) {
  std::vector<Finding> out;
  if (!ctx.stages.color_grouping) {
    if (abstentions) abstentions->push_back({rule.dp_type, "color_grouping"});
    return out;
  }
  for (const auto& group : ctx.screen.groups) {
    if (group.size() < 2) continue;
    std::vector<int> dismissive, other;
    for (const int id : group) {
      if (!ctx.visible(id)) continue;
      const UIElement& el = ctx.el(id);
      if (el.has_text() && match_first(rule.patterns, *el.text)) {
        dismissive.push_back(id);
      } else if (el.has_text()) {
        other.push_back(id);
      }
    }
    bool reported = false;
    for (const int d : dismissive) {
      if (reported) break;
      const auto dc = effective_colors(ctx.el(d), ctx.stages);
      if (!dc) continue;
      for (const int a : other) {
        const auto ac = effective_colors(ctx.el(a), ctx.stages);
        if (!ac) continue;
        const double bg_contrast = contrast(ac->background, dc->background);
        bool salient = bg_contrast > ctx.params.saliency_threshold;
        if (!salient && ctx.screen_bg) {
          const double a_vs_screen = contrast(ac->background, *ctx.screen_bg);
          const double d_vs_screen = contrast(dc->background, *ctx.screen_bg);
          salient = (d_vs_screen <= ctx.params.screen_bg_tolerance &&
                     a_vs_screen > ctx.params.saliency_threshold) ||
                    (a_vs_screen <= ctx.params.screen_bg_tolerance &&
                     d_vs_screen > ctx.params.saliency_threshold);
        }
        if (!salient) {
          const double own_a = contrast(ac->foreground, ac->background);
          const double own_d = contrast(dc->foreground, dc->background);
          salient = std::abs(own_a - own_d) > ctx.params.saliency_threshold;
        }
        if (!salient) continue;

        auto bg_role = [](const char* kind, const ColorPair& c) {
          return std::string(kind) + "(bg:" + std::to_string(c.background.r) + "," +
                 std::to_string(c.background.g) + "," + std::to_string(c.background.b) + ")";
        };
        const std::string explanation =
            render(rule.explanation, {{"salient", snippet(*ctx.el(a).text)},
                                      {"dismissive", snippet(*ctx.el(d).text)},
                                      {"contrast", format_double(bg_contrast, 1)}});
        out.push_back(finalize(rule.dp_type,
                               {{a, bg_role("salient-option", *ac)},
                                {d, bg_role("dismissive-option", *dc)}},
                               explanation, ctx.screen));
        reported = true;
        break;
      }
    }
  }
  return out;
}

std::vector<Finding> eval_disguised_ad(const RuleSpec& rule, const CheckContext& ctx) {
  std::vector<Finding> out;
  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i)) continue;
    const auto desc = indicator_descriptor(ctx.el(i), rule.patterns, rule.required_icons, ctx.stages);
    if (!desc) continue;
    const BBox cluster = dialog_cluster_box(ctx.screen, i, ctx.params, ctx.stages);
    if (is_popup_box(cluster, ctx.screen, ctx.params)) continue;  // that is NG-POPUP-AD territory

    // Host block: smallest strictly-larger element containing the indicator.
    std::optional<int> host;
    for (int j = 0; j < ctx.count(); ++j) {
      if (j == i || !ctx.visible(j)) continue;
      const BBox& hb = ctx.el(j).bbox;
      if (hb.area() <= ctx.el(i).bbox.area()) continue;
      if (!contains(hb, ctx.el(i).bbox)) continue;
      if (!host || hb.area() < ctx.el(*host).bbox.area()) host = j;
    }
    if (!host) continue;

    const UIElement& host_el = ctx.el(*host);
    const auto host_group = effective_group(host_el, ctx.stages);
    std::optional<int> sibling;
    std::string similarity;
    for (int j = 0; j < ctx.count(); ++j) {
      if (j == i || j == *host || !ctx.visible(j)) continue;
      const UIElement& s = ctx.el(j);
      if (contains(host_el.bbox, s.bbox)) continue;  // must be a sibling, not a child
      if (host_group && effective_group(s, ctx.stages) == host_group) {
        sibling = j;
        similarity = "group:" + std::to_string(*host_group);
        break;
      }
      const double tol = ctx.params.size_similarity;
      if (std::abs(s.bbox.width() - host_el.bbox.width()) <= tol * host_el.bbox.width() &&
          std::abs(s.bbox.height() - host_el.bbox.height()) <= tol * host_el.bbox.height()) {
        sibling = j;
        similarity = "size-within-" + format_double(tol * 100.0, 0) + "%";
        break;
      }
    }
    if (!sibling) continue;

    const std::string explanation = render(rule.explanation, {{"indicator", *desc}});
    out.push_back(finalize(rule.dp_type,
                           {{*host, "ad-block(" + similarity + ")"},
                            {i, indicator_role(ctx.el(i), rule.patterns, ctx.stages)}},
                           explanation, ctx.screen));
  }
  return out;
}

std::vector<Finding> eval_small_close(const RuleSpec& rule, const CheckContext& ctx,
                                      std::vector<Abstention>* abstentions) {
  std::vector<Finding> out;
  if (!ctx.stages.icon_semantic && !ctx.stages.template_matching) {
    if (abstentions) abstentions->push_back({rule.dp_type, "icon_semantic+template_matching"});
    return out;
  }
  const double limit = ctx.params.smallness_frac * ctx.screen.width;
  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i)) continue;
    const auto icon = effective_icon(ctx.el(i), ctx.stages);
    if (!icon || std::find(rule.required_icons.begin(), rule.required_icons.end(), *icon) ==
                     rule.required_icons.end())
      continue;
    const BBox& b = ctx.el(i).bbox;
    if (b.width() >= limit || b.height() >= limit) continue;
    const std::string explanation =
        render(rule.explanation, {{"w", std::to_string(b.width())},
                                  {"h", std::to_string(b.height())},
                                  {"sw", std::to_string(ctx.screen.width)}});
    out.push_back(finalize(rule.dp_type,
                           {{i, "small-close(icon:" + std::string(to_string(*icon)) + ")"}},
                           explanation, ctx.screen));
  }
  return out;
}

std::vector<Finding> eval_privacy_zuckering(const RuleSpec& rule, const CheckContext& ctx) {
  std::vector<Finding> out;
  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i) || !ctx.el(i).has_text()) continue;
    const TextPattern* p = match_first(rule.patterns, *ctx.el(i).text);
    if (!p) continue;
    std::vector<Evidence> evidence{{i, "data-sharing-prompt(text:" + p->id + ")"}};
    // Optional corroboration by an adjacent checked widget.
    if (ctx.stages.status_recognition) {
      const auto widget = find_adjacent_togglable(ctx, i);
      if (widget && effective_status(ctx.el(*widget), ctx.stages) == WidgetStatus::Checked) {
        evidence.push_back({*widget, "checked-widget(status:checked)"});
      }
    }
    const std::string explanation = render(rule.explanation, {{"text", snippet(*ctx.el(i).text)}});
    out.push_back(finalize(rule.dp_type, std::move(evidence), explanation, ctx.screen));
  }
  return out;
}

std::vector<Finding> eval_countdown_ad(const RuleSpec& rule, const CheckContext& ctx) {
  std::vector<Finding> out;
  std::vector<int> indicators;
  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i)) continue;
    if (indicator_descriptor(ctx.el(i), rule.secondary_patterns, rule.required_icons, ctx.stages))
      indicators.push_back(i);
  }
  if (indicators.empty()) return out;

  for (int i = 0; i < ctx.count(); ++i) {
    if (!ctx.visible(i) || !ctx.el(i).has_text()) continue;
    const TextPattern* p = match_first(rule.patterns, *ctx.el(i).text);
    if (!p) continue;
    // Nearest indicator joins the evidence.
    int best = indicators.front();
    double best_dist = -1.0;
    for (const int c : indicators) {
      if (c == i) continue;
      const double dx = ctx.el(c).bbox.center_x() - ctx.el(i).bbox.center_x();
      const double dy = ctx.el(c).bbox.center_y() - ctx.el(i).bbox.center_y();
      const double dist = std::sqrt(dx * dx + dy * dy);
      if (best_dist < 0.0 || dist < best_dist) {
        best = c;
        best_dist = dist;
      }
    }
    if (best == i && indicators.size() == 1 && !badge_text_matches(rule.secondary_patterns, ctx.el(i)))
      continue;
    const auto desc =
        indicator_descriptor(ctx.el(best), rule.secondary_patterns, rule.required_icons, ctx.stages);
    std::vector<Evidence> evidence{{i, "countdown(text:" + p->id + ")"}};
    if (best != i)
      evidence.push_back({best, indicator_role(ctx.el(best), rule.secondary_patterns, ctx.stages)});
    const std::string explanation = render(
        rule.explanation,
        {{"text", snippet(*ctx.el(i).text)}, {"indicator", desc.value_or("ad indicator")}});
    out.push_back(finalize(rule.dp_type, std::move(evidence), explanation, ctx.screen));
  }
  return out;
}

}  // namespace

std::vector<Finding> evaluate_rule(const RuleSpec& rule, const Screen& screen,
                                   const CheckerParams& params, const StageFlags& stages,
                                   std::vector<Abstention>* abstentions) {
  const CheckContext ctx(screen, params, stages);
  switch (rule.dp_type) {
    case DPType::NgPopupAd:
      return eval_popup_ad(rule, ctx);
    case DPType::NgRate:
      return eval_rate(rule, ctx, abstentions);
    case DPType::NgUpgrade:
      return eval_text_only(rule, ctx);
    case DPType::ObIntermediateCurrency:
      return eval_currency(rule, ctx);
    case DPType::SnForcedContinuity:
      return eval_forced_continuity(rule, ctx);
    case DPType::IiPreselectionChecked:
      return eval_preselection_checked(rule, ctx, abstentions);
    case DPType::IiPreselectionNoCheckbox:
      return eval_preselection_no_checkbox(rule, ctx);
    case DPType::IiFalseHierarchy:
      return eval_false_hierarchy(rule, ctx, abstentions);
    case DPType::IiDisguisedAd:
      return eval_disguised_ad(rule, ctx);
    case DPType::IiSmallClose:
      return eval_small_close(rule, ctx, abstentions);
    case DPType::FaSocialPyramid:
    case DPType::FaGamification:
    case DPType::FaWatchAd:
    case DPType::FaPayAvoidAds:
      return eval_text_only(rule, ctx);
    case DPType::FaPrivacyZuckering:
      return eval_privacy_zuckering(rule, ctx);
    case DPType::FaCountdownAd:
      return eval_countdown_ad(rule, ctx);
  }
  return {};
}

CheckResult check_screen(const Screen& screen, const std::vector<RuleSpec>& rules,
                         const CheckerParams& params, const StageFlags& stages) {
  CheckResult result;
  for (const RuleSpec& rule : rules) {
    if (!rule.enabled) continue;
    auto findings = evaluate_rule(rule, screen, params, stages, &result.abstentions);
    result.findings.insert(result.findings.end(), std::make_move_iterator(findings.begin()),
                           std::make_move_iterator(findings.end()));
  }

  // Merge same-type findings whose containers overlap strongly.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < result.findings.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < result.findings.size(); ++j) {
        Finding& a = result.findings[i];
        const Finding& b = result.findings[j];
        if (a.dp_type != b.dp_type) continue;
        if (iou(a.container, b.container) < params.dedup_iou) continue;
        std::vector<Evidence> evidence = a.evidence;
        evidence.insert(evidence.end(), b.evidence.begin(), b.evidence.end());
        Finding combined = finalize(a.dp_type, std::move(evidence), a.explanation, screen);
        result.findings[i] = std::move(combined);
        result.findings.erase(result.findings.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
        break;
      }
    }
  }

  std::sort(result.findings.begin(), result.findings.end(), [](const Finding& a, const Finding& b) {
    if (strategy_of(a.dp_type) != strategy_of(b.dp_type))
      return strategy_of(a.dp_type) < strategy_of(b.dp_type);
    if (a.dp_type != b.dp_type) return a.dp_type < b.dp_type;
    return bbox_less(a.container, b.container);
  });
  return result;
}

}  // namespace dpscan
