#include "dpscan/rules.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "dpscan/errors.hpp"
#include "dpscan/json_util.hpp"
#include "dpscan/sidecar.hpp"

namespace dpscan {

namespace {

struct DPTypeInfo {
  DPType type;
  std::string_view name;
  Strategy strategy;
  Tier tier;
};

constexpr DPTypeInfo kDPTypes[] = {
#define DPSCAN_X(name, str, strat, tier) {DPType::name, str, strat, tier},
    DPSCAN_DP_TYPE_LIST(DPSCAN_X)
#undef DPSCAN_X
};

const DPTypeInfo& info(DPType t) { return kDPTypes[static_cast<int>(t)]; }

}  // namespace

std::string_view to_string(DPType t) { return info(t).name; }

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Nagging:
      return "NG";
    case Strategy::Obstruction:
      return "OB";
    case Strategy::Sneaking:
      return "SN";
    case Strategy::InterfaceInterference:
      return "II";
    case Strategy::ForcedAction:
      return "FA";
  }
  return "NG";
}

std::string_view to_string(Tier t) { return t == Tier::Certain ? "certain" : "warning"; }

std::optional<DPType> parse_dp_type(std::string_view s) {
  for (const auto& i : kDPTypes) {
    if (i.name == s) return i.type;
  }
  return std::nullopt;
}

std::optional<Strategy> parse_strategy(std::string_view s) {
  if (s == "NG") return Strategy::Nagging;
  if (s == "OB") return Strategy::Obstruction;
  if (s == "SN") return Strategy::Sneaking;
  if (s == "II") return Strategy::InterfaceInterference;
  if (s == "FA") return Strategy::ForcedAction;
  return std::nullopt;
}

Strategy strategy_of(DPType t) { return info(t).strategy; }
Tier tier_of(DPType t) { return info(t).tier; }

std::vector<DPType> all_dp_types() {
  std::vector<DPType> out;
  for (const auto& i : kDPTypes) out.push_back(i.type);
  return out;
}

TextPattern TextPattern::make(DPType type, std::string id, std::string source) {
  TextPattern p;
  p.dp_type = type;
  p.id = std::move(id);
  p.source = std::move(source);
  try {
    p.compiled = std::regex(p.source, std::regex::ECMAScript | std::regex::icase);
  } catch (const std::regex_error& e) {
    throw SchemaError("text pattern '" + p.id + "': invalid regex: " + e.what());
  }
  return p;
}

bool match_text(const TextPattern& pattern, const std::string& text) {
  return std::regex_search(text, pattern.compiled);
}

namespace {

RuleSpec make_rule(DPType type, std::string explanation,
                   std::vector<std::pair<const char*, const char*>> patterns,
                   std::vector<std::pair<const char*, const char*>> secondary = {},
                   std::vector<IconClass> icons = {}, std::vector<WidgetStatus> statuses = {}) {
  RuleSpec rule;
  rule.dp_type = type;
  rule.explanation = std::move(explanation);
  for (const auto& [id, src] : patterns) rule.patterns.push_back(TextPattern::make(type, id, src));
  for (const auto& [id, src] : secondary)
    rule.secondary_patterns.push_back(TextPattern::make(type, id, src));
  rule.required_icons = std::move(icons);
  rule.required_statuses = std::move(statuses);
  return rule;
}

}  // namespace

std::vector<RuleSpec> builtin_rules() {
  std::vector<RuleSpec> rules;

  rules.push_back(make_rule(
      DPType::NgPopupAd,
      "Advertisement inside a pop-up dialog: indicator {indicator} sits in a dialog covering "
      "{area_pct}% of the screen.",
      {{"ad-badge", R"(^\s*(ad|ads)\b)"}}, {},
      {IconClass::AdChoicesTriangle, IconClass::AdClose}));

  rules.push_back(make_rule(
      DPType::NgRate,
      "Pop-up asks for a rating: '{text}' together with {stars} star icon(s).",
      {{"enjoy-rate", R"(if\s+you\s+(enjoy|like|love)[\s\S]{0,80}?(rate|rating|review))"},
       {"rate-us", R"(\b(please\s+)?rate\s+(us|this\s+app|our\s+app|the\s+app|it\s+now)\b)"},
       {"five-stars", R"(\b(give\s+us\s+)?(5|five)\s*[- ]?stars?\b)"}},
      {}, {IconClass::Star}));

  rules.push_back(make_rule(
      DPType::NgUpgrade, "Prompt pushes a paid upgrade: '{text}'.",
      {{"upgrade-to", R"(\bupgrade\s+(to|now|your|and)\b)"},
       {"go-premium", R"(\b(go|get|unlock|buy|try)\s+(premium|pro)\b)"},
       {"premium-version", R"(\b(premium|pro)\s+(version|plan|membership|upgrade|account)\b)"}}));

  rules.push_back(make_rule(
      DPType::ObIntermediateCurrency,
      "Virtual currency is sold for real money: '{virtual}' co-occurs with '{real}'.",
      {{"virtual-currency", R"(\b(coins?|gems?|tokens?|credits?|diamonds?)\b)"}},
      {{"real-currency",
        R"((\$|€|£)\s?\d+|\b(usd|eur|gbp)\b|\b\d+([.,]\d{2})\s?(\$|€|£))"}}));

  rules.push_back(make_rule(
      DPType::SnForcedContinuity,
      "Free trial converts into a recurring charge: '{text}'.",
      {{"free-trial",
        R"(\b(free\s+trial|\d+\s*[- ]?(day|days|week|weeks|month|months)\s+free|try\s+(it\s+)?free)\b)"}},
      {{"post-trial-charge",
        R"(\bthen\s+(\$|€|£)?\d+([.,]\d{2})?\s*(\/|per\s+)(month|year|week|mo|yr)|\bauto[- ]?renew|\bbilled\s+(monthly|annually|yearly)\b|(\$|€|£)\d+([.,]\d{2})?\s*(\/|per\s+)(month|year|week))"}}));

  rules.push_back(make_rule(
      DPType::IiPreselectionChecked,
      "Option is preselected: '{text}' next to a checked {widget}.",
      {{"tos-consent",
        R"(\b(i\s+)?(agree|accept|consent)\b[\s\S]{0,60}?\b(terms|privacy\s+policy|policies|agreement|conditions)\b)"},
       {"subscribe-optin",
        R"(\b(subscribe|sign\s+me\s+up|email\s+me|send\s+me|keep\s+me)\b[\s\S]{0,60}?\b(newsletter|updates|offers|news|emails?|promotions|tips|posted)\b)"},
       {"notifications-optin", R"(\b(enable|receive|get|allow)\b[\s\S]{0,40}?\bnotifications?\b)"}},
      {}, {}, {WidgetStatus::Checked}));

  rules.push_back(make_rule(
      DPType::IiPreselectionNoCheckbox,
      "Terms are accepted without an explicit consent checkbox: '{text}'.",
      {{"tos-by-default",
        R"(\bby\s+(continuing|signing\s+(up|in)|registering|creating\s+an?\s+account|using)\b[\s\S]{0,80}?\b(agree|accept)\b[\s\S]{0,60}?\b(terms|privacy\s+policy|policies|agreement)\b)"},
       {"tos-consent",
        R"(\b(i\s+)?(agree|accept|consent)\b[\s\S]{0,60}?\b(terms|privacy\s+policy|policies|agreement)\b)"}}));

  rules.push_back(make_rule(
      DPType::IiFalseHierarchy,
      "Unequal prominence of equivalent options: '{salient}' is visually salient while "
      "'{dismissive}' is played down (background contrast {contrast}).",
      {{"dismissive",
        R"(^\s*(no([.,!]?\s+thanks)?|no,?\s+thanks|close|next\s+time|later|not\s+now|skip|cancel|maybe\s+later|dismiss|not\s+interested)\s*[.!]?\s*$)"}}));

  rules.push_back(make_rule(
      DPType::IiDisguisedAd,
      "Advertisement styled like regular content: indicator {indicator} on a block similar to "
      "neighbouring content.",
      {{"ad-badge", R"(^\s*(ad|ads)\b)"}}, {},
      {IconClass::AdChoicesTriangle, IconClass::AdClose}));

  rules.push_back(make_rule(DPType::IiSmallClose,
                            "Close control is very small ({w}x{h} px on a {sw} px wide screen).",
                            {}, {}, {IconClass::Close, IconClass::AdClose}));

  rules.push_back(make_rule(
      DPType::FaSocialPyramid, "Reward for recruiting contacts: '{text}'.",
      {{"invite-reward",
        R"(\b(invite|refer)\b[\s\S]{0,60}?\bfriends?\b[\s\S]{0,60}?\b(get|earn|win|receive|unlock|claim|reward|voucher|bonus|coupon|coins|credits|gift|free)\b)"},
       {"share-unlock", R"(\bshare\b[\s\S]{0,60}?\b(to|and)\s+(get|unlock|earn|win|claim)\b)"},
       {"referral", R"(\breferral\s+(bonus|reward|code|program)\b)"}}));

  rules.push_back(make_rule(
      DPType::FaPrivacyZuckering, "Data sharing enabled by default: '{text}'.",
      {{"send-data",
        R"(\b(send|share|collect|upload)\b[\s\S]{0,50}?\b(usage|personal|anonymous|diagnostic|my)\b[\s\S]{0,30}?\b(data|statistics|analytics|information|info)\b)"},
       {"data-by-default", R"(\b(usage|diagnostic)\s+(data|reports?)\b[\s\S]{0,60}?\bby\s+default\b)"},
       {"improve-experience",
        R"(\bhelp\s+us\s+improve\b[\s\S]{0,60}?\b(data|analytics|information)\b)"}}));

  rules.push_back(make_rule(
      DPType::FaGamification, "Recurring-task reward loop: '{text}'.",
      {{"daily-reward", R"(\bdaily\s+(bonus|reward|rewards|check[- ]?in|gift|prize|spin|login)\b)"},
       {"login-reward", R"(\b(login|sign[- ]?in)\s+(bonus|reward|rewards|streak)\b)"},
       {"streak", R"(\b(\d+\s*[- ]?day\s+streak|day\s+streak|come\s+back\s+(tomorrow|every\s+day|daily))\b)"}}));

  rules.push_back(make_rule(
      DPType::FaCountdownAd,
      "Countdown pressure on an advertisement: '{text}' with ad indicator {indicator}.",
      {{"skip-in", R"(\bskip\s+(ad\s+)?in\s+\d+\s*s?(ec(onds)?)?\b)"},
       {"ad-ends-in", R"(\bad(vertisement)?\s+(ends|closes|starts|resumes)\s+in\s+\d+)"},
       {"timer", R"(^\s*\d{1,2}:\d{2}\s*$)"},
       {"reward-in", R"(\breward\s+in\s+\d+\s*s?(ec(onds)?)?\b)"}}));

  rules.push_back(make_rule(
      DPType::FaWatchAd, "Feature or reward gated behind watching an advertisement: '{text}'.",
      {{"watch-ad",
        R"(\bwatch\b[\s\S]{0,60}?\b(ad|ads|advert|adverts|advertisement|advertisements|advertising)\b)"}}));

  rules.push_back(make_rule(
      DPType::FaPayAvoidAds, "Payment offered to remove advertising: '{text}'.",
      {{"remove-ads",
        R"(\b(remove|without|disable|block|no|get\s+rid\s+of|stop)\b[\s\S]{0,40}?\b(ad|ads|advert|adverts|advertisement|advertisements|advertising)\b)"}}));

  return rules;
}

namespace {

std::vector<TextPattern> parse_pattern_array(const nlohmann::json& arr, DPType type,
                                             const std::string& where) {
  if (!arr.is_array()) throw SchemaError(where + ": expected an array of patterns");
  std::vector<TextPattern> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string pwhere = where + "[" + std::to_string(i) + "]";
    const auto& p = arr[i];
    if (!p.is_object()) throw SchemaError(pwhere + ": expected an object");
    const std::string id = jsonutil::require_string(p, "id", pwhere);
    const std::string regex = jsonutil::require_string(p, "regex", pwhere);
    out.push_back(TextPattern::make(type, id, regex));
  }
  return out;
}

}  // namespace

std::vector<RuleSpec> parse_rules(const std::string& json_text, const std::string& origin) {
  const nlohmann::json doc = jsonutil::parse_document(json_text, origin);
  std::vector<RuleSpec> rules = builtin_rules();

  const auto& arr = jsonutil::require_field(doc, "rules", origin);
  if (!arr.is_array()) throw SchemaError(origin + ": 'rules' must be an array");

  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = origin + ": rules[" + std::to_string(i) + "]";
    const auto& r = arr[i];
    if (!r.is_object()) throw SchemaError(where + ": expected an object");
    const std::string type_name = jsonutil::require_string(r, "dp_type", where);
    const auto type = parse_dp_type(type_name);
    if (!type) throw SchemaError(where + ".dp_type: unknown type '" + type_name + "'");

    auto it = std::find_if(rules.begin(), rules.end(),
                           [&](const RuleSpec& rule) { return rule.dp_type == *type; });
    RuleSpec& rule = *it;

    if (auto f = r.find("enabled"); f != r.end()) {
      if (!f->is_boolean()) throw SchemaError(where + ".enabled: expected a boolean");
      rule.enabled = f->get<bool>();
    }
    if (auto f = r.find("patterns"); f != r.end()) {
      rule.patterns = parse_pattern_array(*f, *type, where + ".patterns");
    }
    if (auto f = r.find("secondary_patterns"); f != r.end()) {
      rule.secondary_patterns = parse_pattern_array(*f, *type, where + ".secondary_patterns");
    }
    if (auto f = r.find("explanation"); f != r.end()) {
      if (!f->is_string()) throw SchemaError(where + ".explanation: expected a string");
      rule.explanation = f->get<std::string>();
    }
  }
  return rules;
}

std::vector<RuleSpec> load_rules_file(const std::string& path) {
  return parse_rules(read_text_file(path), path);
}

}  // namespace dpscan
