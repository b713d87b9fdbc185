#pragma once

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "dpscan/model.hpp"

namespace dpscan {

// The five top-level strategies. Order here fixes the canonical report order.
enum class Strategy {
  Nagging,
  Obstruction,
  Sneaking,
  InterfaceInterference,
  ForcedAction,
};

enum class Tier {
  Certain,
  Warning,  // context-related types spottable on one screen
};

// The 16 tool-supported dark pattern types. Warning entries are the hybrid
// types: identifiable on a single screen but context-related.
#define DPSCAN_DP_TYPE_LIST(X)                                                               \
  X(NgPopupAd, "NG-POPUP-AD", Strategy::Nagging, Tier::Warning)                              \
  X(NgRate, "NG-RATE", Strategy::Nagging, Tier::Warning)                                     \
  X(NgUpgrade, "NG-UPGRADE", Strategy::Nagging, Tier::Warning)                               \
  X(ObIntermediateCurrency, "OB-INTERMEDIATE-CURRENCY", Strategy::Obstruction, Tier::Certain) \
  X(SnForcedContinuity, "SN-FORCED-CONTINUITY", Strategy::Sneaking, Tier::Certain)           \
  X(IiPreselectionChecked, "II-PRESELECTION-CHECKED", Strategy::InterfaceInterference,       \
    Tier::Warning)                                                                           \
  X(IiPreselectionNoCheckbox, "II-PRESELECTION-NO-CHECKBOX", Strategy::InterfaceInterference, \
    Tier::Warning)                                                                           \
  X(IiFalseHierarchy, "II-FALSE-HIERARCHY", Strategy::InterfaceInterference, Tier::Certain)  \
  X(IiDisguisedAd, "II-DISGUISED-AD", Strategy::InterfaceInterference, Tier::Certain)        \
  X(IiSmallClose, "II-SMALL-CLOSE", Strategy::InterfaceInterference, Tier::Certain)          \
  X(FaSocialPyramid, "FA-SOCIAL-PYRAMID", Strategy::ForcedAction, Tier::Certain)             \
  X(FaPrivacyZuckering, "FA-PRIVACY-ZUCKERING", Strategy::ForcedAction, Tier::Warning)       \
  X(FaGamification, "FA-GAMIFICATION", Strategy::ForcedAction, Tier::Certain)                \
  X(FaCountdownAd, "FA-COUNTDOWN-AD", Strategy::ForcedAction, Tier::Warning)                 \
  X(FaWatchAd, "FA-WATCH-AD", Strategy::ForcedAction, Tier::Certain)                         \
  X(FaPayAvoidAds, "FA-PAY-AVOID-ADS", Strategy::ForcedAction, Tier::Certain)

enum class DPType {
#define DPSCAN_X(name, str, strat, tier) name,
  DPSCAN_DP_TYPE_LIST(DPSCAN_X)
#undef DPSCAN_X
};

inline constexpr int kDPTypeCount = 16;

std::string_view to_string(DPType t);
std::string_view to_string(Strategy s);
std::string_view to_string(Tier t);
std::optional<DPType> parse_dp_type(std::string_view s);
std::optional<Strategy> parse_strategy(std::string_view s);
Strategy strategy_of(DPType t);
Tier tier_of(DPType t);
std::vector<DPType> all_dp_types();

// One case-insensitive, word-boundary anchored text trigger.
struct TextPattern {
  std::string id;
  std::string source;
  DPType dp_type = DPType::FaPayAvoidAds;
  std::regex compiled;

  static TextPattern make(DPType type, std::string id, std::string source);
};

// Case-insensitive match verdict of a compiled pattern against element text.
bool match_text(const TextPattern& pattern, const std::string& text);

// Declarative trigger for one dark-pattern type. Patterns and predicate
// parameters are data (overridable via the rules file); the trigger logic
// itself lives in the checker keyed by dp_type.
struct RuleSpec {
  DPType dp_type = DPType::FaPayAvoidAds;
  bool enabled = true;
  std::vector<TextPattern> patterns;            // primary text triggers
  std::vector<TextPattern> secondary_patterns;  // the other half of co-occurrence rules
  std::vector<IconClass> required_icons;
  std::vector<WidgetStatus> required_statuses;
  std::string explanation;  // template; {placeholders} filled at detection time
};

// The built-in registry: published pattern subset plus declared
// extrapolations, one RuleSpec per supported type.
std::vector<RuleSpec> builtin_rules();

// Loads a rules file on top of the built-in registry. Per type the file may
// flip `enabled`, replace pattern lists, or override the explanation.
// Schema: {"rules":[{"dp_type","enabled"?,"patterns"?:[{"id","regex"}],
//                    "secondary_patterns"?:[...],"explanation"?}]}
std::vector<RuleSpec> load_rules_file(const std::string& path);
std::vector<RuleSpec> parse_rules(const std::string& json_text, const std::string& origin);

// One detected dark-pattern instance.
struct Evidence {
  int element = 0;   // index into Screen::elements
  std::string role;  // which upstream property fired

  bool operator==(const Evidence&) const = default;
};

struct Finding {
  DPType dp_type = DPType::FaPayAvoidAds;
  BBox container;
  std::vector<Evidence> evidence;
  std::string explanation;
  Tier tier = Tier::Certain;
};

}  // namespace dpscan
