#include "dpscan/model.hpp"

namespace dpscan {

std::string_view to_string(ElementType t) {
  switch (t) {
#define DPSCAN_X(name, str) \
  case ElementType::name:   \
    return str;
    DPSCAN_ELEMENT_TYPE_LIST(DPSCAN_X)
#undef DPSCAN_X
  }
  return "Unknown";
}

std::string_view to_string(IconClass c) {
  switch (c) {
#define DPSCAN_X(name, str) \
  case IconClass::name:     \
    return str;
    DPSCAN_ICON_CLASS_LIST(DPSCAN_X)
#undef DPSCAN_X
  }
  return "other";
}

std::string_view to_string(WidgetStatus s) {
  switch (s) {
    case WidgetStatus::Checked:
      return "checked";
    case WidgetStatus::Unchecked:
      return "unchecked";
    case WidgetStatus::NotApplicable:
      return "not_applicable";
    case WidgetStatus::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::optional<ElementType> parse_element_type(std::string_view s) {
#define DPSCAN_X(name, str) \
  if (s == str) return ElementType::name;
  DPSCAN_ELEMENT_TYPE_LIST(DPSCAN_X)
#undef DPSCAN_X
  return std::nullopt;
}

std::optional<IconClass> parse_icon_class(std::string_view s) {
#define DPSCAN_X(name, str) \
  if (s == str) return IconClass::name;
  DPSCAN_ICON_CLASS_LIST(DPSCAN_X)
#undef DPSCAN_X
  return std::nullopt;
}

std::optional<WidgetStatus> parse_widget_status(std::string_view s) {
  if (s == "checked") return WidgetStatus::Checked;
  if (s == "unchecked") return WidgetStatus::Unchecked;
  if (s == "not_applicable") return WidgetStatus::NotApplicable;
  if (s == "unknown") return WidgetStatus::Unknown;
  return std::nullopt;
}

bool is_togglable(ElementType t) {
  return t == ElementType::Checkbox || t == ElementType::Switch || t == ElementType::ToggleButton;
}

bool is_textual(ElementType t) {
  return t == ElementType::TextView || t == ElementType::Button || t == ElementType::EditText;
}

bool is_groupable(ElementType t) {
  return t == ElementType::TextView || t == ElementType::Button || t == ElementType::ImageButton;
}

bool is_icon_carrier(ElementType t) {
  return t == ElementType::ImageView || t == ElementType::ImageButton;
}

Screen Screen::from_image(ImageU8 img) {
  Screen screen;
  screen.width = img.width;
  screen.height = img.height;
  screen.image = std::move(img);
  return screen;
}

}  // namespace dpscan
