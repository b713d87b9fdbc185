#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpscan/geometry.hpp"
#include "dpscan/image.hpp"

namespace dpscan {

// The 15 Android GUI element classes targeted by the element detector, plus
// TextLine for raw OCR lines (pre-fusion only) and Unknown.
#define DPSCAN_ELEMENT_TYPE_LIST(X) \
  X(Button, "Button")               \
  X(ImageView, "ImageView")         \
  X(ImageButton, "ImageButton")     \
  X(TextView, "TextView")           \
  X(Checkbox, "Checkbox")           \
  X(Switch, "Switch")               \
  X(ToggleButton, "ToggleButton")   \
  X(EditText, "EditText")           \
  X(RadioButton, "RadioButton")     \
  X(Spinner, "Spinner")             \
  X(SeekBar, "SeekBar")             \
  X(ProgressBar, "ProgressBar")     \
  X(RatingBar, "RatingBar")         \
  X(VideoView, "VideoView")         \
  X(WebView, "WebView")             \
  X(TextLine, "TextLine")           \
  X(Unknown, "Unknown")

enum class ElementType {
#define DPSCAN_X(name, str) name,
  DPSCAN_ELEMENT_TYPE_LIST(DPSCAN_X)
#undef DPSCAN_X
};

// Icon vocabulary: 81 semantic classes the icon classifier can emit plus a
// catch-all Other, and two ad-specific classes only the template matcher
// produces (AdChoicesTriangle, AdClose).
#define DPSCAN_ICON_CLASS_LIST(X)          \
  X(Add, "add")                            \
  X(ArrowBackward, "arrow_backward")       \
  X(ArrowDownward, "arrow_downward")       \
  X(ArrowForward, "arrow_forward")         \
  X(ArrowUpward, "arrow_upward")           \
  X(AttachFile, "attach_file")             \
  X(AvForward, "av_forward")               \
  X(AvRewind, "av_rewind")                 \
  X(Avatar, "avatar")                      \
  X(Bluetooth, "bluetooth")                \
  X(Book, "book")                          \
  X(Bookmark, "bookmark")                  \
  X(Build, "build")                        \
  X(Call, "call")                          \
  X(Cart, "cart")                          \
  X(Chat, "chat")                          \
  X(Check, "check")                        \
  X(Close, "close")                        \
  X(Compare, "compare")                    \
  X(Copy, "copy")                          \
  X(Dashboard, "dashboard")                \
  X(DateRange, "date_range")               \
  X(Delete, "delete")                      \
  X(Description, "description")            \
  X(Dialpad, "dialpad")                    \
  X(Edit, "edit")                          \
  X(Email, "email")                        \
  X(Emoji, "emoji")                        \
  X(ExpandLess, "expand_less")             \
  X(ExpandMore, "expand_more")             \
  X(Explore, "explore")                    \
  X(Facebook, "facebook")                  \
  X(Favorite, "favorite")                  \
  X(FileDownload, "file_download")         \
  X(Filter, "filter")                      \
  X(Flash, "flash")                        \
  X(Flight, "flight")                      \
  X(Folder, "folder")                      \
  X(Follow, "follow")                      \
  X(Font, "font")                          \
  X(Fullscreen, "fullscreen")              \
  X(Gift, "gift")                          \
  X(Globe, "globe")                        \
  X(Group, "group")                        \
  X(Help, "help")                          \
  X(History, "history")                    \
  X(Home, "home")                          \
  X(Info, "info")                          \
  X(Label, "label")                        \
  X(Launch, "launch")                      \
  X(Layers, "layers")                      \
  X(List, "list")                          \
  X(Location, "location")                  \
  X(Lock, "lock")                          \
  X(Menu, "menu")                          \
  X(Mic, "mic")                            \
  X(Minus, "minus")                        \
  X(More, "more")                          \
  X(Music, "music")                        \
  X(Notifications, "notifications")        \
  X(Pause, "pause")                        \
  X(Photo, "photo")                        \
  X(Play, "play")                          \
  X(Playlist, "playlist")                  \
  X(Power, "power")                        \
  X(Refresh, "refresh")                    \
  X(Repeat, "repeat")                      \
  X(Reply, "reply")                        \
  X(Save, "save")                          \
  X(Search, "search")                      \
  X(Send, "send")                          \
  X(Settings, "settings")                  \
  X(Share, "share")                        \
  X(Shop, "shop")                          \
  X(SkipNext, "skip_next")                 \
  X(SkipPrevious, "skip_previous")         \
  X(Sliders, "sliders")                    \
  X(Star, "star")                          \
  X(Swap, "swap")                          \
  X(ThumbsUp, "thumbs_up")                 \
  X(Time, "time")                          \
  X(Other, "other")                        \
  X(AdChoicesTriangle, "ad_choices_triangle") \
  X(AdClose, "ad_close")

enum class IconClass {
#define DPSCAN_X(name, str) name,
  DPSCAN_ICON_CLASS_LIST(DPSCAN_X)
#undef DPSCAN_X
};

enum class WidgetStatus {
  Checked,
  Unchecked,
  NotApplicable,
  Unknown,
};

std::string_view to_string(ElementType t);
std::string_view to_string(IconClass c);
std::string_view to_string(WidgetStatus s);

std::optional<ElementType> parse_element_type(std::string_view s);
std::optional<IconClass> parse_icon_class(std::string_view s);
std::optional<WidgetStatus> parse_widget_status(std::string_view s);

// Checkbox / Switch / ToggleButton can carry a checked/unchecked status.
bool is_togglable(ElementType t);
// Element types considered textual for fusion bbox refinement.
bool is_textual(ElementType t);
// Candidate types for element grouping.
bool is_groupable(ElementType t);
// Icon classifier applies to these.
bool is_icon_carrier(ElementType t);

struct ColorPair {
  Rgb background;
  Rgb foreground;

  bool operator==(const ColorPair&) const = default;
};

struct UIElement {
  BBox bbox;
  ElementType etype = ElementType::Unknown;
  std::optional<std::string> text;
  double confidence = 1.0;
  std::optional<IconClass> icon;
  WidgetStatus status = WidgetStatus::NotApplicable;
  std::optional<ColorPair> colors;
  std::optional<int> group_id;
  bool from_template = false;  // appended by the template matcher

  bool has_text() const { return text.has_value() && !text->empty(); }
};

// One screenshot with its element set and extracted property layers.
// Elements are referenced by index; groups partition a subset of indices.
struct Screen {
  ImageU8 image;
  int width = 0;
  int height = 0;
  std::vector<UIElement> elements;
  std::vector<std::vector<int>> groups;
  std::vector<std::string> warnings;

  static Screen from_image(ImageU8 img);
};

}  // namespace dpscan
