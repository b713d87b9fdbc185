#include "fixtures.hpp"

#include <filesystem>

#include "dpscan/image_io.hpp"
#include "dpscan/template_match.hpp"

namespace dpscan::testfix {

namespace {

constexpr Rgb kScreenBg{250, 250, 250};
constexpr Rgb kBlockGray{225, 225, 225};
constexpr Rgb kCardGray{232, 232, 232};
constexpr Rgb kAccentGreen{76, 175, 80};
constexpr Rgb kAccentOrange{240, 120, 20};

struct Builder {
  Fixture fx;

  explicit Builder(std::string name, int w = 720, int h = 1280) {
    fx.name = std::move(name);
    fx.image = ImageU8::filled(w, h, kScreenBg);
    fx.elements.image = fx.name + ".png";
    fx.elements.width = w;
    fx.elements.height = h;
  }

  struct Opts {
    std::optional<std::string> text;
    std::optional<IconClass> icon;
    std::optional<WidgetStatus> status;
    std::optional<Rgb> fill;
  };

  Builder& add(ElementType type, BBox box, Opts opts = {}) {
    ElementSidecar::Entry e;
    e.bbox = box;
    e.type = type;
    e.text = std::move(opts.text);
    e.icon = opts.icon;
    e.status = opts.status;
    fx.elements.elements.push_back(std::move(e));
    if (opts.fill) fill_rect(fx.image, box, *opts.fill);
    return *this;
  }

  Builder& ocr_line(BBox box, std::string text) {
    if (!fx.ocr) fx.ocr.emplace();
    fx.ocr->lines.push_back({box, std::move(text)});
    return *this;
  }

  Builder& paste_patch(IconClass icon, int x, int y, double scale = 1.0) {
    ImageU8 patch = builtin_template_image(icon);
    if (scale != 1.0) {
      const GrayF32 g = to_gray(patch);
      const int sw = static_cast<int>(std::lround(patch.width * scale));
      const int sh = static_cast<int>(std::lround(patch.height * scale));
      const GrayF32 scaled = resize_bilinear(g, sw, sh);
      ImageU8 rgb;
      rgb.width = sw;
      rgb.height = sh;
      rgb.data.resize(static_cast<std::size_t>(sw) * sh * 3);
      for (int yy = 0; yy < sh; ++yy) {
        for (int xx = 0; xx < sw; ++xx) {
          const auto v = static_cast<std::uint8_t>(std::clamp(scaled.at(xx, yy), 0.0f, 255.0f));
          rgb.set(xx, yy, Rgb{v, v, v});
        }
      }
      patch = std::move(rgb);
    }
    paste(fx.image, patch, x, y);
    return *this;
  }

  Builder& expect(DPType type, BBox container, int unlock_stage) {
    fx.expected.push_back({type, container, unlock_stage});
    return *this;
  }

  Fixture done() { return std::move(fx); }
};

}  // namespace

GroundTruthFile Fixture::ground_truth() const {
  GroundTruthFile gt;
  gt.image = elements.image;
  for (const auto& inst : expected) {
    GroundTruthInstance g;
    g.dp_type = inst.dp_type;
    g.container = inst.container;
    gt.instances.push_back(std::move(g));
  }
  return gt;
}

ExtractorSuite Fixture::suite() const { return ExtractorSuite::from_annotations(elements, ocr); }

std::vector<Fixture> malicious_fixtures() {
  std::vector<Fixture> out;

  // --- Nagging ---------------------------------------------------------

  out.push_back(
      Builder("popup_ad_badge")
          .add(ElementType::ImageView, {120, 400, 600, 700}, {.fill = kBlockGray})
          .add(ElementType::TextView, {130, 410, 175, 440}, {.text = "AD"})
          .add(ElementType::TextView, {150, 715, 500, 755}, {.text = "Sponsored content"})
          .add(ElementType::Button, {150, 775, 570, 835}, {.text = "Open", .fill = kAccentGreen})
          .expect(DPType::NgPopupAd, {120, 400, 600, 835}, 0)
          .done());

  out.push_back(
      Builder("popup_ad_triangle")
          .add(ElementType::ImageView, {120, 400, 600, 700}, {.fill = kBlockGray})
          .add(ElementType::TextView, {150, 715, 500, 755}, {.text = "Limited offer just for you"})
          .add(ElementType::Button, {150, 775, 570, 835}, {.text = "Open", .fill = kAccentGreen})
          .paste_patch(IconClass::AdChoicesTriangle, 560, 410)
          .expect(DPType::NgPopupAd, {120, 400, 600, 835}, 2)
          .done());

  out.push_back(
      Builder("rate_dialog")
          .add(ElementType::TextView, {120, 500, 600, 560},
               {.text = "If you enjoy our app, please rate us!"})
          .add(ElementType::ImageView, {320, 580, 380, 640},
               {.icon = IconClass::Star, .fill = kBlockGray})
          .add(ElementType::Button, {150, 680, 570, 740}, {.text = "OK", .fill = kBlockGray})
          .expect(DPType::NgRate, {120, 500, 600, 640}, 1)
          .done());

  out.push_back(Builder("rate_stars_row")
                    .add(ElementType::TextView, {100, 300, 400, 350}, {.text = "Rate this app"})
                    .add(ElementType::ImageView, {200, 400, 250, 450},
                         {.icon = IconClass::Star, .fill = kBlockGray})
                    .add(ElementType::ImageView, {270, 400, 320, 450},
                         {.icon = IconClass::Star, .fill = kBlockGray})
                    .add(ElementType::ImageView, {340, 400, 390, 450},
                         {.icon = IconClass::Star, .fill = kBlockGray})
                    .expect(DPType::NgRate, {100, 300, 400, 450}, 1)
                    .done());

  out.push_back(Builder("upgrade_dialog")
                    .add(ElementType::TextView, {100, 500, 620, 560},
                         {.text = "Upgrade to Premium to get everything"})
                    .expect(DPType::NgUpgrade, {100, 500, 620, 560}, 0)
                    .done());

  out.push_back(Builder("go_premium")
                    .add(ElementType::TextView, {150, 830, 570, 880},
                         {.text = "Enjoy the full experience"})
                    .add(ElementType::Button, {200, 900, 520, 970},
                         {.text = "Go Premium", .fill = kAccentOrange})
                    .expect(DPType::NgUpgrade, {200, 900, 520, 970}, 0)
                    .done());

  // --- Obstruction -------------------------------------------------------

  out.push_back(Builder("coin_store")
                    .add(ElementType::TextView, {100, 400, 340, 460}, {.text = "1000 Coins"})
                    .add(ElementType::Button, {380, 400, 620, 460},
                         {.text = "$4.99", .fill = kAccentGreen})
                    .add(ElementType::TextView, {100, 480, 340, 520}, {.text = "Best value!"})
                    .expect(DPType::ObIntermediateCurrency, {100, 400, 620, 460}, 0)
                    .done());

  out.push_back(Builder("gem_packs")
                    .add(ElementType::TextView, {100, 300, 360, 360}, {.text = "Buy 500 gems"})
                    .add(ElementType::TextView, {400, 300, 620, 360}, {.text = "9.99 USD"})
                    .expect(DPType::ObIntermediateCurrency, {100, 300, 620, 360}, 0)
                    .done());

  // --- Sneaking ----------------------------------------------------------

  out.push_back(Builder("trial_then_charge")
                    .add(ElementType::TextView, {80, 600, 640, 660},
                         {.text = "7 days free, then $84.00/year"})
                    .expect(DPType::SnForcedContinuity, {80, 600, 640, 660}, 0)
                    .done());

  out.push_back(Builder("trial_split")
                    .add(ElementType::TextView, {80, 500, 640, 560},
                         {.text = "Start your 14 days free trial"})
                    .add(ElementType::TextView, {80, 580, 640, 630},
                         {.text = "Billed annually after the trial"})
                    .expect(DPType::SnForcedContinuity, {80, 500, 640, 630}, 0)
                    .done());

  // --- Interface Interference ---------------------------------------------

  out.push_back(Builder("tos_checked")
                    .add(ElementType::Checkbox, {80, 700, 130, 750},
                         {.status = WidgetStatus::Checked, .fill = kBlockGray})
                    .add(ElementType::TextView, {140, 700, 560, 750},
                         {.text = "I agree to the Terms of Service"})
                    .expect(DPType::IiPreselectionChecked, {80, 700, 560, 750}, 3)
                    .done());

  out.push_back(Builder("newsletter_switch")
                    .add(ElementType::TextView, {80, 400, 520, 450},
                         {.text = "Email me special offers and updates"})
                    .add(ElementType::Switch, {560, 390, 660, 460},
                         {.status = WidgetStatus::Checked, .fill = kBlockGray})
                    .expect(DPType::IiPreselectionChecked, {80, 390, 660, 460}, 3)
                    .done());

  out.push_back(Builder("signup_tos")
                    .add(ElementType::EditText, {100, 800, 620, 860},
                         {.text = "Email address", .fill = kBlockGray})
                    .add(ElementType::Button, {160, 1000, 560, 1060},
                         {.text = "Sign up", .fill = kAccentGreen})
                    .add(ElementType::TextView, {60, 1100, 660, 1150},
                         {.text = "By signing up you agree to the Terms of Service and Privacy "
                                  "Policy"})
                    .expect(DPType::IiPreselectionNoCheckbox, {60, 1100, 660, 1150}, 0)
                    .done());

  out.push_back(Builder("login_tos")
                    .add(ElementType::Button, {160, 1050, 560, 1110},
                         {.text = "Continue", .fill = kBlockGray})
                    .add(ElementType::TextView, {100, 1150, 620, 1200},
                         {.text = "I accept the terms and conditions"})
                    .expect(DPType::IiPreselectionNoCheckbox, {100, 1150, 620, 1200}, 0)
                    .done());

  // Install dialog in the style of the running example: a pop-up ad plus a
  // salient Install button next to a played-down No thanks option.
  out.push_back(
      Builder("install_dialog")
          .add(ElementType::ImageView, {120, 380, 600, 640}, {.fill = kBlockGray})
          .add(ElementType::TextView, {130, 390, 175, 420}, {.text = "AD"})
          .add(ElementType::TextView, {150, 650, 570, 700}, {.text = "Get the new game now"})
          .add(ElementType::Button, {150, 720, 420, 780}, {.text = "Install", .fill = kAccentGreen})
          .add(ElementType::Button, {440, 720, 585, 780}, {.text = "No thanks"})
          .expect(DPType::NgPopupAd, {120, 380, 600, 780}, 0)
          .expect(DPType::IiFalseHierarchy, {150, 720, 585, 780}, 4)
          .done());

  out.push_back(Builder("subscribe_vs_not_now")
                    .add(ElementType::Button, {100, 800, 400, 870},
                         {.text = "Subscribe now", .fill = kAccentOrange})
                    .add(ElementType::Button, {430, 800, 620, 870}, {.text = "Not now"})
                    .expect(DPType::IiFalseHierarchy, {100, 800, 620, 870}, 4)
                    .done());

  out.push_back(Builder("feed_ad_badge")
                    .add(ElementType::ImageView, {20, 200, 700, 440}, {.fill = kCardGray})
                    .add(ElementType::ImageView, {20, 470, 700, 710}, {.fill = kCardGray})
                    .add(ElementType::TextView, {30, 480, 75, 510}, {.text = "AD"})
                    .add(ElementType::ImageView, {20, 740, 700, 980}, {.fill = kCardGray})
                    .expect(DPType::IiDisguisedAd, {20, 470, 700, 710}, 0)
                    .done());

  out.push_back(Builder("feed_ad_triangle")
                    .add(ElementType::ImageView, {20, 200, 700, 440}, {.fill = kCardGray})
                    .add(ElementType::ImageView, {20, 470, 700, 710}, {.fill = kCardGray})
                    .add(ElementType::ImageView, {20, 740, 700, 980}, {.fill = kCardGray})
                    .paste_patch(IconClass::AdChoicesTriangle, 660, 480)
                    .expect(DPType::IiDisguisedAd, {20, 470, 700, 710}, 2)
                    .done());

  out.push_back(Builder("small_close_icon")
                    .add(ElementType::ImageView, {20, 1100, 700, 1260}, {.fill = kBlockGray})
                    .add(ElementType::ImageView, {676, 1104, 696, 1124},
                         {.icon = IconClass::Close, .fill = kCardGray})
                    .expect(DPType::IiSmallClose, {676, 1104, 696, 1124}, 1)
                    .done());

  out.push_back(Builder("small_ad_close")
                    .add(ElementType::ImageView, {40, 200, 680, 1000}, {.fill = kBlockGray})
                    .paste_patch(IconClass::AdClose, 690, 60, 0.75)
                    .expect(DPType::IiSmallClose, {690, 60, 708, 78}, 2)
                    .done());

  // --- Forced Action -------------------------------------------------------

  out.push_back(Builder("invite_friends")
                    .add(ElementType::TextView, {80, 700, 640, 760},
                         {.text = "Invite 3 friends and get a free voucher"})
                    .expect(DPType::FaSocialPyramid, {80, 700, 640, 760}, 0)
                    .done());

  out.push_back(Builder("referral_bonus")
                    .add(ElementType::Button, {120, 850, 600, 920},
                         {.text = "Refer a friend to earn $10", .fill = kAccentGreen})
                    .expect(DPType::FaSocialPyramid, {120, 850, 600, 920}, 0)
                    .done());

  out.push_back(Builder("usage_data")
                    .add(ElementType::TextView, {80, 950, 640, 1000},
                         {.text = "Send anonymous usage data to help us improve"})
                    .expect(DPType::FaPrivacyZuckering, {80, 950, 640, 1000}, 0)
                    .done());

  out.push_back(Builder("share_personal")
                    .add(ElementType::TextView, {80, 500, 640, 550},
                         {.text = "Share my personal information with partners"})
                    .expect(DPType::FaPrivacyZuckering, {80, 500, 640, 550}, 0)
                    .done());

  out.push_back(Builder("daily_bonus")
                    .add(ElementType::TextView, {100, 400, 620, 460},
                         {.text = "Daily bonus! Come back every day to claim"})
                    .expect(DPType::FaGamification, {100, 400, 620, 460}, 0)
                    .done());

  out.push_back(Builder("login_streak")
                    .add(ElementType::TextView, {100, 600, 620, 660},
                         {.text = "7 day streak! Claim your daily reward"})
                    .expect(DPType::FaGamification, {100, 600, 620, 660}, 0)
                    .done());

  out.push_back(Builder("skip_ad_countdown")
                    .add(ElementType::ImageView, {0, 200, 720, 1100}, {.fill = kBlockGray})
                    .add(ElementType::TextView, {10, 210, 55, 240}, {.text = "AD"})
                    .add(ElementType::TextView, {560, 210, 710, 250}, {.text = "Skip ad in 5s"})
                    .expect(DPType::FaCountdownAd, {10, 210, 710, 250}, 0)
                    .done());

  out.push_back(Builder("ad_timer")
                    .add(ElementType::ImageView, {0, 300, 720, 1000}, {.fill = kBlockGray})
                    .add(ElementType::TextView, {40, 310, 400, 350},
                         {.text = "Ad ends in 10 seconds"})
                    .expect(DPType::FaCountdownAd, {40, 310, 400, 350}, 0)
                    .done());

  out.push_back(Builder("watch_earn")
                    .add(ElementType::Button, {120, 700, 600, 770},
                         {.text = "Watch an ad to earn 50 coins", .fill = kAccentGreen})
                    .expect(DPType::FaWatchAd, {120, 700, 600, 770}, 0)
                    .done());

  out.push_back(Builder("watch_unlock")
                    .add(ElementType::TextView, {80, 500, 640, 560},
                         {.text = "Watch a video advertisement to open this level"})
                    .expect(DPType::FaWatchAd, {80, 500, 640, 560}, 0)
                    .done());

  // OCR-driven variant: the element box is loose, the OCR line is tight and
  // refines it.
  out.push_back(Builder("remove_ads_row")
                    .add(ElementType::TextView, {100, 640, 480, 690})
                    .ocr_line({110, 650, 470, 685}, "Remove ads for $1.99")
                    .expect(DPType::FaPayAvoidAds, {110, 650, 470, 685}, 0)
                    .done());

  out.push_back(Builder("remove_ads_twice")
                    .add(ElementType::TextView, {100, 520, 400, 570}, {.text = "Remove ads"})
                    .add(ElementType::TextView, {100, 640, 620, 690},
                         {.text = "Pay once to block all ads forever"})
                    .expect(DPType::FaPayAvoidAds, {100, 520, 400, 570}, 0)
                    .expect(DPType::FaPayAvoidAds, {100, 640, 620, 690}, 0)
                    .done());

  return out;
}

std::vector<Fixture> benign_fixtures() {
  std::vector<Fixture> out;

  out.push_back(Builder("benign_settings")
                    .add(ElementType::TextView, {60, 200, 500, 250}, {.text = "Advanced radar display"})
                    .add(ElementType::TextView, {60, 300, 300, 350}, {.text = "Notifications"})
                    .add(ElementType::Switch, {560, 295, 660, 355},
                         {.status = WidgetStatus::Unchecked, .fill = kBlockGray})
                    .done());

  out.push_back(Builder("benign_newsletter_unchecked")
                    .add(ElementType::Checkbox, {80, 700, 130, 750},
                         {.status = WidgetStatus::Unchecked, .fill = kBlockGray})
                    .add(ElementType::TextView, {140, 700, 620, 750},
                         {.text = "Subscribe to our newsletter for updates"})
                    .done());

  out.push_back(Builder("benign_rate_no_star")
                    .add(ElementType::TextView, {60, 400, 360, 450}, {.text = "Rate this app"})
                    .add(ElementType::TextView, {60, 500, 360, 550}, {.text = "Send feedback"})
                    .done());

  out.push_back(Builder("benign_equal_buttons")
                    .add(ElementType::Button, {120, 800, 340, 870}, {.text = "OK", .fill = kBlockGray})
                    .add(ElementType::Button, {380, 800, 600, 870},
                         {.text = "Cancel", .fill = kBlockGray})
                    .done());

  out.push_back(Builder("benign_price_list")
                    .add(ElementType::TextView, {60, 300, 400, 350}, {.text = "$9.99 per item"})
                    .add(ElementType::TextView, {60, 400, 400, 450}, {.text = "Shopping cart"})
                    .done());

  out.push_back(Builder("benign_free_shipping")
                    .add(ElementType::TextView, {60, 300, 640, 360},
                         {.text = "Free shipping on orders over $50"})
                    .done());

  out.push_back(Builder("benign_photo_grid")
                    .add(ElementType::ImageView, {20, 200, 350, 420}, {.fill = kCardGray})
                    .add(ElementType::ImageView, {370, 200, 700, 420}, {.fill = kCardGray})
                    .add(ElementType::ImageView, {20, 440, 350, 660}, {.fill = kCardGray})
                    .done());

  out.push_back(Builder("benign_music_player")
                    .add(ElementType::ImageView, {320, 900, 400, 980},
                         {.icon = IconClass::Play, .fill = kBlockGray})
                    .add(ElementType::SeekBar, {60, 840, 660, 860}, {.fill = kBlockGray})
                    .add(ElementType::TextView, {60, 760, 500, 810}, {.text = "Now playing"})
                    .done());

  out.push_back(Builder("benign_login_form")
                    .add(ElementType::EditText, {80, 400, 640, 460},
                         {.text = "Username", .fill = kBlockGray})
                    .add(ElementType::EditText, {80, 500, 640, 560},
                         {.text = "Password", .fill = kBlockGray})
                    .add(ElementType::Button, {160, 620, 560, 690},
                         {.text = "Log in", .fill = kAccentGreen})
                    .add(ElementType::TextView, {160, 720, 560, 760}, {.text = "Forgot password?"})
                    .done());

  out.push_back(Builder("benign_weather")
                    .add(ElementType::TextView, {60, 300, 640, 360},
                         {.text = "Tomorrow: sunny and 25 degrees"})
                    .add(ElementType::ImageView, {300, 420, 420, 540},
                         {.icon = IconClass::Time, .fill = kCardGray})
                    .done());

  out.push_back(Builder("benign_video_call")
                    .add(ElementType::Button, {160, 900, 560, 970},
                         {.text = "Start call", .fill = kAccentGreen})
                    .add(ElementType::ImageView, {320, 760, 400, 840},
                         {.icon = IconClass::Call, .fill = kBlockGray})
                    .done());

  out.push_back(Builder("benign_terms_row")
                    .add(ElementType::TextView, {60, 200, 400, 250}, {.text = "Terms of Service"})
                    .add(ElementType::TextView, {60, 300, 400, 350}, {.text = "Open source licenses"})
                    .done());

  return out;
}

void write_fixture(const Fixture& fx, const std::string& input_dir, const std::string& gt_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(input_dir);
  fs::create_directories(gt_dir);
  const std::string stem = (fs::path(input_dir) / fx.name).string();
  save_png(fx.image, stem + ".png");
  write_text_file(stem + ".elements.json", serialize_element_sidecar(fx.elements));
  if (fx.ocr) write_text_file(stem + ".ocr.json", serialize_ocr_sidecar(*fx.ocr));
  write_text_file((fs::path(gt_dir) / (fx.name + ".gt.json")).string(),
                  serialize_ground_truth(fx.ground_truth()));
}

}  // namespace dpscan::testfix
