#include <algorithm>

#include "json_codec.hpp"
#include "lingua/materials.hpp"
#include "lingua/text.hpp"
#include "svg.hpp"

namespace lingua {

using detail::json;

CardSpec CardSpec::bracelet(std::string id, std::string face) {
  CardSpec c;
  c.id = std::move(id);
  c.face = std::move(face);
  c.loop_marker = true;
  return c;
}

CardSpec CardSpec::grammar(std::string id, std::string face, int pos) {
  CardSpec c;
  c.id = std::move(id);
  c.face = std::move(face);
  c.pos = pos;
  return c;
}

namespace {

constexpr Micrometres kCardGap = 4000;
constexpr Micrometres kLoopRadius = 2000;

void check_card(const CardSpec& c) {
  if (c.id.empty() || c.face.empty()) throw ContractError("card needs an id and a face");
  if (c.width <= 0 || c.height <= 0) throw ContractError("card '" + c.id + "' has no area");
  const bool bracelet = c.loop_marker && !c.pos;
  const bool grammar = !c.loop_marker && c.pos && *c.pos >= kMinPos && *c.pos <= kMaxPos;
  if (!bracelet && !grammar) {
    throw ContractError("card '" + c.id + "' must carry either a loop marker or a POS digit");
  }
}

}  // namespace

DeckSheets emit_card_deck(std::span<const CardSpec> cards, const SheetLayout& layout) {
  layout.validate();
  if (cards.empty()) throw ContractError("empty deck");
  Micrometres cell_w = 0;
  Micrometres cell_h = 0;
  for (const CardSpec& c : cards) {
    check_card(c);
    cell_w = std::max(cell_w, c.width);
    cell_h = std::max(cell_h, c.height);
  }
  const Micrometres printable_w = layout.page_width - 2 * layout.margin;
  const Micrometres printable_h = layout.page_height - 2 * layout.margin;
  if (cell_w > printable_w || cell_h > printable_h) {
    throw LayoutError("cards are larger than the printable area");
  }
  const std::size_t cols = static_cast<std::size_t>((printable_w + kCardGap) / (cell_w + kCardGap));
  const std::size_t rows = static_cast<std::size_t>((printable_h + kCardGap) / (cell_h + kCardGap));
  const std::size_t per_page = cols * rows;

  DeckSheets out;
  std::vector<detail::SvgPage> pages;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    const CardSpec& c = cards[i];
    if (i % per_page == 0) pages.emplace_back(layout.page_width, layout.page_height, true);
    detail::SvgPage& page = pages.back();
    const std::size_t slot = i % per_page;
    const Micrometres x =
        layout.margin + static_cast<Micrometres>(slot % cols) * (cell_w + kCardGap);
    const Micrometres y =
        layout.margin + static_cast<Micrometres>(slot / cols) * (cell_h + kCardGap);
    const Micrometres cx = x + c.width / 2;

    page.rect(x, y, c.width, c.height,
              "fill=\"none\" stroke=\"#888888\" stroke-width=\"0.3\" stroke-dasharray=\"2 1\" "
              "data-card=\"" + detail::xml_escape(c.id) + "\"");
    page.text(x + 1500, y + 3000, 2000, c.id, "fill=\"#aaaaaa\"");
    if (c.loop_marker) {
      page.circle(cx, y + kLoopRadius + 2000, kLoopRadius,
                  "fill=\"none\" stroke=\"#000000\" stroke-width=\"0.4\" class=\"loop\"");
    }

    // Shrink the face until it fits 85% of the card width.
    const Micrometres glyphs = static_cast<Micrometres>(std::max<std::size_t>(1, utf8_length(c.face)));
    Micrometres size = c.height * 35 / 100;
    const Micrometres fit = c.width * 85 / 100 * 1000 / (glyphs * layout.advance_permille);
    size = std::min(size, fit);
    page.text(cx, y + c.height / 2 + size * 35 / 100, size, c.face,
              "text-anchor=\"middle\" class=\"face\"");
    if (c.pos) {
      page.text(cx, y + c.height - 3000, layout.em, std::to_string(*c.pos),
                "text-anchor=\"middle\" class=\"pos\"");
    }
    out.manifest.push_back({c.id, c.face, c.pos, c.loop_marker, pages.size(), x, y});
  }
  for (auto& p : pages) out.pages.push_back(std::move(p).finish(layout.font_family));
  return out;
}

std::string serialize_card_manifest(std::span<const CardPlacement> placements,
                                    std::optional<std::uint64_t> seed) {
  json cards = json::array();
  for (const CardPlacement& p : placements) {
    cards.push_back({{"id", p.id},
                     {"face", p.face},
                     {"pos", p.pos ? json(*p.pos) : json(nullptr)},
                     {"loop_marker", p.loop_marker},
                     {"page", p.page},
                     {"x", p.x},
                     {"y", p.y}});
  }
  return detail::canonical_dump(
      {{"units", "um"}, {"cards", std::move(cards)}, {"seed", seed ? json(*seed) : json(nullptr)}});
}

}  // namespace lingua
