#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lingua/corpus.hpp"
#include "lingua/masking.hpp"

namespace lingua {

// All geometry is integral micrometres so that emitted documents and the
// mask/clear alignment are exact.
using Micrometres = std::int64_t;

struct SheetLayout {
  Micrometres page_width = 297000;  // A3 portrait
  Micrometres page_height = 420000;
  Micrometres margin = 15000;
  Micrometres em = 6000;
  int advance_permille = 600;  // fixed-width glyph advance, fraction of em
  int superscript_permille = 550;
  Micrometres token_gap = 3000;
  Micrometres line_base = 1500;  // text top to the outermost phrase line
  Micrometres line_step = 2000;  // per nesting level
  Micrometres line_stroke = 600;
  Micrometres row_gap = 5000;
  std::string font_family = "monospace";
  std::map<std::string, std::string> colors;  // palette colour name -> SVG paint

  Micrometres advance() const noexcept { return em * advance_permille / 1000; }
  Micrometres superscript_em() const noexcept { return em * superscript_permille / 1000; }
  Micrometres superscript_advance() const noexcept {
    return superscript_em() * advance_permille / 1000;
  }
  Micrometres text_top() const noexcept { return em * 9 / 10; }
  Micrometres descent() const noexcept { return em / 4; }
  // Line offset above the baseline for a phrase at nesting `depth`.
  Micrometres line_offset(std::size_t depth) const noexcept {
    return text_top() + line_base + static_cast<Micrometres>(depth) * line_step;
  }
  std::string resolve_color(std::string_view name) const;

  // Throws LayoutError.
  void validate() const;
};

// Layout documents use millimetres; unspecified keys keep their defaults.
SheetLayout parse_layout(std::string_view document);
std::string serialize_layout(const SheetLayout& layout);

struct TokenBox {
  std::size_t page = 0;  // 1-based
  Micrometres x = 0;     // left edge
  Micrometres y = 0;     // baseline
  Micrometres width = 0;

  friend bool operator==(const TokenBox&, const TokenBox&) = default;
};

struct CoordinateManifest {
  Micrometres page_width = 0;
  Micrometres page_height = 0;
  Micrometres em = 0;
  int advance_permille = 600;
  std::string font_family = "monospace";
  std::size_t pages = 0;
  std::vector<std::vector<TokenBox>> sentences;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const CoordinateManifest&, const CoordinateManifest&) = default;
};

std::string serialize_manifest(const CoordinateManifest& manifest);
CoordinateManifest parse_manifest(std::string_view document);

struct SheetSet {
  std::vector<std::string> pages;  // SVG documents, page 1 first
  CoordinateManifest manifest;
};

// One row block per sentence: masks with POS superscripts and coloured
// phrase lines stacked by nesting depth. Sentences wrap inside the printable
// width and never straddle a page.
SheetSet emit_corpus_sheets(const MaskedCorpus& masked, const SheetLayout& layout);

// Clear text at the recorded position of each mask, transparent background,
// same pagination. Throws AlignmentError if the manifest does not match.
std::vector<std::string> emit_reveal_overlay(const AnnotatedCorpus& corpus,
                                             const CoordinateManifest& manifest);

struct CardSpec {
  std::string id;
  std::string face;
  std::optional<int> pos;  // grammar cards print their POS digit
  bool loop_marker = false;  // bracelet cards carry a thread loop anchor
  Micrometres width = 52000;
  Micrometres height = 32000;

  static CardSpec bracelet(std::string id, std::string face);
  static CardSpec grammar(std::string id, std::string face, int pos);
};

struct CardPlacement {
  std::string id;
  std::string face;
  std::optional<int> pos;
  bool loop_marker = false;
  std::size_t page = 0;
  Micrometres x = 0;
  Micrometres y = 0;

  friend bool operator==(const CardPlacement&, const CardPlacement&) = default;
};

struct DeckSheets {
  std::vector<std::string> pages;
  std::vector<CardPlacement> manifest;
};

// Grid-paginated cards with dashed cut guides. Throws ContractError for an
// empty deck or a card that is neither a bracelet nor a grammar card.
DeckSheets emit_card_deck(std::span<const CardSpec> cards, const SheetLayout& layout);

std::string serialize_card_manifest(std::span<const CardPlacement> placements,
                                    std::optional<std::uint64_t> seed);

struct DictionaryRow {
  std::string mask;
  std::string surface;
  std::vector<int> pos_digits;

  friend bool operator==(const DictionaryRow&, const DictionaryRow&) = default;
};

// CSV `mask,surface,pos_digits`, sorted by mask, LF line ends.
std::string emit_dictionary(const Lexicon& lexicon, const AnnotatedCorpus& corpus);
std::vector<DictionaryRow> parse_dictionary(std::string_view csv);

// One clear-text sentence per line.
std::string emit_clear_text(const AnnotatedCorpus& corpus);

}  // namespace lingua
