#include "lingua/deck.hpp"

#include <algorithm>
#include <charconv>

#include "lingua/text.hpp"

namespace lingua {

std::vector<DeckEntry> parse_deck_csv(std::string_view csv) {
  const auto records = parse_csv(csv);
  if (records.empty()) throw ParseError("deck is missing its header row", 1, 1);
  const auto& header = records.front();
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto surface_col = column("surface");
  if (!surface_col) throw ParseError("deck header lacks a 'surface' column", 1, 1);
  const auto pos_col = column("pos");

  std::vector<DeckEntry> deck;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.size() == 1 && r[0].empty()) continue;
    if (r.size() != header.size()) {
      throw ParseError("deck row has " + std::to_string(r.size()) + " fields, header has " +
                           std::to_string(header.size()),
                       i + 1, 1);
    }
    DeckEntry e;
    e.surface = normalize_surface(r[*surface_col]);
    if (!is_valid_surface(e.surface)) {
      throw ParseError("invalid deck surface '" + r[*surface_col] + "'", i + 1, *surface_col + 1);
    }
    if (pos_col && !r[*pos_col].empty()) {
      const std::string& f = r[*pos_col];
      int value = -1;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (ec != std::errc{} || ptr != f.data() + f.size() || value < kMinPos || value > kMaxPos) {
        throw ParseError("invalid POS '" + f + "'", i + 1, *pos_col + 1);
      }
      e.pos = value;
    }
    deck.push_back(std::move(e));
  }
  return deck;
}

std::string serialize_deck_csv(std::span<const DeckEntry> deck) {
  std::string out = "surface,pos\n";
  for (const DeckEntry& e : deck) {
    out += csv_field(e.surface) + "," + (e.pos ? std::to_string(*e.pos) : "") + "\n";
  }
  return out;
}

std::vector<DeckEntry> default_bracelet_deck(const AnnotatedCorpus& corpus) {
  std::vector<DeckEntry> deck;
  for (const std::string& s : vocabulary(corpus).surfaces) deck.push_back({s, std::nullopt});
  return deck;
}

std::vector<DeckEntry> default_grammar_deck(const AnnotatedCorpus& corpus) {
  std::vector<DeckEntry> deck;
  for (const auto& [s, pos] : vocabulary(corpus).pairs) deck.push_back({s, pos});
  return deck;
}

std::vector<std::string> deck_surfaces(std::span<const DeckEntry> deck) {
  std::vector<std::string> out;
  out.reserve(deck.size());
  for (const DeckEntry& e : deck) out.push_back(e.surface);
  return out;
}

std::vector<DeckCard> to_deck_cards(std::span<const DeckEntry> deck, const Vocabulary& vocab) {
  std::vector<DeckCard> cards;
  for (const DeckEntry& e : deck) {
    if (!e.pos) throw ContractError("grammar card '" + e.surface + "' has no POS");
    cards.push_back({e.surface, *e.pos, vocab.surfaces.contains(e.surface)});
  }
  return cards;
}

std::set<std::string> out_of_corpus_words(std::span<const DeckEntry> deck,
                                          const Vocabulary& vocab) {
  std::set<std::string> out;
  for (const DeckEntry& e : deck) {
    if (!vocab.surfaces.contains(e.surface)) out.insert(e.surface);
  }
  return out;
}

}  // namespace lingua
