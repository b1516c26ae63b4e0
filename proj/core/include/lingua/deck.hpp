#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lingua/corpus.hpp"
#include "lingua/grammar.hpp"

namespace lingua {

// One row of a deck CSV: `surface` (required) and `pos`; other columns are ignored.
struct DeckEntry {
  std::string surface;
  std::optional<int> pos;

  friend bool operator==(const DeckEntry&, const DeckEntry&) = default;
};

// Surfaces are normalized like corpus surfaces. Throws ParseError.
std::vector<DeckEntry> parse_deck_csv(std::string_view csv);
std::string serialize_deck_csv(std::span<const DeckEntry> deck);

// Every distinct corpus surface, sorted.
std::vector<DeckEntry> default_bracelet_deck(const AnnotatedCorpus& corpus);
// Every distinct (surface, pos) pair, sorted.
std::vector<DeckEntry> default_grammar_deck(const AnnotatedCorpus& corpus);

std::vector<std::string> deck_surfaces(std::span<const DeckEntry> deck);

// Grammar cards need a POS; in_corpus is looked up in `vocab`. Throws
// ContractError for an entry without POS.
std::vector<DeckCard> to_deck_cards(std::span<const DeckEntry> deck, const Vocabulary& vocab);

// Deck surfaces the corpus never uses; these need masks of their own.
std::set<std::string> out_of_corpus_words(std::span<const DeckEntry> deck,
                                          const Vocabulary& vocab);

}  // namespace lingua
