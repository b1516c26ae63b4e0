#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lingua/corpus.hpp"

namespace lingua {

enum class MaskKind { DingGlyphs, Pseudoword };

std::string_view to_string(MaskKind kind) noexcept;
MaskKind parse_mask_kind(std::string_view name);  // "ding" | "pseudoword"

struct SyllableInventory {
  std::vector<std::string> onsets;  // "" entries allow onsetless syllables
  std::vector<std::string> nuclei;
  std::vector<std::string> codas;   // "" entries allow open syllables

  friend bool operator==(const SyllableInventory&, const SyllableInventory&) = default;
};

struct MaskScheme {
  MaskKind kind = MaskKind::Pseudoword;
  std::vector<char32_t> glyph_alphabet;
  std::size_t min_len = 3;
  std::size_t max_len = 6;
  SyllableInventory syllables;
  std::uint64_t seed = 0;
  // Re-draws per escalation level before the level is raised.
  std::size_t max_retries = 64;
  std::size_t max_escalations = 4;

  // Dingbats U+2701..U+2740 with 3..6 glyph masks.
  static MaskScheme dings(std::uint64_t seed);
  // CV(C) syllables over a small Latin inventory.
  static MaskScheme pseudowords(std::uint64_t seed);

  friend bool operator==(const MaskScheme&, const MaskScheme&) = default;
};

// Throws ContractError when the scheme breaks its invariants.
void validate_scheme(const MaskScheme& scheme);

// The mask drawn for `surface` at a given retry and escalation level. Pure
// function of (scheme, surface, attempt, escalation).
std::string candidate_mask(const MaskScheme& scheme, std::string_view surface,
                           std::size_t attempt, std::size_t escalation);

// Injective surface -> mask map plus its inverse. The lexicon is the
// facilitator's secret, so it also remembers which corpus it hides.
class Lexicon {
 public:
  Lexicon() = default;

  // Throws ContractError if `forward` is not injective.
  static Lexicon from_entries(MaskScheme scheme,
                              std::map<std::string, std::string> forward,
                              std::string corpus_id, std::string hidden_language);

  const MaskScheme& scheme() const noexcept { return scheme_; }
  const std::map<std::string, std::string>& forward() const noexcept { return forward_; }
  const std::map<std::string, std::string>& reverse() const noexcept { return reverse_; }
  const std::string& corpus_id() const noexcept { return corpus_id_; }
  const std::string& hidden_language() const noexcept { return hidden_language_; }

  std::optional<std::string> mask_of(std::string_view surface) const;
  std::optional<std::string> surface_of(std::string_view mask) const;
  std::size_t size() const noexcept { return forward_.size(); }

  friend bool operator==(const Lexicon&, const Lexicon&) = default;

 private:
  MaskScheme scheme_;
  std::map<std::string, std::string> forward_;
  std::map<std::string, std::string> reverse_;
  std::string corpus_id_;
  std::string hidden_language_;
};

// Masks every surface of vocabulary(corpus) and `extra_words`. Masks never
// coincide with those words nor with `blocklist` (e.g. the other team's
// vocabulary). Throws CapacityError when the scheme is too small.
Lexicon build_lexicon(const AnnotatedCorpus& corpus, const MaskScheme& scheme,
                      const std::set<std::string>& extra_words = {},
                      const std::set<std::string>& blocklist = {});

// Corpus with surfaces replaced by masks. Token.surface holds the mask.
struct MaskedCorpus {
  std::string id;
  std::vector<Sentence> sentences;
  std::map<int, std::string> pos_legend;
  std::map<std::string, std::string> palette;

  friend bool operator==(const MaskedCorpus&, const MaskedCorpus&) = default;
};

MaskedCorpus mask_corpus(const AnnotatedCorpus& corpus, const Lexicon& lexicon);
std::vector<std::string> mask_tokens(std::span<const std::string> surfaces,
                                     const Lexicon& lexicon);

std::vector<std::string> reveal(std::span<const std::string> masks,
                                const Lexicon& lexicon);
std::string reveal_text(std::span<const std::string> masks, const Lexicon& lexicon);
AnnotatedCorpus reveal(const MaskedCorpus& masked, const Lexicon& lexicon);

std::string serialize_lexicon(const Lexicon& lexicon);
Lexicon parse_lexicon(std::string_view document);

std::string serialize_masked_corpus(const MaskedCorpus& masked);
MaskedCorpus parse_masked_corpus(std::string_view document);

std::string serialize_scheme(const MaskScheme& scheme);
MaskScheme parse_scheme(std::string_view document);

}  // namespace lingua
