#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lingua/error.hpp"

namespace lingua {

inline constexpr int kMinPos = 0;
inline constexpr int kMaxPos = 9;

// Synthetic start symbol of the induced grammar; reserved as a phrase label.
inline constexpr std::string_view kStartSymbol = "S";

struct Token {
  std::string surface;
  int pos = 0;

  friend bool operator==(const Token&, const Token&) = default;
  friend auto operator<=>(const Token&, const Token&) = default;
};

// Half-open token range [start, end) carrying a phrase label.
struct PhraseSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string label;

  bool contains(const PhraseSpan& other) const noexcept {
    return start <= other.start && other.end <= end;
  }
  std::size_t length() const noexcept { return end - start; }

  friend bool operator==(const PhraseSpan&, const PhraseSpan&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<PhraseSpan> phrases;

  std::vector<std::string> surfaces() const;
  std::vector<int> pos_sequence() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct AnnotatedCorpus {
  std::string id;
  std::string hidden_language;
  std::vector<Sentence> sentences;
  std::map<int, std::string> pos_legend;
  std::map<std::string, std::string> palette;

  friend bool operator==(const AnnotatedCorpus&, const AnnotatedCorpus&) = default;
};

enum class ViolationKind {
  EmptyCorpus,
  EmptySentence,
  InvalidSurface,
  PosOutOfRange,
  PosNotInLegend,
  SpanOutOfRange,
  DuplicateSpan,
  CrossingSpans,
  UnknownPhraseLabel,
  InvalidLabel,
  ReservedLabel,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  std::optional<std::size_t> sentence;  // empty for corpus-level problems
  ViolationKind kind;
  std::string description;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Phrase labels look like identifiers so they never read as POS digits.
bool is_valid_label(std::string_view label) noexcept;

std::vector<Violation> validate_corpus(const AnnotatedCorpus& corpus);

// Parses the JSON interchange document, lowercases surfaces, then validates.
// Throws ParseError for malformed text or schema, ValidationError otherwise.
AnnotatedCorpus parse_corpus(std::string_view document);
AnnotatedCorpus load_corpus(const std::filesystem::path& path);

// Canonical form: sorted keys, 2-space indent, trailing newline.
std::string serialize_corpus(const AnnotatedCorpus& corpus);

struct Vocabulary {
  std::set<std::string> surfaces;
  std::set<std::pair<std::string, int>> pairs;
};

Vocabulary vocabulary(const AnnotatedCorpus& corpus);

// Depth of each span (number of spans strictly containing it), in input order.
std::vector<std::size_t> span_depths(const Sentence& sentence);

}  // namespace lingua
