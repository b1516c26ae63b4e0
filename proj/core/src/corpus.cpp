#include "lingua/corpus.hpp"

#include "json_codec.hpp"
#include "lingua/text.hpp"

namespace lingua {

std::vector<std::string> Sentence::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<int> Sentence::pos_sequence() const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.pos);
  return out;
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::EmptyCorpus: return "empty_corpus";
    case ViolationKind::EmptySentence: return "empty_sentence";
    case ViolationKind::InvalidSurface: return "invalid_surface";
    case ViolationKind::PosOutOfRange: return "pos_out_of_range";
    case ViolationKind::PosNotInLegend: return "pos_not_in_legend";
    case ViolationKind::SpanOutOfRange: return "span_out_of_range";
    case ViolationKind::DuplicateSpan: return "duplicate_span";
    case ViolationKind::CrossingSpans: return "crossing_spans";
    case ViolationKind::UnknownPhraseLabel: return "unknown_phrase_label";
    case ViolationKind::InvalidLabel: return "invalid_label";
    case ViolationKind::ReservedLabel: return "reserved_label";
  }
  return "unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  if (violations.empty()) return "corpus is invalid";
  const Violation& v = violations.front();
  std::string msg;
  if (v.sentence) msg = "sentence " + std::to_string(*v.sentence) + ": ";
  msg += v.description;
  if (violations.size() > 1) {
    msg += " (and " + std::to_string(violations.size() - 1) + " more)";
  }
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

bool is_valid_label(std::string_view label) noexcept {
  if (label.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!alpha(label.front())) return false;
  for (char c : label) {
    if (!(alpha(c) || (c >= '0' && c <= '9') || c == '_' || c == '-')) return false;
  }
  return true;
}

std::vector<Violation> validate_corpus(const AnnotatedCorpus& corpus) {
  std::vector<Violation> out;
  auto add = [&out](std::optional<std::size_t> sentence, ViolationKind kind,
                    std::string description) {
    out.push_back({sentence, kind, std::move(description)});
  };

  for (const auto& [digit, name] : corpus.pos_legend) {
    if (digit < kMinPos || digit > kMaxPos) {
      add(std::nullopt, ViolationKind::PosOutOfRange,
          "pos_legend digit " + std::to_string(digit) + " outside 0..9");
    }
  }
  for (const auto& [label, color] : corpus.palette) {
    if (label == kStartSymbol) {
      add(std::nullopt, ViolationKind::ReservedLabel,
          "palette label 'S' is reserved for the start symbol");
    } else if (!is_valid_label(label)) {
      add(std::nullopt, ViolationKind::InvalidLabel,
          "palette label '" + label + "' is not an identifier");
    }
  }
  if (corpus.sentences.empty()) {
    add(std::nullopt, ViolationKind::EmptyCorpus, "empty corpus");
  }

  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    const Sentence& s = corpus.sentences[si];
    if (s.tokens.empty()) {
      add(si, ViolationKind::EmptySentence, "sentence has no tokens");
    }
    for (std::size_t ti = 0; ti < s.tokens.size(); ++ti) {
      const Token& t = s.tokens[ti];
      if (!is_valid_surface(t.surface)) {
        add(si, ViolationKind::InvalidSurface,
            "token " + std::to_string(ti) + " surface '" + t.surface +
                "' is not a lowercase word");
      }
      if (t.pos < kMinPos || t.pos > kMaxPos) {
        add(si, ViolationKind::PosOutOfRange,
            "token " + std::to_string(ti) + " pos " + std::to_string(t.pos) +
                " outside 0..9");
      } else if (!corpus.pos_legend.contains(t.pos)) {
        add(si, ViolationKind::PosNotInLegend,
            "token " + std::to_string(ti) + " pos " + std::to_string(t.pos) +
                " missing from pos_legend");
      }
    }
    for (std::size_t pi = 0; pi < s.phrases.size(); ++pi) {
      const PhraseSpan& p = s.phrases[pi];
      const std::string where = "span " + p.label + "(" + std::to_string(p.start) +
                                "," + std::to_string(p.end) + ")";
      if (!(p.start < p.end && p.end <= s.tokens.size())) {
        add(si, ViolationKind::SpanOutOfRange, where + " out of range");
      }
      if (p.label == kStartSymbol) {
        add(si, ViolationKind::ReservedLabel, where + " uses reserved label 'S'");
      } else if (!is_valid_label(p.label)) {
        add(si, ViolationKind::InvalidLabel, where + " label is not an identifier");
      } else if (!corpus.palette.contains(p.label)) {
        add(si, ViolationKind::UnknownPhraseLabel,
            where + ": unknown phrase label '" + p.label + "'");
      }
      for (std::size_t qi = pi + 1; qi < s.phrases.size(); ++qi) {
        const PhraseSpan& q = s.phrases[qi];
        const std::string pair = where + " and " + q.label + "(" +
                                 std::to_string(q.start) + "," +
                                 std::to_string(q.end) + ")";
        if (p.start == q.start && p.end == q.end) {
          add(si, ViolationKind::DuplicateSpan, "duplicate span: " + pair);
        } else if ((p.start < q.start && q.start < p.end && p.end < q.end) ||
                   (q.start < p.start && p.start < q.end && q.end < p.end)) {
          add(si, ViolationKind::CrossingSpans, "crossing spans: " + pair);
        }
      }
    }
  }
  return out;
}

AnnotatedCorpus parse_corpus(std::string_view document) {
  using detail::json;
  const json root = detail::parse_json(document);
  if (!root.is_object()) throw ParseError("corpus document must be an object", 1, 1);
  AnnotatedCorpus corpus;
  corpus.id = detail::require_string(root, "id", "corpus");
  corpus.hidden_language = detail::require_string(root, "hidden_language", "corpus");
  corpus.pos_legend = detail::legend_from_json(detail::require(root, "pos_legend", "corpus"));
  corpus.palette = detail::palette_from_json(detail::require(root, "palette", "corpus"));
  corpus.sentences =
      detail::sentences_from_json(detail::require(root, "sentences", "corpus"), true);
  if (auto violations = validate_corpus(corpus); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  return corpus;
}

AnnotatedCorpus load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_file(path));
}

std::string serialize_corpus(const AnnotatedCorpus& corpus) {
  using detail::json;
  json root = {
      {"id", corpus.id},
      {"hidden_language", corpus.hidden_language},
      {"pos_legend", detail::legend_to_json(corpus.pos_legend)},
      {"palette", corpus.palette},
      {"sentences", detail::sentences_to_json(corpus.sentences)},
  };
  return detail::canonical_dump(root);
}

Vocabulary vocabulary(const AnnotatedCorpus& corpus) {
  Vocabulary v;
  for (const Sentence& s : corpus.sentences) {
    for (const Token& t : s.tokens) {
      v.surfaces.insert(t.surface);
      v.pairs.emplace(t.surface, t.pos);
    }
  }
  return v;
}

std::vector<std::size_t> span_depths(const Sentence& sentence) {
  std::vector<std::size_t> depths(sentence.phrases.size(), 0);
  for (std::size_t i = 0; i < sentence.phrases.size(); ++i) {
    const PhraseSpan& inner = sentence.phrases[i];
    for (std::size_t j = 0; j < sentence.phrases.size(); ++j) {
      const PhraseSpan& outer = sentence.phrases[j];
      if (i != j && outer.contains(inner) && outer.length() > inner.length()) {
        ++depths[i];
      }
    }
  }
  return depths;
}

}  // namespace lingua
