#include "lingua/masking.hpp"

#include <algorithm>
#include <limits>

#include "json_codec.hpp"
#include "lingua/text.hpp"

namespace lingua {

std::string_view to_string(MaskKind kind) noexcept {
  return kind == MaskKind::DingGlyphs ? "ding" : "pseudoword";
}

MaskKind parse_mask_kind(std::string_view name) {
  if (name == "ding" || name == "dings" || name == "DingGlyphs") return MaskKind::DingGlyphs;
  if (name == "pseudoword" || name == "pseudowords" || name == "Pseudoword") {
    return MaskKind::Pseudoword;
  }
  throw ContractError("unknown mask scheme '" + std::string(name) + "'");
}

MaskScheme MaskScheme::dings(std::uint64_t seed) {
  MaskScheme s;
  s.kind = MaskKind::DingGlyphs;
  for (char32_t cp = 0x2701; cp <= 0x2740; ++cp) s.glyph_alphabet.push_back(cp);
  s.min_len = 3;
  s.max_len = 6;
  s.seed = seed;
  return s;
}

MaskScheme MaskScheme::pseudowords(std::uint64_t seed) {
  MaskScheme s;
  s.kind = MaskKind::Pseudoword;
  s.syllables.onsets = {"b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s",
                        "t", "v", "z", "br", "cr", "dr", "gl", "pl", "st", "tr", ""};
  s.syllables.nuclei = {"a", "e", "i", "o", "u"};
  s.syllables.codas = {"", "", "", "", "n", "r", "s", "l"};
  s.seed = seed;
  return s;
}

namespace {

bool lowercase_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

void validate_scheme(const MaskScheme& scheme) {
  if (scheme.max_retries == 0) throw ContractError("max_retries must be >= 1");
  if (scheme.kind == MaskKind::DingGlyphs) {
    std::set<char32_t> distinct(scheme.glyph_alphabet.begin(), scheme.glyph_alphabet.end());
    if (distinct.size() != scheme.glyph_alphabet.size()) {
      throw ContractError("glyph_alphabet contains repeated symbols");
    }
    if (distinct.size() < 10) {
      throw ContractError("glyph_alphabet needs at least 10 distinct symbols");
    }
    for (char32_t cp : distinct) {
      if (cp <= 0x20 || cp == U',' || cp == U'"' || cp == 0x7F ||
          (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
        throw ContractError("glyph_alphabet contains a non-printable or reserved symbol");
      }
    }
    if (scheme.min_len < 1 || scheme.min_len > scheme.max_len) {
      throw ContractError("length_range must satisfy 1 <= min <= max");
    }
  } else {
    const SyllableInventory& inv = scheme.syllables;
    if (inv.onsets.empty() || inv.nuclei.empty() || inv.codas.empty()) {
      throw ContractError("syllable inventory needs onsets, nuclei and codas");
    }
    for (const auto& n : inv.nuclei) {
      if (n.empty() || !lowercase_ascii(n)) {
        throw ContractError("nuclei must be non-empty lowercase strings");
      }
    }
    for (const auto* part : {&inv.onsets, &inv.codas}) {
      for (const auto& x : *part) {
        if (!lowercase_ascii(x)) throw ContractError("onsets/codas must be lowercase");
      }
    }
  }
}

std::string candidate_mask(const MaskScheme& scheme, std::string_view surface,
                           std::size_t attempt, std::size_t escalation) {
  std::uint64_t state = mix64(scheme.seed ^ fnv1a64(surface));
  state = mix64(state + 0x632be59bd9b4e019ULL * (attempt + 1));
  state = mix64(state ^ (0x8cb92ba72f3d8dd7ULL * (escalation + 1)));
  SplitMix64 rng(state);

  std::string out;
  if (scheme.kind == MaskKind::DingGlyphs) {
    const std::size_t span = scheme.max_len - scheme.min_len + 1;
    const std::size_t length =
        escalation == 0 ? scheme.min_len + rng.below(span) : scheme.max_len + escalation;
    for (std::size_t i = 0; i < length; ++i) {
      utf8_append(out, scheme.glyph_alphabet[rng.below(scheme.glyph_alphabet.size())]);
    }
    return out;
  }
  const SyllableInventory& inv = scheme.syllables;
  const std::size_t syllables = escalation == 0 ? 2 + rng.below(2) : 3 + escalation;
  for (std::size_t i = 0; i < syllables; ++i) {
    out += inv.onsets[rng.below(inv.onsets.size())];
    out += inv.nuclei[rng.below(inv.nuclei.size())];
    out += inv.codas[rng.below(inv.codas.size())];
  }
  return out;
}

namespace {

// Number of distinct DING strings reachable, saturating.
std::size_t ding_capacity(const MaskScheme& scheme) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  const std::size_t a = scheme.glyph_alphabet.size();
  auto power = [&](std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
      if (r > kMax / a) return kMax;
      r *= a;
    }
    return r;
  };
  std::size_t total = 0;
  auto add = [&](std::size_t x) { total = (total > kMax - x) ? kMax : total + x; };
  for (std::size_t len = scheme.min_len; len <= scheme.max_len; ++len) add(power(len));
  for (std::size_t e = 1; e <= scheme.max_escalations; ++e) add(power(scheme.max_len + e));
  return total;
}

}  // namespace

Lexicon Lexicon::from_entries(MaskScheme scheme, std::map<std::string, std::string> forward,
                              std::string corpus_id, std::string hidden_language) {
  Lexicon lex;
  for (const auto& [surface, mask] : forward) {
    if (mask.empty()) throw ContractError("empty mask for '" + surface + "'");
    if (!lex.reverse_.emplace(mask, surface).second) {
      throw ContractError("mask '" + mask + "' assigned to more than one surface");
    }
  }
  lex.scheme_ = std::move(scheme);
  lex.forward_ = std::move(forward);
  lex.corpus_id_ = std::move(corpus_id);
  lex.hidden_language_ = std::move(hidden_language);
  return lex;
}

std::optional<std::string> Lexicon::mask_of(std::string_view surface) const {
  auto it = forward_.find(std::string(surface));
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Lexicon::surface_of(std::string_view mask) const {
  auto it = reverse_.find(std::string(mask));
  if (it == reverse_.end()) return std::nullopt;
  return it->second;
}

Lexicon build_lexicon(const AnnotatedCorpus& corpus, const MaskScheme& scheme,
                      const std::set<std::string>& extra_words,
                      const std::set<std::string>& blocklist) {
  validate_scheme(scheme);
  std::set<std::string> domain = vocabulary(corpus).surfaces;
  for (const std::string& w : extra_words) {
    std::string n = normalize_surface(w);
    if (!is_valid_surface(n)) throw ContractError("extra word '" + w + "' is not a word");
    domain.insert(std::move(n));
  }
  std::set<std::string> blocked = domain;
  for (const std::string& w : blocklist) blocked.insert(normalize_surface(w));

  if (scheme.kind == MaskKind::DingGlyphs && ding_capacity(scheme) < domain.size()) {
    throw CapacityError("glyph scheme can host " + std::to_string(ding_capacity(scheme)) +
                        " masks but the vocabulary has " + std::to_string(domain.size()));
  }

  std::map<std::string, std::string> forward;
  std::set<std::string> used;
  for (const std::string& surface : domain) {
    std::optional<std::string> chosen;
    for (std::size_t level = 0; level <= scheme.max_escalations && !chosen; ++level) {
      for (std::size_t attempt = 0; attempt < scheme.max_retries; ++attempt) {
        std::string m = candidate_mask(scheme, surface, attempt, level);
        if (!used.contains(m) && !blocked.contains(m)) {
          chosen = std::move(m);
          break;
        }
      }
    }
    if (!chosen) {
      throw CapacityError("no free mask for '" + surface + "' after " +
                          std::to_string(scheme.max_escalations) + " escalations");
    }
    used.insert(*chosen);
    forward.emplace(surface, std::move(*chosen));
  }
  return Lexicon::from_entries(scheme, std::move(forward), corpus.id, corpus.hidden_language);
}

MaskedCorpus mask_corpus(const AnnotatedCorpus& corpus, const Lexicon& lexicon) {
  MaskedCorpus masked{corpus.id, corpus.sentences, corpus.pos_legend, corpus.palette};
  for (Sentence& s : masked.sentences) {
    for (Token& t : s.tokens) {
      auto m = lexicon.mask_of(t.surface);
      if (!m) throw CoverageError(t.surface);
      t.surface = std::move(*m);
    }
  }
  return masked;
}

std::vector<std::string> mask_tokens(std::span<const std::string> surfaces,
                                     const Lexicon& lexicon) {
  std::vector<std::string> out;
  out.reserve(surfaces.size());
  for (const std::string& s : surfaces) {
    auto m = lexicon.mask_of(s);
    if (!m) throw CoverageError(s);
    out.push_back(std::move(*m));
  }
  return out;
}

std::vector<std::string> reveal(std::span<const std::string> masks, const Lexicon& lexicon) {
  std::vector<std::string> out;
  out.reserve(masks.size());
  for (const std::string& m : masks) {
    auto s = lexicon.surface_of(m);
    if (!s) throw RevealError(m);
    out.push_back(std::move(*s));
  }
  return out;
}

std::string reveal_text(std::span<const std::string> masks, const Lexicon& lexicon) {
  return join(reveal(masks, lexicon), " ");
}

AnnotatedCorpus reveal(const MaskedCorpus& masked, const Lexicon& lexicon) {
  AnnotatedCorpus corpus{masked.id, lexicon.hidden_language(), masked.sentences,
                         masked.pos_legend, masked.palette};
  for (Sentence& s : corpus.sentences) {
    for (Token& t : s.tokens) {
      auto surface = lexicon.surface_of(t.surface);
      if (!surface) throw RevealError(t.surface);
      t.surface = std::move(*surface);
    }
  }
  return corpus;
}

namespace {

using detail::json;

json scheme_to_json(const MaskScheme& s) {
  std::u32string glyphs(s.glyph_alphabet.begin(), s.glyph_alphabet.end());
  return {
      {"kind", to_string(s.kind)},
      {"seed", s.seed},
      {"glyph_alphabet", utf8_encode(glyphs)},
      {"length_range", {s.min_len, s.max_len}},
      {"onsets", s.syllables.onsets},
      {"nuclei", s.syllables.nuclei},
      {"codas", s.syllables.codas},
      {"max_retries", s.max_retries},
      {"max_escalations", s.max_escalations},
  };
}

std::vector<std::string> string_list(const json& j, std::string_view key) {
  if (!j.is_array()) throw ParseError("'" + std::string(key) + "' must be a list", 0, 0);
  std::vector<std::string> out;
  for (const json& x : j) {
    if (!x.is_string()) throw ParseError("'" + std::string(key) + "' must hold strings", 0, 0);
    out.push_back(x.get<std::string>());
  }
  return out;
}

// Missing keys fall back to the defaults of the chosen kind.
MaskScheme scheme_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("scheme must be an object", 0, 0);
  const MaskKind kind = parse_mask_kind(detail::require_string(j, "kind", "scheme"));
  std::uint64_t seed = 0;
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0)) {
      throw ParseError("scheme: 'seed' must be a non-negative integer", 0, 0);
    }
    seed = it->get<std::uint64_t>();
  }
  MaskScheme s = kind == MaskKind::DingGlyphs ? MaskScheme::dings(seed)
                                              : MaskScheme::pseudowords(seed);
  if (auto it = j.find("glyph_alphabet"); it != j.end()) {
    s.glyph_alphabet.clear();
    if (it->is_string()) {
      for (char32_t cp : utf8_decode(it->get<std::string>())) s.glyph_alphabet.push_back(cp);
    } else if (it->is_array()) {
      for (const json& cp : *it) {
        if (!cp.is_number_unsigned()) throw ParseError("glyph code points must be integers", 0, 0);
        s.glyph_alphabet.push_back(static_cast<char32_t>(cp.get<std::uint32_t>()));
      }
    } else {
      throw ParseError("'glyph_alphabet' must be a string or list of code points", 0, 0);
    }
  }
  if (auto it = j.find("length_range"); it != j.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_unsigned() ||
        !(*it)[1].is_number_unsigned()) {
      throw ParseError("'length_range' must be [min, max]", 0, 0);
    }
    s.min_len = (*it)[0].get<std::size_t>();
    s.max_len = (*it)[1].get<std::size_t>();
  }
  if (auto it = j.find("onsets"); it != j.end()) s.syllables.onsets = string_list(*it, "onsets");
  if (auto it = j.find("nuclei"); it != j.end()) s.syllables.nuclei = string_list(*it, "nuclei");
  if (auto it = j.find("codas"); it != j.end()) s.syllables.codas = string_list(*it, "codas");
  if (auto it = j.find("max_retries"); it != j.end()) s.max_retries = it->get<std::size_t>();
  if (auto it = j.find("max_escalations"); it != j.end()) {
    s.max_escalations = it->get<std::size_t>();
  }
  return s;
}

}  // namespace

std::string serialize_scheme(const MaskScheme& scheme) {
  return detail::canonical_dump(scheme_to_json(scheme));
}

MaskScheme parse_scheme(std::string_view document) {
  try {
    MaskScheme s = scheme_from_json(detail::parse_json(document));
    validate_scheme(s);
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("scheme: ") + e.what(), 0, 0);
  }
}

std::string serialize_lexicon(const Lexicon& lexicon) {
  json root = {
      {"corpus_id", lexicon.corpus_id()},
      {"hidden_language", lexicon.hidden_language()},
      {"scheme", scheme_to_json(lexicon.scheme())},
      {"entries", lexicon.forward()},
  };
  return detail::canonical_dump(root);
}

Lexicon parse_lexicon(std::string_view document) {
  const json root = detail::parse_json(document);
  try {
    MaskScheme scheme = scheme_from_json(detail::require(root, "scheme", "lexicon"));
    const json& entries = detail::require(root, "entries", "lexicon");
    if (!entries.is_object()) throw ParseError("lexicon: 'entries' must be an object", 0, 0);
    std::map<std::string, std::string> forward;
    for (const auto& [surface, mask] : entries.items()) {
      if (!mask.is_string()) throw ParseError("lexicon: masks must be strings", 0, 0);
      forward.emplace(surface, mask.get<std::string>());
    }
    return Lexicon::from_entries(std::move(scheme), std::move(forward),
                                 detail::require_string(root, "corpus_id", "lexicon"),
                                 detail::require_string(root, "hidden_language", "lexicon"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("lexicon: ") + e.what(), 0, 0);
  } catch (const ContractError& e) {
    throw ParseError(std::string("lexicon: ") + e.what(), 0, 0);
  }
}

std::string serialize_masked_corpus(const MaskedCorpus& masked) {
  json root = {
      {"id", masked.id},
      {"pos_legend", detail::legend_to_json(masked.pos_legend)},
      {"palette", masked.palette},
      {"sentences", detail::sentences_to_json(masked.sentences)},
  };
  return detail::canonical_dump(root);
}

MaskedCorpus parse_masked_corpus(std::string_view document) {
  const json root = detail::parse_json(document);
  MaskedCorpus masked;
  masked.id = detail::require_string(root, "id", "masked corpus");
  masked.pos_legend = detail::legend_from_json(detail::require(root, "pos_legend", "masked corpus"));
  masked.palette = detail::palette_from_json(detail::require(root, "palette", "masked corpus"));
  masked.sentences =
      detail::sentences_from_json(detail::require(root, "sentences", "masked corpus"), false);
  return masked;
}

}  // namespace lingua
