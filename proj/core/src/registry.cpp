#include <algorithm>

#include "lingua/game.hpp"
#include "lingua/text.hpp"

namespace lingua {

namespace {

const ServedCard* find_card(const std::vector<ServedCard>& deck, std::string_view id) {
  auto it = std::find_if(deck.begin(), deck.end(),
                         [&](const ServedCard& c) { return c.id == id; });
  return it != deck.end() && it->id == id ? &*it : nullptr;
}

std::string card_id(char prefix, std::size_t index) {
  std::string digits = std::to_string(index + 1);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  return prefix + digits;
}

std::vector<ServedCard> serve_deck(const std::vector<DeckEntry>& deck, const Lexicon& lexicon,
                                   char prefix) {
  std::vector<ServedCard> out;
  for (std::size_t i = 0; i < deck.size(); ++i) {
    auto mask = lexicon.mask_of(deck[i].surface);
    if (!mask) throw CoverageError(deck[i].surface);
    out.push_back({card_id(prefix, i), *mask, deck[i].surface, deck[i].pos});
  }
  return out;
}

std::uint64_t default_seed(std::string_view corpus_id, MaskKind kind) {
  return fnv1a64(std::string(corpus_id) + "/" + std::string(to_string(kind)));
}

}  // namespace

const ServedCard* CorpusArtifacts::bracelet_card(std::string_view id) const {
  return find_card(bracelet_deck, id);
}

const ServedCard* CorpusArtifacts::grammar_card(std::string_view id) const {
  return find_card(grammar_deck, id);
}

CorpusRegistry CorpusRegistry::build(std::vector<RegistryEntry> entries,
                                     const SheetLayout& layout) {
  // Masks must not spell a word of any team's corpus or deck.
  std::set<std::string> blocklist;
  for (const RegistryEntry& e : entries) {
    const Vocabulary v = vocabulary(e.corpus);
    blocklist.insert(v.surfaces.begin(), v.surfaces.end());
    for (const auto* deck : {&e.bracelet_deck, &e.grammar_deck}) {
      if (!*deck) continue;
      for (const DeckEntry& d : **deck) blocklist.insert(d.surface);
    }
  }

  CorpusRegistry registry;
  for (RegistryEntry& e : entries) {
    const Vocabulary vocab = vocabulary(e.corpus);
    std::vector<DeckEntry> bracelet =
        e.bracelet_deck ? *e.bracelet_deck : default_bracelet_deck(e.corpus);
    std::vector<DeckEntry> grammar =
        e.grammar_deck ? *e.grammar_deck : default_grammar_deck(e.corpus);
    for (const DeckEntry& d : grammar) {
      if (!d.pos) throw ContractError("grammar deck card '" + d.surface + "' has no POS");
    }
    std::set<std::string> extra = out_of_corpus_words(bracelet, vocab);
    extra.merge(out_of_corpus_words(grammar, vocab));

    for (MaskKind kind : {MaskKind::DingGlyphs, MaskKind::Pseudoword}) {
      auto art = std::make_shared<CorpusArtifacts>();
      art->corpus = e.corpus;
      if (auto it = e.lexica.find(kind); it != e.lexica.end()) {
        if (it->second.scheme().kind != kind) {
          throw ContractError("lexicon for '" + e.corpus.id + "' has the wrong scheme kind");
        }
        art->lexicon = it->second;
      } else {
        const std::uint64_t seed = default_seed(e.corpus.id, kind);
        const MaskScheme scheme =
            kind == MaskKind::DingGlyphs ? MaskScheme::dings(seed) : MaskScheme::pseudowords(seed);
        art->lexicon = build_lexicon(e.corpus, scheme, extra, blocklist);
      }
      art->masked = mask_corpus(e.corpus, art->lexicon);
      art->model = build_bigram_model(art->masked.sentences);
      art->rules = extract_rules(e.corpus);
      art->bracelet_deck = serve_deck(bracelet, art->lexicon, 'b');
      art->grammar_deck = serve_deck(grammar, art->lexicon, 'g');
      art->sheets = emit_corpus_sheets(art->masked, layout);
      art->overlay = emit_reveal_overlay(e.corpus, art->sheets.manifest);
      registry.artifacts_[{e.corpus.id, kind}] = std::move(art);
    }
  }
  return registry;
}

CorpusRegistry CorpusRegistry::load(const std::filesystem::path& dir, const SheetLayout& layout) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("corpus registry " + dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> subdirs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_directory() && std::filesystem::exists(entry.path() / "corpus.json")) {
      subdirs.push_back(entry.path());
    }
  }
  std::sort(subdirs.begin(), subdirs.end());

  std::vector<RegistryEntry> entries;
  for (const auto& sub : subdirs) {
    RegistryEntry e;
    e.corpus = load_corpus(sub / "corpus.json");
    for (MaskKind kind : {MaskKind::DingGlyphs, MaskKind::Pseudoword}) {
      const auto path = sub / ("lexicon." + std::string(to_string(kind)) + ".json");
      if (std::filesystem::exists(path)) e.lexica.emplace(kind, parse_lexicon(read_file(path)));
    }
    if (std::filesystem::exists(sub / "bracelet_deck.csv")) {
      e.bracelet_deck = parse_deck_csv(read_file(sub / "bracelet_deck.csv"));
    }
    if (std::filesystem::exists(sub / "grammar_deck.csv")) {
      e.grammar_deck = parse_deck_csv(read_file(sub / "grammar_deck.csv"));
    }
    entries.push_back(std::move(e));
  }
  return build(std::move(entries), layout);
}

const CorpusArtifacts* CorpusRegistry::find(std::string_view corpus_id, MaskKind kind) const {
  auto it = artifacts_.find({std::string(corpus_id), kind});
  return it == artifacts_.end() ? nullptr : it->second.get();
}

std::vector<std::string> CorpusRegistry::corpus_ids() const {
  std::vector<std::string> ids;
  for (const auto& [key, art] : artifacts_) {
    if (ids.empty() || ids.back() != key.first) ids.push_back(key.first);
  }
  return ids;
}

}  // namespace lingua
