#include <gtest/gtest.h>

#include "lingua/corpus.hpp"
#include "oracles.hpp"

namespace lingua {
namespace {

// The opening sentence of the fairy tale: PP(0,4) NP(4,6) VP(6,8) PP(8,11)
// with NPs nested inside both PPs.
const char* kFirstSentence = R"({
  "id": "en", "hidden_language": "English",
  "pos_legend": {"0": "DET", "1": "NOUN", "2": "ADJ", "5": "ADP", "6": "VERB", "7": "AUX"},
  "palette": {"NP": "crimson", "PP": "seagreen", "VP": "royalblue"},
  "sentences": [{"tokens": [
      {"surface": "On", "pos": 5}, {"surface": "a", "pos": 0}, {"surface": "snowy", "pos": 2},
      {"surface": "day", "pos": 1}, {"surface": "a", "pos": 0}, {"surface": "queen", "pos": 1},
      {"surface": "was", "pos": 7}, {"surface": "sewing", "pos": 6}, {"surface": "by", "pos": 5},
      {"surface": "her", "pos": 0}, {"surface": "window", "pos": 1}],
    "phrases": [{"start": 0, "end": 4, "label": "PP"}, {"start": 1, "end": 4, "label": "NP"},
                {"start": 4, "end": 6, "label": "NP"}, {"start": 6, "end": 8, "label": "VP"},
                {"start": 8, "end": 11, "label": "PP"}, {"start": 9, "end": 11, "label": "NP"}]}]
})";

AnnotatedCorpus tiny(std::vector<Token> tokens, std::vector<PhraseSpan> spans = {}) {
  AnnotatedCorpus c;
  c.id = "t";
  c.hidden_language = "Test";
  for (int p = 0; p <= 9; ++p) c.pos_legend[p] = "P" + std::to_string(p);
  c.palette = {{"NP", "crimson"}, {"PP", "seagreen"}};
  c.sentences.push_back({std::move(tokens), std::move(spans)});
  return c;
}

bool has_kind(const std::vector<Violation>& vs, ViolationKind kind) {
  for (const auto& v : vs) {
    if (v.kind == kind) return true;
  }
  return false;
}

TEST(ParseCorpus, FirstSentenceHasElevenTokens) {
  const AnnotatedCorpus c = parse_corpus(kFirstSentence);
  ASSERT_EQ(c.sentences.size(), 1u);
  EXPECT_EQ(c.sentences[0].tokens.size(), 11u);
  EXPECT_EQ(c.sentences[0].tokens[0].surface, "on");  // lowercased
  EXPECT_EQ(join(c.sentences[0].surfaces(), " "), "on a snowy day a queen was sewing by her window");
  EXPECT_TRUE(validate_corpus(c).empty());
}

TEST(ParseCorpus, EmptyCorpusIsRejected) {
  try {
    parse_corpus(R"({"id":"x","hidden_language":"X","pos_legend":{},"palette":{},"sentences":[]})");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_EQ(e.violations()[0].kind, ViolationKind::EmptyCorpus);
    EXPECT_EQ(e.violations()[0].description, "empty corpus");
  }
}

TEST(ParseCorpus, CrossingSpansAreRejected) {
  const char* doc = R"({"id":"x","hidden_language":"X","pos_legend":{"0":"A"},"palette":{"NP":"crimson"},
    "sentences":[{"tokens":[{"surface":"a","pos":0},{"surface":"b","pos":0},{"surface":"c","pos":0},
      {"surface":"d","pos":0},{"surface":"e","pos":0}],
      "phrases":[{"start":0,"end":3,"label":"NP"},{"start":2,"end":5,"label":"NP"}]}]})";
  try {
    parse_corpus(doc);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations()[0].kind, ViolationKind::CrossingSpans);
    EXPECT_EQ(e.violations()[0].sentence, 0u);
    EXPECT_NE(e.violations()[0].description.find("crossing spans"), std::string::npos);
  }
}

TEST(ParseCorpus, MalformedSyntaxReportsLine) {
  try {
    parse_corpus("{\n  \"id\": \"x\",\n  oops\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(ParseCorpus, NegativeIndicesAreParseErrors) {
  const char* doc = R"({"id":"x","hidden_language":"X","pos_legend":{"0":"A"},"palette":{"NP":"red"},
    "sentences":[{"tokens":[{"surface":"a","pos":0}],"phrases":[{"start":-1,"end":1,"label":"NP"}]}]})";
  EXPECT_THROW(parse_corpus(doc), ParseError);
  // A negative POS is well-formed JSON but outside the tag range.
  const char* neg_pos = R"({"id":"x","hidden_language":"X","pos_legend":{"0":"A"},"palette":{},
    "sentences":[{"tokens":[{"surface":"a","pos":-1}],"phrases":[]}]})";
  try {
    parse_corpus(neg_pos);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violations().front().kind, ViolationKind::PosOutOfRange);
  }
}

TEST(ValidateCorpus, PosOutOfRange) {
  const auto vs = validate_corpus(tiny({{"a", 12}}));
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::PosOutOfRange);
  EXPECT_EQ(vs[0].sentence, 0u);
}

TEST(ValidateCorpus, UnknownPhraseLabel) {
  AnnotatedCorpus c = tiny({{"a", 0}, {"b", 1}}, {{0, 2, "VP"}});
  const auto vs = validate_corpus(c);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::UnknownPhraseLabel);
}

TEST(ValidateCorpus, OtherBreaches) {
  EXPECT_TRUE(has_kind(validate_corpus(tiny({})), ViolationKind::EmptySentence));
  EXPECT_TRUE(has_kind(validate_corpus(tiny({{"a", 0}}, {{0, 2, "NP"}})), ViolationKind::SpanOutOfRange));
  EXPECT_TRUE(has_kind(validate_corpus(tiny({{"a", 0}, {"b", 0}}, {{0, 2, "NP"}, {0, 2, "PP"}})),
                       ViolationKind::DuplicateSpan));
  EXPECT_TRUE(has_kind(validate_corpus(tiny({{"A b", 0}})), ViolationKind::InvalidSurface));
  AnnotatedCorpus missing = tiny({{"a", 3}});
  missing.pos_legend.erase(3);
  EXPECT_TRUE(has_kind(validate_corpus(missing), ViolationKind::PosNotInLegend));
  AnnotatedCorpus reserved = tiny({{"a", 0}});
  reserved.palette["S"] = "black";
  EXPECT_TRUE(has_kind(validate_corpus(reserved), ViolationKind::ReservedLabel));
}

TEST(ValidateCorpus, NestedAndWholeSentenceSpansAreFine) {
  EXPECT_TRUE(validate_corpus(tiny({{"a", 0}, {"b", 1}, {"c", 2}}, {{0, 3, "NP"}, {0, 2, "PP"}})).empty());
}

TEST(Vocabulary, MiniCorpusHasEightSurfaces) {
  // the dog is in my garden / the cat is in the garden / my dog sleeps
  const auto v = vocabulary(testing::load_fixture("mini.json"));
  EXPECT_EQ(v.surfaces, (std::set<std::string>{"cat", "dog", "garden", "in", "is", "my", "sleeps", "the"}));
  EXPECT_EQ(v.surfaces.size(), 8u);
}

TEST(Vocabulary, RepetitionCollapses) {
  const auto v = vocabulary(tiny({{"a", 0}, {"a", 0}, {"a", 0}}));
  EXPECT_EQ(v.surfaces, std::set<std::string>{"a"});
}

TEST(Vocabulary, FirstSentenceHasTenSurfaces) {
  const auto v = vocabulary(parse_corpus(kFirstSentence));
  EXPECT_EQ(v.surfaces.size(), 10u);
  EXPECT_EQ(v.pairs.size(), 10u);
}

TEST(Vocabulary, PairsSeparatePosReadings) {
  const auto v = vocabulary(tiny({{"her", 0}, {"her", 3}}));
  EXPECT_EQ(v.surfaces.size(), 1u);
  EXPECT_EQ(v.pairs.size(), 2u);
}

TEST(SpanDepths, CountsStrictContainers) {
  const AnnotatedCorpus c = parse_corpus(kFirstSentence);
  EXPECT_EQ(span_depths(c.sentences[0]), (std::vector<std::size_t>{0, 1, 0, 0, 0, 1}));
}

TEST(Fixtures, AllShippedCorporaValidate) {
  for (const char* name : {"mini.json", "mini_plus.json", "snow_white_en.json", "biancaneve_it.json"}) {
    const AnnotatedCorpus c = testing::load_fixture(name);
    EXPECT_TRUE(validate_corpus(c).empty()) << name;
  }
  EXPECT_EQ(testing::load_fixture("snow_white_en.json").sentences.size(), 60u);
}

TEST(Fixtures, FirstEnglishSentenceMatchesItsAnnotation) {
  const AnnotatedCorpus en = testing::load_fixture("snow_white_en.json");
  const Sentence& s = en.sentences.front();
  EXPECT_EQ(join(s.surfaces(), " "), "on a snowy day a queen was sewing by her window");
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> spans;
  for (const auto& p : s.phrases) spans.emplace_back(p.start, p.end, p.label);
  EXPECT_EQ(spans, (std::vector<std::tuple<std::size_t, std::size_t, std::string>>{
                       {0, 4, "PP"}, {1, 4, "NP"}, {4, 6, "NP"}, {6, 8, "VP"}, {8, 11, "PP"}, {9, 11, "NP"}}));
}

// Properties over random corpora.

TEST(CorpusProperties, RoundTripIsByteStable) {
  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const AnnotatedCorpus c = testing::random_corpus(rng, 1 + rng.below(6), 1 + rng.below(12), 9);
    ASSERT_TRUE(validate_corpus(c).empty());
    const std::string once = serialize_corpus(c);
    const AnnotatedCorpus back = parse_corpus(once);
    EXPECT_EQ(back, c);
    EXPECT_EQ(serialize_corpus(back), once);
  }
  const std::string en = read_file(testing::fixture("snow_white_en.json"));
  const std::string canonical = serialize_corpus(parse_corpus(en));
  EXPECT_EQ(serialize_corpus(parse_corpus(canonical)), canonical);
  EXPECT_EQ(canonical.back(), '\n');
}

TEST(CorpusProperties, AcceptedSpansAreWellNested) {
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const AnnotatedCorpus c = parse_corpus(serialize_corpus(testing::random_corpus(rng, 4, 8, 10)));
    for (const Sentence& s : c.sentences) {
      for (const auto& a : s.phrases) {
        for (const auto& b : s.phrases) {
          const std::size_t lo = std::max(a.start, b.start);
          const std::size_t hi = std::min(a.end, b.end);
          const bool disjoint = lo >= hi;
          const bool a_in_b = b.start <= a.start && a.end <= b.end;
          const bool b_in_a = a.start <= b.start && b.end <= a.end;
          EXPECT_TRUE(disjoint || a_in_b || b_in_a);
        }
      }
    }
  }
}

TEST(CorpusProperties, ParserAndValidatorAgree) {
  // Random span soup: parse_corpus accepts exactly when validate_corpus is empty.
  SplitMix64 rng(3);
  for (int i = 0; i < 300; ++i) {
    AnnotatedCorpus c = tiny({{"a", 0}, {"b", 1}, {"c", 2}, {"d", 3}, {"e", 4}});
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = rng.below(5);
      const std::size_t b = a + 1 + rng.below(5 - a);
      c.sentences[0].phrases.push_back({a, b, rng.below(2) ? "NP" : "PP"});
    }
    const bool valid = validate_corpus(c).empty();
    bool parsed = true;
    try {
      parse_corpus(serialize_corpus(c));
    } catch (const ValidationError&) {
      parsed = false;
    }
    EXPECT_EQ(valid, parsed);
  }
}

}  // namespace
}  // namespace lingua
