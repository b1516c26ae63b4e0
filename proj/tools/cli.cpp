#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lingua/bigram.hpp"
#include "lingua/corpus.hpp"
#include "lingua/deck.hpp"
#include "lingua/game.hpp"
#include "lingua/grammar.hpp"
#include "lingua/http_server.hpp"
#include "lingua/masking.hpp"
#include "lingua/materials.hpp"
#include "lingua/text.hpp"

namespace lingua::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Signals a usage problem found after flag parsing.
struct UsageError : Error {
  using Error::Error;
};

std::string format_score(double score) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", score);
  return buf;
}

void print_json(std::ostream& out, const json& value) { out << value.dump(2) << "\n"; }

std::vector<std::string> parse_salad(const std::string& text) {
  std::vector<std::string> out;
  for (std::string word : split(text, ',')) {
    word = normalize_surface(word);
    if (word.empty()) throw UsageError("empty word in --salad");
    out.push_back(std::move(word));
  }
  return out;
}

std::vector<int> parse_pos_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& d : split(text, ' ')) {
    if (d.empty()) continue;
    if (d.size() != 1 || d[0] < '0' || d[0] > '9') throw UsageError("bad POS digit '" + d + "'");
    out.push_back(d[0] - '0');
  }
  if (out.empty()) throw UsageError("empty POS sequence");
  return out;
}

// "NP -> 0 1" or "NP = 0 1".
std::pair<Symbol, std::vector<Symbol>> parse_rule_text(const std::string& text) {
  auto arrow = text.find("->");
  std::size_t width = 2;
  if (arrow == std::string::npos) {
    arrow = text.find('=');
    width = 1;
  }
  if (arrow == std::string::npos) throw UsageError("rule needs '->' between lhs and rhs");
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(' ');
    const auto e = s.find_last_not_of(' ');
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  const Symbol lhs = Symbol::parse(trim(text.substr(0, arrow)));
  std::vector<Symbol> rhs;
  for (const std::string& part : split(text.substr(arrow + width), ' ')) {
    if (!part.empty()) rhs.push_back(Symbol::parse(part));
  }
  return {lhs, std::move(rhs)};
}

std::set<std::string> read_wordlist(const fs::path& path) {
  std::set<std::string> words;
  for (const std::string& line : split(read_file(path), '\n')) {
    std::string w = normalize_surface(line);
    while (!w.empty() && (w.back() == '\r' || w.back() == ' ')) w.pop_back();
    if (!w.empty()) words.insert(w);
  }
  return words;
}

SheetLayout load_layout(const std::string& path) {
  return path.empty() ? SheetLayout{} : parse_layout(read_file(path));
}

std::string page_name(std::size_t index) { return "p" + std::to_string(index + 1) + ".svg"; }

struct Artifact {
  std::string relative;
  std::string contents;
};

std::vector<Artifact> sheet_artifacts(const MaskedCorpus& masked, const SheetLayout& layout,
                                      std::uint64_t seed, CoordinateManifest* manifest_out) {
  SheetSet sheets = emit_corpus_sheets(masked, layout);
  sheets.manifest.seed = seed;
  std::vector<Artifact> out;
  for (std::size_t i = 0; i < sheets.pages.size(); ++i) {
    out.push_back({"sheets/" + page_name(i), sheets.pages[i]});
  }
  out.push_back({"sheets/coordinates.json", serialize_manifest(sheets.manifest)});
  if (manifest_out) *manifest_out = sheets.manifest;
  return out;
}

std::vector<Artifact> overlay_artifacts(const AnnotatedCorpus& corpus,
                                        const CoordinateManifest& manifest) {
  const auto pages = emit_reveal_overlay(corpus, manifest);
  std::vector<Artifact> out;
  for (std::size_t i = 0; i < pages.size(); ++i) out.push_back({"overlay/" + page_name(i), pages[i]});
  return out;
}

std::vector<Artifact> card_artifacts(const AnnotatedCorpus& corpus, const Lexicon& lexicon,
                                     const SheetLayout& layout, const std::string& bracelet_csv,
                                     const std::string& grammar_csv) {
  const auto bracelet = bracelet_csv.empty() ? default_bracelet_deck(corpus)
                                             : parse_deck_csv(read_file(bracelet_csv));
  const auto grammar = grammar_csv.empty() ? default_grammar_deck(corpus)
                                           : parse_deck_csv(read_file(grammar_csv));
  auto id = [](char prefix, std::size_t i) {
    std::string digits = std::to_string(i + 1);
    if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
    return prefix + digits;
  };
  auto mask = [&](const std::string& surface) {
    auto m = lexicon.mask_of(surface);
    if (!m) throw CoverageError(surface);
    return *m;
  };
  std::vector<CardSpec> bracelet_cards;
  for (std::size_t i = 0; i < bracelet.size(); ++i) {
    bracelet_cards.push_back(CardSpec::bracelet(id('b', i), mask(bracelet[i].surface)));
  }
  std::vector<CardSpec> grammar_cards;
  for (std::size_t i = 0; i < grammar.size(); ++i) {
    if (!grammar[i].pos) throw UsageError("grammar deck card '" + grammar[i].surface + "' has no pos");
    grammar_cards.push_back(CardSpec::grammar(id('g', i), mask(grammar[i].surface), *grammar[i].pos));
  }

  std::vector<std::string> pages;
  std::vector<CardPlacement> placements;
  for (const auto* deck : {&bracelet_cards, &grammar_cards}) {
    if (deck->empty()) continue;
    DeckSheets sheets = emit_card_deck(*deck, layout);
    const std::size_t offset = pages.size();
    for (CardPlacement p : sheets.manifest) {
      p.page += offset;
      placements.push_back(std::move(p));
    }
    pages.insert(pages.end(), sheets.pages.begin(), sheets.pages.end());
  }
  std::vector<Artifact> out;
  for (std::size_t i = 0; i < pages.size(); ++i) out.push_back({"cards/" + page_name(i), pages[i]});
  out.push_back({"cards/cards.json", serialize_card_manifest(placements, lexicon.scheme().seed)});
  return out;
}

void write_artifacts(const fs::path& dir, const std::vector<Artifact>& artifacts) {
  for (const Artifact& a : artifacts) write_file(dir / a.relative, a.contents);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mystery-language workshop toolkit", "lingua"};
  app.set_config("--config", "", "TOML config file supplying flag values");
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format for listings")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::function<int()> action;

  // validate
  std::string corpus_path;
  auto* validate = app.add_subcommand("validate", "Check a corpus file");
  validate->add_option("--corpus", corpus_path)->required();
  validate->callback([&] {
    action = [&] {
      const std::string text = read_file(corpus_path);
      std::vector<Violation> violations;
      std::size_t sentences = 0;
      try {
        const AnnotatedCorpus corpus = parse_corpus(text);
        sentences = corpus.sentences.size();
      } catch (const ValidationError& e) {
        violations = e.violations();
      }
      if (format == "json") {
        json list = json::array();
        for (const Violation& v : violations) {
          list.push_back({{"sentence", v.sentence ? json(*v.sentence) : json(nullptr)},
                          {"kind", std::string(to_string(v.kind))},
                          {"description", v.description}});
        }
        print_json(out, {{"valid", violations.empty()}, {"sentences", sentences}, {"violations", list}});
      } else if (violations.empty()) {
        out << "ok: " << sentences << " sentences\n";
      } else {
        for (const Violation& v : violations) {
          out << (v.sentence ? "sentence " + std::to_string(*v.sentence) : std::string("corpus"))
              << ": " << to_string(v.kind) << ": " << v.description << "\n";
        }
      }
      return violations.empty() ? kExitOk : kExitRejected;
    };
  });

  // mask
  std::string scheme_kind = "pseudoword";
  std::string scheme_file;
  std::uint64_t seed = 1;
  std::string extra_deck;
  std::vector<std::string> blocklist_corpora;
  std::string blocklist_file;
  std::string lexicon_out;
  std::string masked_out;
  auto* mask = app.add_subcommand("mask", "Build a lexicon and mask a corpus");
  mask->add_option("--corpus", corpus_path)->required();
  mask->add_option("--scheme", scheme_kind)->check(CLI::IsMember({"ding", "pseudoword"}));
  mask->add_option("--scheme-file", scheme_file, "Full scheme document; overrides --scheme/--seed");
  mask->add_option("--seed", seed);
  mask->add_option("--extra-words", extra_deck, "Deck CSV whose out-of-corpus words need masks");
  mask->add_option("--blocklist-corpus", blocklist_corpora, "Other corpora masks must avoid");
  mask->add_option("--blocklist", blocklist_file, "Word list masks must avoid");
  mask->add_option("--lexicon-out", lexicon_out)->required();
  mask->add_option("--masked-out", masked_out);
  mask->callback([&] {
    action = [&] {
      const AnnotatedCorpus corpus = load_corpus(corpus_path);
      MaskScheme scheme;
      if (!scheme_file.empty()) {
        scheme = parse_scheme(read_file(scheme_file));
      } else {
        scheme = parse_mask_kind(scheme_kind) == MaskKind::DingGlyphs ? MaskScheme::dings(seed)
                                                                       : MaskScheme::pseudowords(seed);
      }
      std::set<std::string> extra;
      if (!extra_deck.empty()) {
        extra = out_of_corpus_words(parse_deck_csv(read_file(extra_deck)), vocabulary(corpus));
      }
      std::set<std::string> blocked;
      for (const std::string& path : blocklist_corpora) {
        const Vocabulary v = vocabulary(load_corpus(path));
        blocked.insert(v.surfaces.begin(), v.surfaces.end());
      }
      if (!blocklist_file.empty()) blocked.merge(read_wordlist(blocklist_file));
      const Lexicon lexicon = build_lexicon(corpus, scheme, extra, blocked);
      write_file(lexicon_out, serialize_lexicon(lexicon));
      if (!masked_out.empty()) write_file(masked_out, serialize_masked_corpus(mask_corpus(corpus, lexicon)));
      out << "masked " << lexicon.size() << " words with seed " << lexicon.scheme().seed << "\n";
      return kExitOk;
    };
  });

  // bigrams
  std::string model_path;
  std::string out_path;
  std::string deck_path;
  std::size_t min_len = 3;
  std::size_t max_len = 8;
  std::size_t limit = 100;
  std::string salad;
  std::string mode = "smoothed";
  std::size_t order_limit = 10;
  auto* bigrams = app.add_subcommand("bigrams", "Bigram model tools");
  bigrams->require_subcommand(1);
  auto* bg_build = bigrams->add_subcommand("build", "Count bigrams of a corpus");
  bg_build->add_option("--corpus", corpus_path)->required();
  bg_build->add_option("--out", out_path)->required();
  bg_build->callback([&] {
    action = [&] {
      write_file(out_path, serialize_model(build_bigram_model(load_corpus(corpus_path))));
      return kExitOk;
    };
  });
  auto* bg_enum = bigrams->add_subcommand("enumerate", "List chains a deck can form");
  bg_enum->add_option("--model", model_path)->required();
  bg_enum->add_option("--deck", deck_path)->required();
  bg_enum->add_option("--min", min_len)->capture_default_str();
  bg_enum->add_option("--max", max_len)->capture_default_str();
  bg_enum->add_option("--limit", limit)->capture_default_str();
  bg_enum->callback([&] {
    action = [&] {
      const BigramModel model = parse_model(read_file(model_path));
      const auto deck = deck_surfaces(parse_deck_csv(read_file(deck_path)));
      const auto chains = enumerate_sentences(model, deck, min_len, max_len, limit);
      if (format == "json") {
        print_json(out, {{"chains", chains}});
      } else {
        for (const auto& c : chains) out << join(c, " ") << "\n";
      }
      return kExitOk;
    };
  });
  auto add_order = [&](CLI::App* cmd) {
    cmd->add_option("--model", model_path)->required();
    cmd->add_option("--salad", salad, "Comma-separated words")->required();
    cmd->add_option("--mode", mode)->check(CLI::IsMember({"strict", "smoothed"}))->capture_default_str();
    cmd->add_option("--limit", order_limit)->capture_default_str();
    cmd->callback([&] {
      action = [&] {
        const BigramModel model = parse_model(read_file(model_path));
        const auto words = parse_salad(salad);
        const auto ranked = order_tokens(model, words,
                                         mode == "strict" ? OrderMode::Strict : OrderMode::Smoothed,
                                         order_limit);
        if (format == "json") {
          json list = json::array();
          for (const RankedOrdering& r : ranked) list.push_back({{"tokens", r.tokens}, {"score", r.score}});
          print_json(out, {{"orderings", list}});
        } else {
          for (const RankedOrdering& r : ranked) out << format_score(r.score) << "\t" << join(r.tokens, " ") << "\n";
        }
        return kExitOk;
      };
    });
  };
  add_order(bigrams->add_subcommand("order", "Rank orderings of a word salad"));
  add_order(app.add_subcommand("order", "Same as 'bigrams order'"));

  // grammar
  std::string rules_path;
  std::size_t max_depth = kDefaultDeriveDepth;
  std::size_t derive_limit = 50;
  std::string rule_text;
  std::string pos_text;
  auto* grammar = app.add_subcommand("grammar", "Grammar tools");
  grammar->require_subcommand(1);
  auto* gr_extract = grammar->add_subcommand("extract", "Induce rules from the annotation");
  gr_extract->add_option("--corpus", corpus_path)->required();
  gr_extract->add_option("--out", out_path)->required();
  gr_extract->callback([&] {
    action = [&] {
      write_file(out_path, serialize_rules(extract_rules(load_corpus(corpus_path))));
      return kExitOk;
    };
  });
  auto* gr_derive = grammar->add_subcommand("derive", "Generate sentences from a deck");
  gr_derive->add_option("--rules", rules_path)->required();
  gr_derive->add_option("--deck", deck_path)->required();
  gr_derive->add_option("--limit", derive_limit)->capture_default_str();
  gr_derive->add_option("--max-depth", max_depth)->capture_default_str();
  gr_derive->callback([&] {
    action = [&] {
      const RuleSet rules = parse_rules(read_file(rules_path));
      const auto cards = to_deck_cards(parse_deck_csv(read_file(deck_path)), Vocabulary{});
      const auto sentences = derive_sentences(rules, cards, max_depth, derive_limit);
      if (format == "json") {
        json list = json::array();
        for (const DerivedSentence& s : sentences) {
          list.push_back({{"words", s.words}, {"pos", s.pos}, {"tree", s.tree.bracketed()}});
        }
        print_json(out, {{"sentences", list}});
      } else {
        for (const DerivedSentence& s : sentences) out << join(s.words, " ") << "\t" << s.tree.bracketed() << "\n";
      }
      return kExitOk;
    };
  });
  auto* gr_check = grammar->add_subcommand("check", "Check a rule or parse a POS sequence");
  gr_check->add_option("--rules", rules_path)->required();
  auto* rule_opt = gr_check->add_option("--rule", rule_text, "e.g. \"NP -> 0 1\"");
  auto* pos_opt = gr_check->add_option("--pos", pos_text, "e.g. \"0 1 2\"");
  rule_opt->excludes(pos_opt);
  gr_check->callback([&] {
    if (rule_text.empty() && pos_text.empty()) throw CLI::ValidationError("one of --rule or --pos is required");
    action = [&] {
      const RuleSet rules = parse_rules(read_file(rules_path));
      if (!rule_text.empty()) {
        const auto [lhs, rhs] = parse_rule_text(rule_text);
        const RuleCheck check = check_rule(rules, lhs, rhs);
        if (format == "json") {
          print_json(out, {{"accepted", check.accepted}, {"verdict", std::string(to_string(check.verdict))}});
        } else {
          out << (check.accepted ? "accepted" : "rejected: " + std::string(to_string(check.verdict))) << "\n";
        }
        return check.accepted ? kExitOk : kExitRejected;
      }
      const auto pos = parse_pos_list(pos_text);
      const ParseResult parse = parse_sequence(rules, pos);
      if (format == "json") {
        print_json(out, {{"parsed", parse.parsed},
                         {"longest_prefix", parse.longest_prefix},
                         {"tree", parse.parsed ? json(parse.trees.front().bracketed()) : json(nullptr)}});
      } else if (parse.parsed) {
        out << parse.trees.front().bracketed() << "\n";
      } else {
        out << "no parse: longest prefix " << parse.longest_prefix << "\n";
      }
      return parse.parsed ? kExitOk : kExitRejected;
    };
  });

  // emit
  std::string lexicon_path;
  std::string layout_path;
  std::string bracelet_deck;
  std::string grammar_deck;
  std::string coordinates_path;
  auto* emit = app.add_subcommand("emit", "Write printable materials");
  emit->require_subcommand(1);
  auto add_inputs = [&](CLI::App* cmd, bool decks) {
    cmd->add_option("--corpus", corpus_path)->required();
    cmd->add_option("--lexicon", lexicon_path)->required();
    cmd->add_option("--layout", layout_path, "Layout document (mm)");
    cmd->add_option("--out", out_path)->required();
    if (decks) {
      cmd->add_option("--bracelet-deck", bracelet_deck);
      cmd->add_option("--grammar-deck", grammar_deck);
    }
  };
  struct Inputs {
    AnnotatedCorpus corpus;
    Lexicon lexicon;
    SheetLayout layout;
  };
  auto load_inputs = [&] {
    Inputs in{load_corpus(corpus_path), parse_lexicon(read_file(lexicon_path)), load_layout(layout_path)};
    return in;
  };
  auto* emit_all = emit->add_subcommand("all", "Sheets, overlay, cards, dictionary, clear text");
  add_inputs(emit_all, true);
  emit_all->callback([&] {
    action = [&] {
      const Inputs in = load_inputs();
      const std::uint64_t s = in.lexicon.scheme().seed;
      CoordinateManifest manifest;
      std::vector<Artifact> files = sheet_artifacts(mask_corpus(in.corpus, in.lexicon), in.layout, s, &manifest);
      for (auto& a : overlay_artifacts(in.corpus, manifest)) files.push_back(std::move(a));
      for (auto& a : card_artifacts(in.corpus, in.lexicon, in.layout, bracelet_deck, grammar_deck)) {
        files.push_back(std::move(a));
      }
      files.push_back({"dictionary.csv", emit_dictionary(in.lexicon, in.corpus)});
      files.push_back({"clear_text.txt", emit_clear_text(in.corpus)});
      json listing = json::array();
      for (const Artifact& a : files) listing.push_back(a.relative);
      files.push_back({"manifest.json", json({{"corpus_id", in.corpus.id},
                                              {"scheme", std::string(to_string(in.lexicon.scheme().kind))},
                                              {"seed", s},
                                              {"files", listing}})
                                                .dump(2) + "\n"});
      write_artifacts(out_path, files);
      out << "wrote " << files.size() << " files to " << out_path << "\n";
      return kExitOk;
    };
  });
  auto* emit_sheets = emit->add_subcommand("sheets", "Masked corpus sheets and coordinates");
  add_inputs(emit_sheets, false);
  emit_sheets->callback([&] {
    action = [&] {
      const Inputs in = load_inputs();
      write_artifacts(out_path, sheet_artifacts(mask_corpus(in.corpus, in.lexicon), in.layout,
                                                in.lexicon.scheme().seed, nullptr));
      return kExitOk;
    };
  });
  auto* emit_overlay = emit->add_subcommand("overlay", "Clear-text reveal overlay");
  add_inputs(emit_overlay, false);
  emit_overlay->add_option("--coordinates", coordinates_path, "Manifest from 'emit sheets'");
  emit_overlay->callback([&] {
    action = [&] {
      const Inputs in = load_inputs();
      CoordinateManifest manifest;
      if (!coordinates_path.empty()) {
        manifest = parse_manifest(read_file(coordinates_path));
      } else {
        sheet_artifacts(mask_corpus(in.corpus, in.lexicon), in.layout, in.lexicon.scheme().seed, &manifest);
      }
      write_artifacts(out_path, overlay_artifacts(in.corpus, manifest));
      return kExitOk;
    };
  });
  auto* emit_cards = emit->add_subcommand("cards", "Bracelet and grammar card decks");
  add_inputs(emit_cards, true);
  emit_cards->callback([&] {
    action = [&] {
      const Inputs in = load_inputs();
      write_artifacts(out_path, card_artifacts(in.corpus, in.lexicon, in.layout, bracelet_deck, grammar_deck));
      return kExitOk;
    };
  });
  auto* emit_dict = emit->add_subcommand("dictionary", "Mask to surface CSV");
  emit_dict->add_option("--corpus", corpus_path)->required();
  emit_dict->add_option("--lexicon", lexicon_path)->required();
  emit_dict->add_option("--out", out_path)->required();
  emit_dict->callback([&] {
    action = [&] {
      write_file(out_path, emit_dictionary(parse_lexicon(read_file(lexicon_path)), load_corpus(corpus_path)));
      return kExitOk;
    };
  });

  // serve
  ServerConfig server;
  std::string listen;
  std::string registry_dir;
  std::string session_dir;
  std::string token;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Run the game service");
  serve->add_option("--listen", listen, "host:port (env LINGUA_LISTEN)");
  serve->add_option("--registry", registry_dir, "Corpus registry directory (env LINGUA_REGISTRY_DIR)");
  serve->add_option("--session-dir", session_dir, "Session log directory (env LINGUA_SESSION_DIR)");
  serve->add_option("--facilitator-token", token, "Phase override token (env LINGUA_FACILITATOR_TOKEN)");
  serve->add_option("--static-dir", static_dir, "Web client assets (env LINGUA_STATIC_DIR)");
  serve->callback([&] {
    action = [&] {
      apply_environment(server, [](const char* name) { return std::getenv(name); });
      if (!listen.empty()) set_listen_address(server, listen);
      if (!registry_dir.empty()) server.registry_dir = registry_dir;
      if (!session_dir.empty()) server.session_dir = session_dir;
      if (!token.empty()) server.facilitator_token = token;
      if (!static_dir.empty()) server.static_dir = static_dir;
      auto registry = std::make_shared<const CorpusRegistry>(CorpusRegistry::load(server.registry_dir));
      ServiceOptions options;
      options.session_dir = server.session_dir;
      options.facilitator_token = server.facilitator_token;
      GameService service(registry, options);
      HttpServer http(service, server.static_dir);
      const int port = http.bind(server.host, server.port);
      out << "serving " << registry->corpus_ids().size() << " corpora on " << server.host << ":" << port
          << std::endl;
      http.run();
      return kExitOk;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!action) return kExitUsage;
  try {
    return action();
  } catch (const IoError& e) {
    err << "lingua: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "lingua: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractError& e) {
    err << "lingua: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeError& e) {
    err << "lingua: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "lingua: " << e.what() << "\n";
    for (const Violation& v : e.violations()) err << "  " << to_string(v.kind) << ": " << v.description << "\n";
    return kExitRejected;
  } catch (const Error& e) {
    err << "lingua: " << e.what() << "\n";
    return kExitRejected;
  }
}

}  // namespace lingua::cli
