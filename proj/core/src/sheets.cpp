#include <algorithm>
#include <cmath>

#include "json_codec.hpp"
#include "lingua/materials.hpp"
#include "lingua/text.hpp"
#include "svg.hpp"

namespace lingua {

using detail::json;

std::string SheetLayout::resolve_color(std::string_view name) const {
  auto it = colors.find(std::string(name));
  return it == colors.end() ? std::string(name) : it->second;
}

void SheetLayout::validate() const {
  auto positive = [](Micrometres v, const char* what) {
    if (v <= 0) throw LayoutError(std::string(what) + " must be positive");
  };
  positive(page_width, "page_width");
  positive(page_height, "page_height");
  positive(em, "em");
  positive(line_step, "line_step");
  positive(line_stroke, "line_stroke");
  if (margin < 0 || token_gap < 0 || line_base < 0 || row_gap < 0) {
    throw LayoutError("margins and gaps must not be negative");
  }
  if (2 * margin >= page_width || 2 * margin >= page_height) {
    throw LayoutError("margins leave no printable area");
  }
  if (advance_permille <= 0 || advance_permille > 2000 || superscript_permille <= 0 ||
      superscript_permille > 1000) {
    throw LayoutError("font ratios out of range");
  }
}

namespace {

Micrometres to_um(const json& v, const char* key) {
  if (!v.is_number()) throw ParseError(std::string("layout: '") + key + "' must be a number", 0, 0);
  return static_cast<Micrometres>(std::llround(v.get<double>() * 1000.0));
}

int to_permille(const json& v, const char* key) {
  if (!v.is_number()) throw ParseError(std::string("layout: '") + key + "' must be a number", 0, 0);
  return static_cast<int>(std::lround(v.get<double>() * 1000.0));
}

json um_json(Micrometres um) {
  if (um % 1000 == 0) return um / 1000;
  return static_cast<double>(um) / 1000.0;
}

}  // namespace

SheetLayout parse_layout(std::string_view document) {
  const json root = detail::parse_json(document);
  if (!root.is_object()) throw ParseError("layout must be an object", 0, 0);
  SheetLayout l;
  struct LengthField {
    const char* key;
    Micrometres SheetLayout::*field;
  };
  static constexpr LengthField kLengths[] = {
      {"page_width", &SheetLayout::page_width}, {"page_height", &SheetLayout::page_height},
      {"margin", &SheetLayout::margin},         {"em", &SheetLayout::em},
      {"token_gap", &SheetLayout::token_gap},   {"line_base", &SheetLayout::line_base},
      {"line_step", &SheetLayout::line_step},   {"line_stroke", &SheetLayout::line_stroke},
      {"row_gap", &SheetLayout::row_gap},
  };
  for (const auto& f : kLengths) {
    if (auto it = root.find(f.key); it != root.end()) l.*(f.field) = to_um(*it, f.key);
  }
  if (auto it = root.find("advance"); it != root.end()) l.advance_permille = to_permille(*it, "advance");
  if (auto it = root.find("superscript"); it != root.end()) {
    l.superscript_permille = to_permille(*it, "superscript");
  }
  if (auto it = root.find("font_family"); it != root.end()) {
    if (!it->is_string()) throw ParseError("layout: 'font_family' must be a string", 0, 0);
    l.font_family = it->get<std::string>();
  }
  if (auto it = root.find("colors"); it != root.end()) l.colors = detail::palette_from_json(*it);
  l.validate();
  return l;
}

std::string serialize_layout(const SheetLayout& l) {
  return detail::canonical_dump({
      {"page_width", um_json(l.page_width)},
      {"page_height", um_json(l.page_height)},
      {"margin", um_json(l.margin)},
      {"em", um_json(l.em)},
      {"advance", l.advance_permille / 1000.0},
      {"superscript", l.superscript_permille / 1000.0},
      {"token_gap", um_json(l.token_gap)},
      {"line_base", um_json(l.line_base)},
      {"line_step", um_json(l.line_step)},
      {"line_stroke", um_json(l.line_stroke)},
      {"row_gap", um_json(l.row_gap)},
      {"font_family", l.font_family},
      {"colors", l.colors},
  });
}

std::string serialize_manifest(const CoordinateManifest& m) {
  json sentences = json::array();
  for (const auto& boxes : m.sentences) {
    json tokens = json::array();
    for (const TokenBox& b : boxes) {
      tokens.push_back({{"page", b.page}, {"x", b.x}, {"y", b.y}, {"w", b.width}});
    }
    sentences.push_back({{"tokens", std::move(tokens)}});
  }
  json root = {
      {"units", "um"},
      {"page_width", m.page_width},
      {"page_height", m.page_height},
      {"em", m.em},
      {"advance", m.advance_permille},
      {"font_family", m.font_family},
      {"pages", m.pages},
      {"sentences", std::move(sentences)},
  };
  root["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  return detail::canonical_dump(root);
}

CoordinateManifest parse_manifest(std::string_view document) {
  const json root = detail::parse_json(document);
  try {
    CoordinateManifest m;
    m.page_width = detail::require_integer(root, "page_width", "manifest");
    m.page_height = detail::require_integer(root, "page_height", "manifest");
    m.em = detail::require_integer(root, "em", "manifest");
    m.advance_permille = static_cast<int>(detail::require_integer(root, "advance", "manifest"));
    m.font_family = detail::require_string(root, "font_family", "manifest");
    m.pages = static_cast<std::size_t>(detail::require_integer(root, "pages", "manifest"));
    if (auto it = root.find("seed"); it != root.end() && !it->is_null()) {
      m.seed = it->get<std::uint64_t>();
    }
    for (const json& s : detail::require(root, "sentences", "manifest")) {
      std::vector<TokenBox> boxes;
      for (const json& t : detail::require(s, "tokens", "manifest sentence")) {
        boxes.push_back({t.at("page").get<std::size_t>(), t.at("x").get<Micrometres>(),
                         t.at("y").get<Micrometres>(), t.at("w").get<Micrometres>()});
      }
      m.sentences.push_back(std::move(boxes));
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0, 0);
  }
}

SheetSet emit_corpus_sheets(const MaskedCorpus& masked, const SheetLayout& layout) {
  layout.validate();
  const Micrometres left = layout.margin;
  const Micrometres right = layout.page_width - layout.margin;
  const Micrometres top = layout.margin;
  const Micrometres bottom = layout.page_height - layout.margin;

  SheetSet out;
  out.manifest.page_width = layout.page_width;
  out.manifest.page_height = layout.page_height;
  out.manifest.em = layout.em;
  out.manifest.advance_permille = layout.advance_permille;
  out.manifest.font_family = layout.font_family;

  std::vector<detail::SvgPage> pages;
  Micrometres cursor = top;
  bool page_has_content = false;

  for (std::size_t si = 0; si < masked.sentences.size(); ++si) {
    const Sentence& s = masked.sentences[si];
    std::vector<Micrometres> widths;
    std::vector<Micrometres> glyph_widths;
    for (const Token& t : s.tokens) {
      const Micrometres glyphs =
          static_cast<Micrometres>(utf8_length(t.surface)) * layout.advance();
      glyph_widths.push_back(glyphs);
      widths.push_back(glyphs + layout.superscript_advance());
      if (widths.back() > right - left) {
        throw LayoutError("token '" + t.surface + "' in sentence " + std::to_string(si) +
                          " is wider than the printable width");
      }
    }

    // Wrap into visual lines.
    std::vector<std::size_t> line_of(s.tokens.size(), 0);
    std::vector<Micrometres> x_of(s.tokens.size(), 0);
    std::size_t lines = s.tokens.empty() ? 0 : 1;
    Micrometres x = left;
    for (std::size_t ti = 0; ti < s.tokens.size(); ++ti) {
      if (x != left && x + widths[ti] > right) {
        ++lines;
        x = left;
      }
      line_of[ti] = lines - 1;
      x_of[ti] = x;
      x += widths[ti] + layout.token_gap;
    }

    const std::vector<std::size_t> depths = span_depths(s);
    const std::size_t levels =
        depths.empty() ? 0 : *std::max_element(depths.begin(), depths.end()) + 1;
    const Micrometres above =
        levels == 0 ? layout.text_top() : layout.line_offset(levels - 1) + layout.line_stroke;
    const Micrometres row_height = above + layout.descent() + layout.row_gap;
    const Micrometres block = static_cast<Micrometres>(lines) * row_height;
    if (block > bottom - top) {
      throw LayoutError("sentence " + std::to_string(si) + " does not fit on one page");
    }
    if (pages.empty() || (page_has_content && cursor + block > bottom)) {
      pages.emplace_back(layout.page_width, layout.page_height, true);
      cursor = top;
      page_has_content = false;
    }
    detail::SvgPage& page = pages.back();
    const std::size_t page_no = pages.size();

    std::vector<TokenBox> boxes;
    for (std::size_t ti = 0; ti < s.tokens.size(); ++ti) {
      const Micrometres baseline =
          cursor + static_cast<Micrometres>(line_of[ti]) * row_height + above;
      boxes.push_back({page_no, x_of[ti], baseline, widths[ti]});
      const std::string ids =
          "data-s=\"" + std::to_string(si) + "\" data-t=\"" + std::to_string(ti) + "\"";
      page.text(x_of[ti], baseline, layout.em, s.tokens[ti].surface, ids);
      page.text(x_of[ti] + glyph_widths[ti], baseline - layout.em * 45 / 100,
                layout.superscript_em(), std::to_string(s.tokens[ti].pos),
                "class=\"pos\" " + ids);
    }
    for (std::size_t pi = 0; pi < s.phrases.size(); ++pi) {
      const PhraseSpan& p = s.phrases[pi];
      auto color_it = masked.palette.find(p.label);
      const std::string stroke =
          layout.resolve_color(color_it == masked.palette.end() ? "black" : color_it->second);
      for (std::size_t line = 0; line < lines; ++line) {
        std::size_t first = p.end;
        std::size_t last = p.end;
        for (std::size_t ti = p.start; ti < p.end && ti < s.tokens.size(); ++ti) {
          if (line_of[ti] != line) continue;
          if (first == p.end) first = ti;
          last = ti;
        }
        if (first == p.end) continue;
        const Micrometres y = boxes[first].y - layout.line_offset(depths[pi]);
        page.line(boxes[first].x, y, boxes[last].x + boxes[last].width, y, stroke,
                  layout.line_stroke,
                  "data-label=\"" + detail::xml_escape(p.label) + "\" data-depth=\"" +
                      std::to_string(depths[pi]) + "\"");
      }
    }
    out.manifest.sentences.push_back(std::move(boxes));
    cursor += block;
    page_has_content = true;
  }

  out.manifest.pages = pages.size();
  for (auto& p : pages) out.pages.push_back(std::move(p).finish(layout.font_family));
  return out;
}

std::vector<std::string> emit_reveal_overlay(const AnnotatedCorpus& corpus,
                                             const CoordinateManifest& manifest) {
  if (manifest.sentences.size() != corpus.sentences.size()) {
    throw AlignmentError("manifest has " + std::to_string(manifest.sentences.size()) +
                         " sentences, corpus has " + std::to_string(corpus.sentences.size()));
  }
  std::vector<detail::SvgPage> pages;
  for (std::size_t i = 0; i < manifest.pages; ++i) {
    pages.emplace_back(manifest.page_width, manifest.page_height, false);
  }
  const Micrometres advance = manifest.em * manifest.advance_permille / 1000;
  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    const Sentence& s = corpus.sentences[si];
    const auto& boxes = manifest.sentences[si];
    if (boxes.size() != s.tokens.size()) {
      throw AlignmentError("sentence " + std::to_string(si) + " has " +
                           std::to_string(s.tokens.size()) + " tokens but " +
                           std::to_string(boxes.size()) + " boxes");
    }
    for (std::size_t ti = 0; ti < s.tokens.size(); ++ti) {
      const TokenBox& b = boxes[ti];
      if (b.page == 0 || b.page > pages.size()) {
        throw AlignmentError("token box on page " + std::to_string(b.page) + " of " +
                             std::to_string(pages.size()));
      }
      std::string attrs = "fill=\"#b00020\" data-s=\"" + std::to_string(si) + "\" data-t=\"" +
                          std::to_string(ti) + "\"";
      const Micrometres clear_width =
          static_cast<Micrometres>(utf8_length(s.tokens[ti].surface)) * advance;
      if (clear_width > b.width) {
        attrs += " textLength=\"" + detail::mm(b.width) + "\" lengthAdjust=\"spacingAndGlyphs\"";
      }
      pages[b.page - 1].text(b.x, b.y, manifest.em, s.tokens[ti].surface, attrs);
    }
  }
  std::vector<std::string> out;
  for (auto& p : pages) out.push_back(std::move(p).finish(manifest.font_family));
  return out;
}

std::string emit_clear_text(const AnnotatedCorpus& corpus) {
  std::string out;
  for (const Sentence& s : corpus.sentences) out += join(s.surfaces(), " ") + "\n";
  return out;
}

}  // namespace lingua
