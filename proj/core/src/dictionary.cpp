#include <algorithm>
#include <charconv>

#include "lingua/materials.hpp"
#include "lingua/text.hpp"

namespace lingua {

std::string emit_dictionary(const Lexicon& lexicon, const AnnotatedCorpus& corpus) {
  const Vocabulary vocab = vocabulary(corpus);
  for (const std::string& surface : vocab.surfaces) {
    if (!lexicon.mask_of(surface)) throw CoverageError(surface);
  }
  std::string out = "mask,surface,pos_digits\n";
  // reverse() is keyed by mask, so rows come out sorted by mask.
  for (const auto& [mask, surface] : lexicon.reverse()) {
    std::vector<std::string> digits;
    for (auto it = vocab.pairs.lower_bound({surface, kMinPos});
         it != vocab.pairs.end() && it->first == surface; ++it) {
      digits.push_back(std::to_string(it->second));
    }
    out += csv_field(mask) + "," + csv_field(surface) + "," + csv_field(join(digits, " ")) + "\n";
  }
  return out;
}

std::vector<DictionaryRow> parse_dictionary(std::string_view csv) {
  const auto records = parse_csv(csv);
  if (records.empty() || records.front() != std::vector<std::string>{"mask", "surface", "pos_digits"}) {
    throw ParseError("dictionary header must be mask,surface,pos_digits", 1, 1);
  }
  std::vector<DictionaryRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.size() != 3) throw ParseError("dictionary row needs 3 fields", i + 1, 1);
    DictionaryRow row{r[0], r[1], {}};
    for (const std::string& d : split(r[2], ' ')) {
      if (d.empty()) continue;
      int value = -1;
      auto [ptr, ec] = std::from_chars(d.data(), d.data() + d.size(), value);
      if (ec != std::errc{} || ptr != d.data() + d.size() || value < kMinPos || value > kMaxPos) {
        throw ParseError("bad POS digit '" + d + "'", i + 1, 3);
      }
      row.pos_digits.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lingua
