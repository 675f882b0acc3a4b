#include "pf/codec.hpp"

#include <cctype>

#include "pf/errors.hpp"

namespace pf {

std::vector<std::string> utf8_codepoints(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (c >= 0xF0)
      len = 4;
    else if (c >= 0xE0)
      len = 3;
    else if (c >= 0xC0)
      len = 2;
    if (i + len > text.size()) len = text.size() - i;
    out.push_back(text.substr(i, len));
    i += len;
  }
  return out;
}

SymbolSequence tokenize(const std::string& phonetic_text,
                        const SymbolDictionary& dict) {
  std::string folded;
  folded.reserve(phonetic_text.size());
  for (char ch : phonetic_text)
    folded.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(ch))));

  SymbolSequence seq;
  seq.symbols.push_back("-");
  const auto& inventory = dict.matchable_symbols();
  std::size_t i = 0;
  std::size_t codepoint_pos = 0;
  while (i < folded.size()) {
    unsigned char c = static_cast<unsigned char>(folded[i]);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      ++codepoint_pos;
      continue;
    }
    const std::string* best = nullptr;
    for (const auto& sym : inventory) {
      if (sym == "-" || sym == "_") continue;  // markers are never read from input
      if (folded.compare(i, sym.size(), sym) == 0) {
        best = &sym;
        break;  // inventory is sorted longest-first
      }
    }
    if (!best)
      throw UnknownSymbolError(codepoint_pos,
                               "no dictionary symbol matches input at codepoint " +
                                   std::to_string(codepoint_pos));
    seq.symbols.push_back(*best);
    codepoint_pos += utf8_codepoints(*best).size();
    i += best->size();
  }
  seq.symbols.push_back("_");
  return seq;
}

std::vector<int> encode(const SymbolSequence& seq, const SymbolDictionary& dict) {
  std::vector<int> values;
  values.reserve(seq.symbols.size());
  for (std::size_t i = 0; i < seq.symbols.size(); ++i) {
    auto v = dict.lookup(seq.symbols[i]);
    if (!v)
      throw UnknownSymbolError(i, "unknown symbol '" + seq.symbols[i] +
                                      "' at position " + std::to_string(i));
    values.push_back(*v);
  }
  return values;
}

std::vector<Gram2> segment_2grams(const SymbolSequence& seq) {
  std::vector<Gram2> grams;
  if (seq.symbols.size() < 2) return grams;
  grams.reserve(seq.symbols.size() - 1);
  for (std::size_t i = 0; i + 1 < seq.symbols.size(); ++i)
    grams.push_back({seq.symbols[i], seq.symbols[i + 1], i});
  return grams;
}

GramPath gram_coordinates(const std::vector<Gram2>& grams,
                          const SymbolDictionary& dict) {
  GramPath path;
  path.points.reserve(grams.size());
  for (const auto& g : grams) {
    auto x = dict.lookup(g.first);
    auto y = dict.lookup(g.second);
    if (!x || !y)
      throw UnknownSymbolError(g.index, "unknown symbol in gram " +
                                            std::to_string(g.index));
    path.points.push_back({*x, *y});
  }
  return path;
}

}  // namespace pf
