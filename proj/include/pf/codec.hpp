#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pf/dictionary.hpp"

namespace pf {

// Ordered phonetic symbols of one name, wrapped in the "-" start marker
// and "_" end marker.
struct SymbolSequence {
  std::vector<std::string> symbols;

  std::size_t size() const { return symbols.size(); }
};

struct Gram2 {
  std::string first;
  std::string second;
  std::size_t index = 0;  // 0-based position in the sequence
};

struct GridPoint {
  int x = 0;  // value of the gram's first symbol
  int y = 0;  // value of the gram's second symbol
  bool operator==(const GridPoint&) const = default;
};

// One 2D coordinate per 2-gram, in pronunciation order.
struct GramPath {
  std::vector<GridPoint> points;
};

// Greedy longest-match scan of `phonetic_text` against the dictionary
// inventory (entries and aliases). ASCII uppercase is folded, whitespace
// skipped, and the start/end markers are added. Throws UnknownSymbolError
// with the offending codepoint position.
SymbolSequence tokenize(const std::string& phonetic_text,
                        const SymbolDictionary& dict);

// Element-wise dictionary lookup, order preserved.
std::vector<int> encode(const SymbolSequence& seq, const SymbolDictionary& dict);

// All |seq|-1 overlapping consecutive symbol pairs.
std::vector<Gram2> segment_2grams(const SymbolSequence& seq);

// point_i = (value(first_i), value(second_i)).
GramPath gram_coordinates(const std::vector<Gram2>& grams,
                          const SymbolDictionary& dict);

// UTF-8 helpers shared with the transcription module.
std::vector<std::string> utf8_codepoints(const std::string& text);

}  // namespace pf
