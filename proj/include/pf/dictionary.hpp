#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pf {

// Symbol-to-value map over the 128-wide coordinate axis, with group
// structure used by the synthetic pair generator. Immutable after load.
class SymbolDictionary {
 public:
  struct Entry {
    std::string symbol;
    int value;  // 0..127
  };
  struct Group {
    std::string name;
    std::vector<std::string> members;
  };

  // Parses the dictionary text format:
  //   symbol<TAB>value
  //   alias<TAB>unlisted→listed
  //   #group <name>       (members are the symbol lines that follow)
  //   # anything else     (comment)
  static SymbolDictionary parse(const std::string& text);
  static SymbolDictionary load_file(const std::string& path);

  std::optional<int> lookup(const std::string& symbol) const;
  int value_of(const std::string& symbol) const;  // throws UnknownSymbolError

  bool is_alias(const std::string& symbol) const {
    return aliases_.count(symbol) != 0;
  }
  // Alias target for `symbol`, or `symbol` itself when it is a direct entry.
  const std::string& canonical(const std::string& symbol) const;

  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<Group>& groups() const { return groups_; }
  const std::unordered_map<std::string, std::string>& aliases() const {
    return aliases_;
  }

  // Group name of a (canonical) symbol; empty when ungrouped.
  const std::string& group_of(const std::string& symbol) const;

  // All symbols the tokenizer may match: entries plus alias spellings.
  const std::vector<std::string>& matchable_symbols() const {
    return matchable_;
  }

 private:
  std::vector<Entry> entries_;
  std::vector<Group> groups_;
  std::unordered_map<std::string, std::string> aliases_;
  std::unordered_map<std::string, int> values_;
  std::unordered_map<std::string, std::string> symbol_group_;
  std::vector<std::string> matchable_;
};

// The embedded Fig.-2-derived dictionary: 45 entries, values 16..111,
// duplicate-glyph conflicts re-keyed, aliases ɪ→i ʊ→u ɡ→g ɛ→ε.
const SymbolDictionary& default_dictionary();

// The raw text of the embedded dictionary (same format parse() accepts).
const std::string& default_dictionary_text();

}  // namespace pf
