#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace pf {

enum class ScriptTag {
  kHangul,       // Korean syllable blocks → per-jamo romanization
  kLatinEnglish, // English → IPA via lexicon + letter-to-sound fallback
  kRawIpa,       // already phonetic, bypass transcription
  kRawRoman,     // already phonetic, bypass transcription
};

// Parses "hangul" | "en" | "ipa" | "roman"; throws DataError otherwise.
ScriptTag parse_script_tag(const std::string& name);
std::string script_tag_name(ScriptTag tag);

struct TranscriptionResult {
  std::string phonetic_text;
  std::string source_text;
  ScriptTag script = ScriptTag::kRawRoman;
  // Codepoint ranges [start, end) of source_text that used fallback rules.
  std::vector<std::pair<std::size_t, std::size_t>> oov_spans;
};

// Per-jamo, context-free Revised-Romanization-style letter mapping.
// Non-Hangul codepoints pass through (ASCII lowercased); codepoints outside
// the expected repertoire are recorded in oov_spans.
TranscriptionResult romanize_hangul(const std::string& text);

// Pronunciation lexicon: headword → IPA, loaded from `headword<TAB>ipa`
// lines, '#' comments. Lookup is case-insensitive.
class Lexicon {
 public:
  static Lexicon parse(const std::string& text);
  static Lexicon load_file(const std::string& path);

  const std::string* find(const std::string& word_lower) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// The bundled lexicon (pins adidas/google/facebook and a few extras).
const Lexicon& default_lexicon();
const std::string& default_lexicon_text();

// Lexicon-first English G2P; out-of-lexicon words go through deterministic
// ordered letter-to-sound rewrite rules and are recorded in oov_spans.
TranscriptionResult english_to_ipa(const std::string& text,
                                   const Lexicon& lexicon = default_lexicon());

// Dispatch on script tag; raw-* return the input (lowercased) unchanged.
TranscriptionResult transcribe(const std::string& text, ScriptTag script,
                               const Lexicon& lexicon = default_lexicon());

}  // namespace pf
