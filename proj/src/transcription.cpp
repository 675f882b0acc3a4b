#include "pf/transcription.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "pf/codec.hpp"
#include "pf/errors.hpp"

namespace pf {

namespace {

uint32_t decode_codepoint(const std::string& utf8) {
  if (utf8.empty()) return 0;
  unsigned char c0 = static_cast<unsigned char>(utf8[0]);
  if (c0 < 0x80) return c0;
  if (c0 < 0xE0 && utf8.size() >= 2)
    return ((c0 & 0x1Fu) << 6) | (static_cast<unsigned char>(utf8[1]) & 0x3Fu);
  if (c0 < 0xF0 && utf8.size() >= 3)
    return ((c0 & 0x0Fu) << 12) |
           ((static_cast<unsigned char>(utf8[1]) & 0x3Fu) << 6) |
           (static_cast<unsigned char>(utf8[2]) & 0x3Fu);
  if (utf8.size() >= 4)
    return ((c0 & 0x07u) << 18) |
           ((static_cast<unsigned char>(utf8[1]) & 0x3Fu) << 12) |
           ((static_cast<unsigned char>(utf8[2]) & 0x3Fu) << 6) |
           (static_cast<unsigned char>(utf8[3]) & 0x3Fu);
  return 0xFFFD;
}

// Revised-Romanization letter tables, applied per jamo with no
// sound-change rules (final ㄱ stays "g").
const std::array<const char*, 19> kChoseong = {
    "g", "kk", "n", "d", "tt", "r", "m", "b", "pp", "s",
    "ss", "", "j", "jj", "ch", "k", "t", "p", "h"};
const std::array<const char*, 21> kJungseong = {
    "a", "ae", "ya", "yae", "eo", "e", "yeo", "ye", "o", "wa", "wae",
    "oe", "yo", "u", "wo", "we", "wi", "yu", "eu", "ui", "i"};
const std::array<const char*, 28> kJongseong = {
    "",  "g",  "kk", "gs", "n",  "nj", "nh", "d",  "l",  "lg",
    "lm", "lb", "ls", "lt", "lp", "lh", "m",  "b",  "bs", "s",
    "ss", "ng", "j",  "ch", "k",  "t",  "p",  "h"};

const char* kDefaultLexicon =
    "# headword\tipa\n"
    "adidas\t\xC9\x99""d\xC9\xAA""d\xC9\x99""s\n"        // ədɪdəs
    "google\t\xC9\xA1\xCA\x8A\xC9\xA1\xC9\x99l\n"        // ɡʊɡəl
    "facebook\tf\xC9\x9Bsb\xCA\x8Ak\n"                   // fɛsbʊk
    "nike\tna\xC9\xAAki\n"                               // naɪki
    "apple\t\xC3\xA6p\xC9\x99l\n"                        // æpəl
    "samsung\ts\xC3\xA6ms\xCA\x8C\xC5\x8B\n"             // sæmsʌŋ
    "amazon\t\xC3\xA6m\xC9\x99z\xC9\x91n\n"              // æməzɑn
    "starbucks\tst\xC9\x91\xC9\xB9""b\xCA\x8Cks\n";      // stɑɹbʌks

// Ordered letter-to-sound digraph rules; scanned before single letters.
const std::array<std::pair<const char*, const char*>, 21> kDigraphs = {{
    {"ck", "k"}, {"ch", "\xCA\x83"}, {"sh", "\xCA\x83"}, {"th", "\xCE\xB8"},
    {"ph", "f"}, {"wh", "w"}, {"qu", "kw"}, {"ee", "i"}, {"ea", "i"},
    {"oo", "u"}, {"oa", "o"}, {"ai", "e"}, {"ay", "e"}, {"ey", "e"},
    {"oy", "\xC9\x94j"}, {"oi", "\xC9\x94j"}, {"au", "\xC9\x94"},
    {"aw", "\xC9\x94"}, {"ow", "o"}, {"ou", "o"}, {"gh", "g"},
}};

std::string letter_to_sound(const std::string& word_lower) {
  std::string out;
  std::size_t i = 0;
  while (i < word_lower.size()) {
    char c = word_lower[i];
    bool matched = false;
    for (const auto& [pat, rep] : kDigraphs) {
      std::size_t len = std::char_traits<char>::length(pat);
      if (word_lower.compare(i, len, pat) == 0) {
        out += rep;
        i += len;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    char next = i + 1 < word_lower.size() ? word_lower[i + 1] : '\0';
    switch (c) {
      case 'a': out += "\xC3\xA6"; break;          // æ
      case 'e': out += "\xCE\xB5"; break;          // ε
      case 'i': out += "i"; break;
      case 'o': out += "o"; break;
      case 'u': out += "\xCA\x8C"; break;          // ʌ
      case 'c': out += (next == 'e' || next == 'i' || next == 'y') ? "s" : "k"; break;
      case 'j': out += "d\xCA\x92"; break;         // dʒ
      case 'q': out += "k"; break;
      case 'x': out += "ks"; break;
      case 'y': out += (i == 0) ? "j" : "i"; break;
      default:
        if (c >= 'a' && c <= 'z') out += c;
        // non-letters are dropped
        break;
    }
    ++i;
  }
  return out;
}

}  // namespace

ScriptTag parse_script_tag(const std::string& name) {
  if (name == "hangul") return ScriptTag::kHangul;
  if (name == "en") return ScriptTag::kLatinEnglish;
  if (name == "ipa") return ScriptTag::kRawIpa;
  if (name == "roman") return ScriptTag::kRawRoman;
  throw DataError(0, "unknown script tag '" + name + "'");
}

std::string script_tag_name(ScriptTag tag) {
  switch (tag) {
    case ScriptTag::kHangul: return "hangul";
    case ScriptTag::kLatinEnglish: return "en";
    case ScriptTag::kRawIpa: return "ipa";
    case ScriptTag::kRawRoman: return "roman";
  }
  return "roman";
}

TranscriptionResult romanize_hangul(const std::string& text) {
  TranscriptionResult result;
  result.source_text = text;
  result.script = ScriptTag::kHangul;
  auto cps = utf8_codepoints(text);
  for (std::size_t pos = 0; pos < cps.size(); ++pos) {
    uint32_t cp = decode_codepoint(cps[pos]);
    if (cp >= 0xAC00 && cp <= 0xD7A3) {
      uint32_t idx = cp - 0xAC00;
      result.phonetic_text += kChoseong[idx / (21 * 28)];
      result.phonetic_text += kJungseong[(idx / 28) % 21];
      result.phonetic_text += kJongseong[idx % 28];
    } else if (cp < 0x80) {
      result.phonetic_text += static_cast<char>(
          std::tolower(static_cast<int>(cp)));
    } else {
      result.phonetic_text += cps[pos];
      result.oov_spans.emplace_back(pos, pos + 1);
    }
  }
  // merge adjacent oov spans
  std::vector<std::pair<std::size_t, std::size_t>> merged;
  for (const auto& span : result.oov_spans) {
    if (!merged.empty() && merged.back().second == span.first)
      merged.back().second = span.second;
    else
      merged.push_back(span);
  }
  result.oov_spans = std::move(merged);
  return result;
}

Lexicon Lexicon::parse(const std::string& text) {
  Lexicon lex;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError(lineno, "lexicon: missing tab separator");
    std::string head = line.substr(0, tab);
    for (char& c : head) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::string ipa = line.substr(tab + 1);
    while (!ipa.empty() && (ipa.back() == '\r' || ipa.back() == '\n')) ipa.pop_back();
    lex.entries_.emplace_back(head, ipa);
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const std::string* Lexicon::find(const std::string& word_lower) const {
  for (const auto& [head, ipa] : entries_)
    if (head == word_lower) return &ipa;
  return nullptr;
}

const Lexicon& default_lexicon() {
  static const Lexicon lex = Lexicon::parse(kDefaultLexicon);
  return lex;
}

const std::string& default_lexicon_text() {
  static const std::string text(kDefaultLexicon);
  return text;
}

TranscriptionResult english_to_ipa(const std::string& text, const Lexicon& lexicon) {
  TranscriptionResult result;
  result.source_text = text;
  result.script = ScriptTag::kLatinEnglish;
  auto cps = utf8_codepoints(text);
  std::size_t pos = 0;
  bool first_word = true;
  while (pos < cps.size()) {
    if (cps[pos].size() == 1 &&
        std::isspace(static_cast<unsigned char>(cps[pos][0]))) {
      ++pos;
      continue;
    }
    std::size_t start = pos;
    std::string word;
    while (pos < cps.size() &&
           !(cps[pos].size() == 1 &&
             std::isspace(static_cast<unsigned char>(cps[pos][0])))) {
      word += cps[pos];
      ++pos;
    }
    std::string lower;
    for (char c : word)
      lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!first_word) result.phonetic_text += ' ';
    first_word = false;
    if (const std::string* ipa = lexicon.find(lower)) {
      result.phonetic_text += *ipa;
    } else {
      result.phonetic_text += letter_to_sound(lower);
      result.oov_spans.emplace_back(start, pos);
    }
  }
  return result;
}

TranscriptionResult transcribe(const std::string& text, ScriptTag script,
                               const Lexicon& lexicon) {
  switch (script) {
    case ScriptTag::kHangul:
      return romanize_hangul(text);
    case ScriptTag::kLatinEnglish:
      return english_to_ipa(text, lexicon);
    case ScriptTag::kRawIpa:
    case ScriptTag::kRawRoman: {
      TranscriptionResult result;
      result.source_text = text;
      result.script = script;
      for (char c : text)
        result.phonetic_text += static_cast<char>(
            std::tolower(static_cast<unsigned char>(c)));
      return result;
    }
  }
  throw DataError(0, "unreachable script tag");
}

}  // namespace pf
