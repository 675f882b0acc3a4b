#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pf/codec.hpp"
#include "pf/random.hpp"
#include "pf/transcription.hpp"

using namespace pf;

TEST_CASE("romanize_hangul reproduces the golden words") {
  CHECK(romanize_hangul("아디다스").phonetic_text == "adidaseu");
  CHECK(romanize_hangul("구글").phonetic_text == "gugeul");
  CHECK(romanize_hangul("페이스북").phonetic_text == "peiseubug");
  CHECK(romanize_hangul("").phonetic_text == "");
  CHECK(romanize_hangul("").oov_spans.empty());
}

TEST_CASE("romanize_hangul passes ASCII through lowercased") {
  auto r = romanize_hangul("abc xyz");
  CHECK(r.phonetic_text == "abc xyz");
  CHECK(r.oov_spans.empty());
  CHECK(romanize_hangul("ABC").phonetic_text == "abc");
}

TEST_CASE("romanize_hangul records unknown codepoints in oov_spans") {
  auto r = romanize_hangul("구글β");
  CHECK(r.phonetic_text == "gugeulβ");
  REQUIRE(r.oov_spans.size() == 1);
  CHECK(r.oov_spans[0].first == 2);
  CHECK(r.oov_spans[0].second == 3);
}

TEST_CASE("romanize_hangul concatenation: jamo mapping is context-free") {
  const char* words[] = {"아디다스", "구글", "페이스북", "한글", "서울"};
  for (const char* a : words) {
    for (const char* b : words) {
      std::string joined = std::string(a) + " " + b;
      CHECK(romanize_hangul(joined).phonetic_text ==
            romanize_hangul(a).phonetic_text + " " + romanize_hangul(b).phonetic_text);
    }
  }
}

TEST_CASE("transcription is total and deterministic on arbitrary input") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::string junk;
    int len = 1 + static_cast<int>(rng.uniform_index(12));
    for (int i = 0; i < len; ++i) {
      // mix of ASCII, Hangul, and other BMP codepoints
      double roll = rng.uniform();
      if (roll < 0.4) {
        junk += static_cast<char>('a' + rng.uniform_index(26));
      } else if (roll < 0.7) {
        unsigned cp = 0xAC00 + static_cast<unsigned>(rng.uniform_index(11172));
        junk += static_cast<char>(0xE0 | (cp >> 12));
        junk += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        junk += static_cast<char>(0x80 | (cp & 0x3F));
      } else {
        unsigned cp = 0x0370 + static_cast<unsigned>(rng.uniform_index(0x200));
        junk += static_cast<char>(0xC0 | (cp >> 6));
        junk += static_cast<char>(0x80 | (cp & 0x3F));
      }
    }
    auto r1 = romanize_hangul(junk);
    auto r2 = romanize_hangul(junk);
    CHECK(r1.phonetic_text == r2.phonetic_text);
    CHECK(r1.oov_spans == r2.oov_spans);
    CHECK(english_to_ipa(junk).phonetic_text == english_to_ipa(junk).phonetic_text);
    CHECK(r1.phonetic_text.empty() == junk.empty());
    // oov spans are disjoint, ordered, and within bounds
    std::size_t prev_end = 0;
    std::size_t n_cps = utf8_codepoints(junk).size();
    for (auto [s, e] : r1.oov_spans) {
      CHECK(s >= prev_end);
      CHECK(s < e);
      CHECK(e <= n_cps);
      prev_end = e;
    }
  }
}

TEST_CASE("english_to_ipa uses the pinned lexicon entries") {
  CHECK(english_to_ipa("Adidas").phonetic_text == "ədɪdəs");
  CHECK(english_to_ipa("Google").phonetic_text == "ɡʊɡəl");
  CHECK(english_to_ipa("Facebook").phonetic_text == "fɛsbʊk");
  CHECK(english_to_ipa("Adidas").oov_spans.empty());
  CHECK(english_to_ipa("").phonetic_text == "");
}

TEST_CASE("english_to_ipa falls back deterministically on unknown words") {
  auto r = english_to_ipa("zzq");
  CHECK(!r.phonetic_text.empty());
  REQUIRE(r.oov_spans.size() == 1);
  CHECK(r.oov_spans[0] == std::pair<std::size_t, std::size_t>(0, 3));
  CHECK(r.phonetic_text == english_to_ipa("ZZQ").phonetic_text);
}

TEST_CASE("english_to_ipa handles multi-word input") {
  auto r = english_to_ipa("Google Adidas");
  CHECK(r.phonetic_text == "ɡʊɡəl ədɪdəs");
  CHECK(r.oov_spans.empty());
}

TEST_CASE("lexicon file round trip") {
  Lexicon lex = Lexicon::parse("# comment\nfoo\tfu\nBAR\tbɑr\n");
  CHECK(lex.size() == 2);
  REQUIRE(lex.find("foo") != nullptr);
  CHECK(*lex.find("foo") == "fu");
  REQUIRE(lex.find("bar") != nullptr);
  CHECK(*lex.find("bar") == "bɑr");
  CHECK(lex.find("baz") == nullptr);
}

TEST_CASE("script tags parse and round trip") {
  CHECK(parse_script_tag("hangul") == ScriptTag::kHangul);
  CHECK(parse_script_tag("en") == ScriptTag::kLatinEnglish);
  CHECK(parse_script_tag("ipa") == ScriptTag::kRawIpa);
  CHECK(parse_script_tag("roman") == ScriptTag::kRawRoman);
  CHECK_THROWS(parse_script_tag("klingon"));
  for (auto tag : {ScriptTag::kHangul, ScriptTag::kLatinEnglish,
                   ScriptTag::kRawIpa, ScriptTag::kRawRoman})
    CHECK(parse_script_tag(script_tag_name(tag)) == tag);
}

TEST_CASE("raw scripts bypass transcription") {
  auto r = transcribe("XCEED", ScriptTag::kRawRoman);
  CHECK(r.phonetic_text == "xceed");
  CHECK(r.oov_spans.empty());
  CHECK(transcribe("ədɪdəs", ScriptTag::kRawIpa).phonetic_text == "ədɪdəs");
}
