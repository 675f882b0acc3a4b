#include <algorithm>
#include <string>
#include <vector>

#include "pf/codec.hpp"
#include "pf/errors.hpp"
#include "pf/evaluation.hpp"
#include "pf/random.hpp"

namespace pf {

namespace {

// Brand-like romanized name pool the generator perturbs. All names
// tokenize against the default dictionary (plain ASCII letters).
const std::vector<std::string> kNameSeeds = {
    "adidaseu", "gugeul", "peiseubug", "adidas", "google", "facebook",
    "nike", "naiki", "samsung", "samseong", "hyundai", "hyeondae",
    "kia", "daewoo", "lotte", "lotde", "posco", "hanwha", "doosan",
    "kakao", "naver", "coupang", "baemin", "melon", "genie",
    "xceed", "xseed", "sycos", "seiko", "cresco", "kressco",
    "entelec", "intelect", "solaris", "lunaris", "vertex", "vortek",
    "zenith", "zenit", "apex", "apeks", "nova", "nuovo", "stella",
    "astra", "orion", "arion", "pegasus", "perseus", "atlas", "altas",
    "titan", "tytan", "kronos", "chronos", "helios", "helius",
    "aurora", "aurelia", "borealis", "polaris", "sirius", "cirrus",
    "nimbus", "nimbux", "quantum", "quanta", "vector", "victor",
    "matrix", "metrix", "pixel", "piksel", "sonix", "sonic",
    "lumen", "lumina", "clarus", "claros", "verus", "veros",
    "fortis", "fortez", "validus", "solidus", "rapidus", "rapido",
    "celer", "celeris", "maxima", "maksima", "optima", "optimus",
    "primus", "prima", "ultima", "ultimo", "magna", "magnus",
    "terra", "tierra", "aqua", "akua", "ignis", "ignix", "ventus",
    "ventos", "silva", "sylva", "mont", "monte", "riva", "rivera",
    "costa", "kosta", "porta", "porto", "villa", "vela", "mira",
    "mirae", "hana", "hanaro", "woori", "uri", "shinhan", "sinhan",
    "kumho", "geumho", "ssangyong", "ssangryong", "hankook", "hanguk",
    "nexen", "neksen", "kolon", "coron", "amore", "amorepacific",
    "innisfree", "inisfri", "laneige", "raneiji", "sulwhasoo",
    "hera", "iope", "mamonde", "espoir", "moonshot", "munsyat",
    "tirtir", "rom", "romand", "peripera", "clio", "klio",
    "etude", "etyud", "skinfood", "tonymoly", "banila", "vanila",
    "holika", "missha", "misya", "goodal", "gudal", "belif",
    "bellif", "dearklairs", "klairs", "purito", "pyunkang",
    "cosrx", "kosareuekseu", "benton", "isntree", "roundlab",
    "anua", "mixsoon", "miksun", "beplain", "torriden", "toriden",
};

struct TokenizedName {
  std::string text;
  std::vector<std::string> symbols;  // without markers
};

std::vector<std::string> strip_markers(const SymbolSequence& seq) {
  return {seq.symbols.begin() + 1, seq.symbols.end() - 1};
}

std::string join(const std::vector<std::string>& symbols) {
  std::string out;
  for (const auto& s : symbols) out += s;
  return out;
}

bool is_vowel_group(const std::string& group) {
  return group == "front-vowels" || group == "back-vowels";
}

}  // namespace

const std::vector<std::string>& synthetic_name_seed_list() { return kNameSeeds; }

std::vector<PairRecord> generate_synthetic(std::size_t n_similar,
                                           std::size_t n_dissimilar,
                                           std::uint64_t seed,
                                           const SymbolDictionary& dict) {
  std::vector<TokenizedName> names;
  names.reserve(kNameSeeds.size());
  for (const auto& name : kNameSeeds)
    names.push_back({name, strip_markers(tokenize(name, dict))});

  Rng rng(seed);
  std::vector<PairRecord> records;
  records.reserve(n_similar + n_dissimilar);

  auto substitute_intra_group = [&](std::vector<std::string>& symbols) -> bool {
    // candidate positions whose group has another member
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      const std::string& canon = dict.canonical(symbols[i]);
      const std::string& group = dict.group_of(canon);
      if (group.empty() || group == "markers") continue;
      for (const auto& g : dict.groups())
        if (g.name == group && g.members.size() >= 2) positions.push_back(i);
    }
    if (positions.empty()) return false;
    std::size_t pos = positions[rng.uniform_index(positions.size())];
    const std::string canon = dict.canonical(symbols[pos]);
    const std::string group = dict.group_of(canon);
    for (const auto& g : dict.groups()) {
      if (g.name != group) continue;
      std::vector<std::string> others;
      for (const auto& member : g.members)
        if (member != canon) others.push_back(member);
      if (others.empty()) return false;
      symbols[pos] = others[rng.uniform_index(others.size())];
      return true;
    }
    return false;
  };

  auto perturb = [&](const std::vector<std::string>& base, int edits)
      -> std::vector<std::string> {
    std::vector<std::string> symbols = base;
    for (int e = 0; e < edits; ++e) {
      double roll = rng.uniform();
      if (roll < 0.55) {
        substitute_intra_group(symbols);
      } else if (roll < 0.70 && symbols.size() > 3) {
        std::vector<std::size_t> vowels;
        for (std::size_t i = 0; i < symbols.size(); ++i)
          if (is_vowel_group(dict.group_of(dict.canonical(symbols[i]))))
            vowels.push_back(i);
        if (!vowels.empty())
          symbols.erase(symbols.begin() +
                        static_cast<std::ptrdiff_t>(vowels[rng.uniform_index(vowels.size())]));
      } else if (roll < 0.85) {
        std::vector<std::size_t> vowels;
        for (std::size_t i = 0; i < symbols.size(); ++i)
          if (is_vowel_group(dict.group_of(dict.canonical(symbols[i]))))
            vowels.push_back(i);
        if (!vowels.empty()) {
          std::size_t i = vowels[rng.uniform_index(vowels.size())];
          symbols.insert(symbols.begin() + static_cast<std::ptrdiff_t>(i), symbols[i]);
        }
      } else {
        // boundary echo: double the first or last symbol
        if (rng.uniform() < 0.5)
          symbols.insert(symbols.begin(), symbols.front());
        else
          symbols.push_back(symbols.back());
      }
    }
    return symbols;
  };

  for (std::size_t i = 0; i < n_similar; ++i) {
    const TokenizedName& base = names[rng.uniform_index(names.size())];
    // a share of "hard" similar pairs carries 3-4 edits (transcription-level
    // divergence) so raw image overlap alone cannot settle the label
    bool hard = rng.uniform() < 0.55;
    std::size_t max_ed = hard ? 4 : 2;
    std::vector<std::string> perturbed;
    std::string text;
    for (int attempt = 0; attempt < 32; ++attempt) {
      int edits = hard ? 3 + (rng.uniform() < 0.5 ? 1 : 0)
                       : 1 + (rng.uniform() < 0.45 ? 1 : 0);
      perturbed = perturb(base.symbols, edits);
      if (perturbed.empty()) continue;
      text = join(perturbed);
      // the joined string must retokenize to the same symbols, otherwise
      // the intended edit script would not survive the round trip
      std::vector<std::string> recovered = strip_markers(tokenize(text, dict));
      std::size_t ed = symbol_edit_distance(base.symbols, perturbed);
      if (recovered == perturbed && ed >= 1 && ed <= max_ed) break;
      perturbed.clear();
    }
    if (perturbed.empty()) {  // extremely unlikely; fall back to a plain echo
      perturbed = base.symbols;
      perturbed.push_back(perturbed.back());
      text = join(perturbed);
    }
    PairRecord rec;
    rec.id = "sim-" + std::to_string(i);
    rec.text_a = base.text;
    rec.text_b = text;
    rec.script_a = rec.script_b = ScriptTag::kRawRoman;
    rec.label = 1;
    records.push_back(std::move(rec));
  }

  auto norm_ed = [](const TokenizedName& a, const TokenizedName& b) {
    std::size_t ed = symbol_edit_distance(a.symbols, b.symbols);
    return static_cast<double>(ed) /
           static_cast<double>(std::max(a.symbols.size(), b.symbols.size()));
  };

  for (std::size_t i = 0; i < n_dissimilar; ++i) {
    const TokenizedName* a = nullptr;
    const TokenizedName* b = nullptr;
    // a share of "hard" dissimilar pairs shares the opening symbol, so the
    // brightest strokes coincide even though the words are unrelated
    bool hard = rng.uniform() < 0.5;
    for (int attempt = 0; attempt < 300; ++attempt) {
      a = &names[rng.uniform_index(names.size())];
      b = &names[rng.uniform_index(names.size())];
      bool prefix_ok = true;
      if (hard && attempt < 250) {
        // prefer pairs agreeing on the first two symbols; settle for one
        prefix_ok = a->symbols.front() == b->symbols.front() &&
                    (attempt >= 120 ||
                     (a->symbols.size() > 1 && b->symbols.size() > 1 &&
                      a->symbols[1] == b->symbols[1]));
      }
      if (a != b && prefix_ok && norm_ed(*a, *b) >= 0.5) break;
      a = b = nullptr;
    }
    if (!a || !b)
      throw InsufficientDataError("generate_synthetic: could not sample a dissimilar pair");
    PairRecord rec;
    rec.id = "dis-" + std::to_string(i);
    rec.text_a = a->text;
    rec.text_b = b->text;
    rec.script_a = rec.script_b = ScriptTag::kRawRoman;
    rec.label = 0;
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace pf
