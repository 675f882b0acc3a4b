#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pf/cnn.hpp"
#include "pf/pairing.hpp"
#include "pf/raster.hpp"
#include "pf/transcription.hpp"

namespace pf {

struct PairRecord {
  std::string id;
  std::string text_a;
  std::string text_b;
  ScriptTag script_a = ScriptTag::kRawRoman;
  ScriptTag script_b = ScriptTag::kRawRoman;
  int label = 0;  // 1 = similar
};

struct EvalReport {
  double accuracy = 0.0;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double threshold = 0.0;  // cosine baseline only
  std::size_t n_samples = 0;
};

struct HistogramSpec {
  std::vector<double> bin_edges;          // bins+1 uniform edges over [0,1]
  std::vector<std::size_t> count_similar;
  std::vector<std::size_t> count_dissimilar;
};

// JSONL dataset: one object per line,
// {"id","a","b","script_a","script_b","label"}. Throws DataError with the
// 1-based line number on malformed lines.
std::vector<PairRecord> load_jsonl(const std::string& path);
void save_jsonl(const std::vector<PairRecord>& records, const std::string& path);

// Drops punctuation the tokenizer has no symbol for (the paper's "X-SEED"
// convention), then transcribes per script and runs the raster pipeline.
std::string prepare_phonetic(const std::string& text, ScriptTag script,
                             const Lexicon& lexicon = default_lexicon());
PhoneticFeature featurize_text(const std::string& text, ScriptTag script,
                               const SymbolDictionary& dict,
                               const RasterConfig& cfg,
                               const Lexicon& lexicon = default_lexicon());

// 1 − cos angle between flattened features. Throws ZeroVectorError when
// either feature is all-zero.
double cosine_distance(const PhoneticFeature& a, const PhoneticFeature& b);
double cosine_distance_flat(const std::vector<float>& a, const std::vector<float>& b);

// Accuracy-maximizing threshold over candidate midpoints of the sorted
// distances (plus the all-similar / all-dissimilar extremes); ties break
// toward the smaller threshold. Classify similar iff distance < τ.
double fit_threshold(const std::vector<std::pair<double, int>>& train);

struct FeaturizedPair {
  PairTensor tensor;
  int label = 0;
  std::string id;
  double distance = 0.0;  // cosine distance between the two features
};

// Full pipeline per record; UnknownSymbol errors are rethrown with the
// offending record id.
std::vector<FeaturizedPair> featurize_records(
    const std::vector<PairRecord>& records, const SymbolDictionary& dict,
    const RasterConfig& cfg, const Lexicon& lexicon = default_lexicon());

// Cosine baseline: fit τ on the 9:1 train split, report on the held-out split.
EvalReport evaluate_baseline(const std::vector<PairRecord>& records,
                             const SymbolDictionary& dict,
                             const RasterConfig& cfg, std::uint64_t seed,
                             const Lexicon& lexicon = default_lexicon());

// CNN accuracy on the held-out split of the same stratified 9:1 partition.
EvalReport evaluate_cnn(const CnnParams<float>& params, const CnnConfig& cnn_cfg,
                        const std::vector<PairRecord>& records,
                        const SymbolDictionary& dict, const RasterConfig& cfg,
                        std::uint64_t seed,
                        const Lexicon& lexicon = default_lexicon());

// Per-class cosine-distance histogram with uniform bins over [0, 1].
HistogramSpec distance_histogram(const std::vector<PairRecord>& records,
                                 const SymbolDictionary& dict,
                                 const RasterConfig& cfg, int bins,
                                 const Lexicon& lexicon = default_lexicon());
std::string histogram_to_csv(const HistogramSpec& hist);

// Synthetic stand-in for the unavailable examination corpus. Similar pairs
// perturb a bundled name list with phonetically-close edits (intra-group
// substitution, vowel drop/double, boundary echo); dissimilar pairs sample
// unrelated names with normalized symbol edit distance ≥ 0.5.
std::vector<PairRecord> generate_synthetic(std::size_t n_similar,
                                           std::size_t n_dissimilar,
                                           std::uint64_t seed,
                                           const SymbolDictionary& dict);

// Symbol-level Levenshtein distance (used by the generator and its tests).
std::size_t symbol_edit_distance(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b);

const std::vector<std::string>& synthetic_name_seed_list();

}  // namespace pf
