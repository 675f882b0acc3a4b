#include "pf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pf/errors.hpp"

namespace pf {

std::vector<PairRecord> load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset: " + path);
  std::vector<PairRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw DataError(lineno, "line " + std::to_string(lineno) + ": not a JSON object");
    PairRecord rec;
    try {
      rec.id = j.value("id", "line" + std::to_string(lineno));
      rec.text_a = j.at("a").get<std::string>();
      rec.text_b = j.at("b").get<std::string>();
      rec.script_a = parse_script_tag(j.value("script_a", "roman"));
      rec.script_b = parse_script_tag(j.value("script_b", "roman"));
      int label = j.at("label").get<int>();
      if (label != 0 && label != 1) throw DataError(lineno, "label must be 0 or 1");
      rec.label = label;
    } catch (const nlohmann::json::exception& e) {
      throw DataError(lineno, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (rec.text_a.empty() || rec.text_b.empty())
      throw DataError(lineno, "line " + std::to_string(lineno) + ": empty text");
    records.push_back(std::move(rec));
  }
  return records;
}

void save_jsonl(const std::vector<PairRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const auto& rec : records) {
    nlohmann::json j;
    j["id"] = rec.id;
    j["a"] = rec.text_a;
    j["b"] = rec.text_b;
    j["script_a"] = script_tag_name(rec.script_a);
    j["script_b"] = script_tag_name(rec.script_b);
    j["label"] = rec.label;
    out << j.dump() << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

std::string prepare_phonetic(const std::string& text, ScriptTag script,
                             const Lexicon& lexicon) {
  // drop ASCII punctuation before transcription; the "-" marker is added
  // only by the tokenizer, never read from input
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (uc < 0x80 && std::ispunct(uc)) continue;
    cleaned.push_back(c);
  }
  return transcribe(cleaned, script, lexicon).phonetic_text;
}

PhoneticFeature featurize_text(const std::string& text, ScriptTag script,
                               const SymbolDictionary& dict,
                               const RasterConfig& cfg, const Lexicon& lexicon) {
  std::string phonetic = prepare_phonetic(text, script, lexicon);
  PhoneticFeature feature = featurize_phonetic(phonetic, dict, cfg);
  feature.source_word = text;
  return feature;
}

double cosine_distance_flat(const std::vector<float>& a, const std::vector<float>& b) {
  if (a.size() != b.size())
    throw DimensionMismatchError("cosine_distance: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0)
    throw ZeroVectorError("cosine_distance: all-zero feature");
  double dist = 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(dist, 0.0, 2.0);
}

double cosine_distance(const PhoneticFeature& a, const PhoneticFeature& b) {
  if (a.width != b.width || a.height != b.height)
    throw DimensionMismatchError("cosine_distance: feature dimensions differ");
  return cosine_distance_flat(a.grid, b.grid);
}

double fit_threshold(const std::vector<std::pair<double, int>>& train) {
  bool has[2] = {false, false};
  for (const auto& [d, label] : train) has[label ? 1 : 0] = true;
  if (!has[0] || !has[1])
    throw InsufficientDataError("fit_threshold: need both classes");

  std::vector<double> distances;
  distances.reserve(train.size());
  for (const auto& [d, label] : train) distances.push_back(d);
  std::sort(distances.begin(), distances.end());

  std::vector<double> candidates;
  candidates.push_back(0.0);  // all-dissimilar
  for (std::size_t i = 0; i + 1 < distances.size(); ++i)
    candidates.push_back((distances[i] + distances[i + 1]) / 2.0);
  candidates.push_back(distances.back() + 1.0);  // all-similar
  std::sort(candidates.begin(), candidates.end());

  double best_tau = candidates.front();
  std::size_t best_correct = 0;
  for (double tau : candidates) {
    std::size_t correct = 0;
    for (const auto& [d, label] : train)
      if ((d < tau ? 1 : 0) == (label ? 1 : 0)) ++correct;
    if (correct > best_correct) {  // ties keep the earlier, smaller τ
      best_correct = correct;
      best_tau = tau;
    }
  }
  return best_tau;
}

std::vector<FeaturizedPair> featurize_records(
    const std::vector<PairRecord>& records, const SymbolDictionary& dict,
    const RasterConfig& cfg, const Lexicon& lexicon) {
  std::vector<FeaturizedPair> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    try {
      PhoneticFeature fa = featurize_text(rec.text_a, rec.script_a, dict, cfg, lexicon);
      PhoneticFeature fb = featurize_text(rec.text_b, rec.script_b, dict, cfg, lexicon);
      FeaturizedPair fp;
      fp.tensor = compose_pair(fa, fb, cfg.scale_z);
      fp.label = rec.label;
      fp.id = rec.id;
      fp.distance = cosine_distance(fa, fb);
      out.push_back(std::move(fp));
    } catch (const UnknownSymbolError& e) {
      throw UnknownSymbolError(e.position(),
                               "record '" + rec.id + "': " + e.what());
    }
  }
  return out;
}

namespace {

EvalReport score_binary(const std::vector<std::pair<int, int>>& pred_label) {
  EvalReport report;
  for (const auto& [pred, label] : pred_label) {
    if (pred == 1 && label == 1) ++report.tp;
    if (pred == 1 && label == 0) ++report.fp;
    if (pred == 0 && label == 0) ++report.tn;
    if (pred == 0 && label == 1) ++report.fn;
  }
  report.n_samples = pred_label.size();
  report.accuracy = pred_label.empty()
                        ? 0.0
                        : static_cast<double>(report.tp + report.tn) /
                              static_cast<double>(pred_label.size());
  return report;
}

}  // namespace

EvalReport evaluate_baseline(const std::vector<PairRecord>& records,
                             const SymbolDictionary& dict,
                             const RasterConfig& cfg, std::uint64_t seed,
                             const Lexicon& lexicon) {
  std::vector<FeaturizedPair> feats = featurize_records(records, dict, cfg, lexicon);
  std::vector<int> labels;
  labels.reserve(feats.size());
  for (const auto& f : feats) labels.push_back(f.label);
  auto [train_idx, val_idx] = split_stratified(labels, 0.1, seed);

  std::vector<std::pair<double, int>> train_points;
  for (std::size_t i : train_idx) train_points.emplace_back(feats[i].distance, feats[i].label);
  double tau = fit_threshold(train_points);

  std::vector<std::pair<int, int>> pred_label;
  for (std::size_t i : val_idx)
    pred_label.emplace_back(feats[i].distance < tau ? 1 : 0, feats[i].label);
  EvalReport report = score_binary(pred_label);
  report.threshold = tau;
  return report;
}

EvalReport evaluate_cnn(const CnnParams<float>& params, const CnnConfig& cnn_cfg,
                        const std::vector<PairRecord>& records,
                        const SymbolDictionary& dict, const RasterConfig& cfg,
                        std::uint64_t seed, const Lexicon& lexicon) {
  std::vector<FeaturizedPair> feats = featurize_records(records, dict, cfg, lexicon);
  std::vector<int> labels;
  labels.reserve(feats.size());
  for (const auto& f : feats) labels.push_back(f.label);
  auto [train_idx, val_idx] = split_stratified(labels, 0.1, seed);

  std::vector<std::pair<int, int>> pred_label;
  for (std::size_t i : val_idx) {
    Prediction p = predict(params, feats[i].tensor, cnn_cfg);
    pred_label.emplace_back(p.label, feats[i].label);
  }
  return score_binary(pred_label);
}

HistogramSpec distance_histogram(const std::vector<PairRecord>& records,
                                 const SymbolDictionary& dict,
                                 const RasterConfig& cfg, int bins,
                                 const Lexicon& lexicon) {
  if (bins < 2) throw InsufficientDataError("distance_histogram: bins must be ≥ 2");
  HistogramSpec hist;
  hist.bin_edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i)
    hist.bin_edges[i] = static_cast<double>(i) / bins;
  hist.count_similar.assign(bins, 0);
  hist.count_dissimilar.assign(bins, 0);
  std::vector<FeaturizedPair> feats = featurize_records(records, dict, cfg, lexicon);
  for (const auto& f : feats) {
    int bin = static_cast<int>(f.distance * bins);
    bin = std::clamp(bin, 0, bins - 1);
    if (f.label)
      ++hist.count_similar[bin];
    else
      ++hist.count_dissimilar[bin];
  }
  return hist;
}

std::string histogram_to_csv(const HistogramSpec& hist) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count_similar,count_dissimilar\n";
  for (std::size_t i = 0; i + 1 < hist.bin_edges.size(); ++i)
    out << hist.bin_edges[i] << "," << hist.bin_edges[i + 1] << ","
        << hist.count_similar[i] << "," << hist.count_dissimilar[i] << "\n";
  return out.str();
}

std::size_t symbol_edit_distance(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace pf
