// Acceptance gate: one pass/fail line per pinned criterion. Exit code is the
// number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pf/checkpoint.hpp"
#include "pf/cnn.hpp"
#include "pf/codec.hpp"
#include "pf/dictionary.hpp"
#include "pf/evaluation.hpp"
#include "pf/pairing.hpp"
#include "pf/random.hpp"
#include "pf/raster.hpp"
#include "pf/transcription.hpp"

using namespace pf;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " " << criterion << ": " << detail
            << std::endl;
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- independent stroke oracle (full-grid integer distance field) ----

bool oracle_covers(int px, int py, GridPoint a, GridPoint b, int thickness) {
  using I = __int128;
  I abx = b.x - a.x, aby = b.y - a.y;
  I apx = px - a.x, apy = py - a.y;
  I len2 = abx * abx + aby * aby;
  I t2 = static_cast<I>(thickness) * thickness;
  I dot = apx * abx + apy * aby;
  auto near_point = [&](I dx, I dy) { return 4 * (dx * dx + dy * dy) <= t2; };
  if (len2 == 0 || dot < 0) return near_point(apx, apy);
  if (dot > len2) return near_point(px - b.x, py - b.y);
  I rx = apx * len2 - dot * abx;
  I ry = apy * len2 - dot * aby;
  return 4 * (rx * rx + ry * ry) <= t2 * len2 * len2;
}

std::vector<char> oracle_nonzero(const GramPath& path, const RasterConfig& cfg) {
  std::vector<char> on(static_cast<std::size_t>(cfg.width) * cfg.height, 0);
  if (path.points.size() < 2) return on;
  int t = line_thickness(path, cfg);
  for (int y = 0; y < cfg.height; ++y)
    for (int x = 0; x < cfg.width; ++x)
      for (std::size_t j = 0; j + 1 < path.points.size(); ++j)
        if (oracle_covers(x, y, path.points[j], path.points[j + 1], t)) {
          on[static_cast<std::size_t>(y) * cfg.width + x] = 1;
          break;
        }
  return on;
}

// ---- criteria ----

void criterion_1() {
  auto t0 = Clock::now();
  const auto& dict = default_dictionary();
  struct Case {
    const char* text;
    ScriptTag script;
    std::vector<int> mapping;
  };
  const std::vector<Case> cases = {
      {"아디다스", ScriptTag::kHangul, {16, 33, 69, 19, 69, 33, 79, 25, 46, 111}},
      {"구글", ScriptTag::kHangul, {16, 66, 46, 66, 25, 46, 101, 111}},
      {"페이스북", ScriptTag::kHangul, {16, 51, 25, 19, 79, 25, 46, 53, 46, 66, 111}},
      {"ədɪdəs", ScriptTag::kRawIpa, {16, 29, 69, 19, 69, 29, 79, 111}},
      {"ɡʊɡəl", ScriptTag::kRawIpa, {16, 66, 46, 66, 29, 101, 111}},
  };
  bool ok = true;
  for (const auto& c : cases) {
    std::string phonetic = transcribe(c.text, c.script).phonetic_text;
    std::vector<int> mapping = encode(tokenize(phonetic, dict), dict);
    if (mapping != c.mapping) ok = false;
  }
  double dt = seconds_since(t0);
  ok = ok && dt < 1.0;
  std::ostringstream msg;
  msg << "golden transcription→mapping lists byte-exact for all 5 reference "
         "names ("
      << dt << "s < 1s)";
  report(1, ok, msg.str());
}

void criterion_2() {
  const auto& dict = default_dictionary();
  GramPath path = gram_coordinates(segment_2grams(tokenize("ədɪdəs", dict)), dict);
  std::vector<GridPoint> expected = {{16, 29}, {29, 69}, {69, 19}, {19, 69},
                                     {69, 29}, {29, 79}, {79, 111}};
  report(2, path.points == expected,
         "reference-name 2-gram coordinate path matches the published table");
}

void criterion_3() {
  const auto& dict = default_dictionary();
  // route 1: tokenizer (case-folds ASCII)
  auto grams = segment_2grams(tokenize("TEXT", dict));
  bool ok = grams.size() == 5;
  const char* folded[5][2] = {{"-", "t"}, {"t", "e"}, {"e", "x"}, {"x", "t"}, {"t", "_"}};
  for (std::size_t i = 0; ok && i < 5; ++i)
    ok = grams[i].first == folded[i][0] && grams[i].second == folded[i][1];
  // route 2: raw symbol sequence keeps the literal glyphs
  SymbolSequence literal{{"-", "T", "E", "X", "T", "_"}};
  auto lit = segment_2grams(literal);
  ok = ok && lit.size() == 5;
  const char* upper[5][2] = {{"-", "T"}, {"T", "E"}, {"E", "X"}, {"X", "T"}, {"T", "_"}};
  for (std::size_t i = 0; ok && i < 5; ++i)
    ok = lit[i].first == upper[i][0] && lit[i].second == upper[i][1];
  report(3, ok, "a 4-letter word yields exactly the 5 published 2-grams "
                "(both marker grams included)");
}

void criterion_4() {
  bool ok = romanize_hangul("아디다스").phonetic_text == "adidaseu" &&
            romanize_hangul("구글").phonetic_text == "gugeul" &&
            romanize_hangul("페이스북").phonetic_text == "peiseubug";
  report(4, ok, "Hangul romanization reproduces all published reference words");
}

void criterion_5() {
  RasterConfig cfg;
  const double expected[4] = {255.0, 229.5, 185.895, 135.517455};
  bool ok = true;
  for (int i = 0; i < 4; ++i) {
    double got = gram_intensity(static_cast<std::size_t>(i), cfg);
    if (std::abs(got - expected[i]) > 1e-9 * expected[i]) ok = false;
  }
  report(5, ok,
         "segment intensities for Z=255, γ=0.9 match 255/229.5/185.895/"
         "135.517455 within 1e-9 relative");
}

void criterion_6() {
  RasterConfig cfg;
  Rng rng(6106);
  int agreeing = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    GramPath path;
    std::size_t n = 2 + rng.uniform_index(9);
    for (std::size_t i = 0; i < n; ++i)
      path.points.push_back({static_cast<int>(rng.uniform_index(128)),
                             static_cast<int>(rng.uniform_index(128))});
    PhoneticFeature fast = rasterize(path, cfg);
    std::vector<char> slow = oracle_nonzero(path, cfg);
    bool same = true;
    for (std::size_t i = 0; i < slow.size(); ++i)
      if ((fast.grid[i] > 0.0f) != (slow[i] != 0)) same = false;
    if (same) ++agreeing;
  }
  std::ostringstream msg;
  msg << "rasterized nonzero pixel sets equal the naive distance-field "
         "oracle's on "
      << agreeing << "/" << trials << " random paths";
  report(6, agreeing == trials, msg.str());
}

void criterion_7() {
  auto t0 = Clock::now();
  CnnConfig cfg;
  cfg.in_channels = 2;
  cfg.in_h = 8;
  cfg.in_w = 8;
  cfg.conv1_filters = 2;
  cfg.conv2_filters = 2;
  cfg.fc1_units = 8;
  cfg.dropout_rate = 0.5;

  const int n = 3;
  Rng data_rng(71);
  std::vector<double> batch(static_cast<std::size_t>(n) * 2 * 64);
  for (auto& v : batch) v = data_rng.normal() * 0.5;
  std::vector<int> labels = {1, 0, 1};
  Rng init_rng(72);
  CnnParams<double> params = init_params<double>(cfg, init_rng);

  const std::uint64_t mask_seed = 73;
  CnnParams<double> grads;
  {
    Rng grad_rng(mask_seed);
    loss_and_grads(params, batch, n, labels, cfg, grad_rng, grads);
  }

  std::vector<std::vector<double>*> parrs, garrs;
  params.for_each([&](std::vector<double>& a) { parrs.push_back(&a); });
  grads.for_each([&](std::vector<double>& a) { garrs.push_back(&a); });

  const double eps = 1e-6;
  double max_rel = 0.0;
  Rng pick(74);
  for (std::size_t a = 0; a < parrs.size(); ++a) {
    std::vector<double>& arr = *parrs[a];
    std::size_t checks = std::min<std::size_t>(arr.size(), 25);
    for (std::size_t c = 0; c < checks; ++c) {
      std::size_t j = (arr.size() <= 25) ? c : pick.uniform_index(arr.size());
      double orig = arr[j];
      arr[j] = orig + eps;
      double lp = loss_only(params, batch, n, labels, cfg, mask_seed);
      arr[j] = orig - eps;
      double lm = loss_only(params, batch, n, labels, cfg, mask_seed);
      arr[j] = orig;
      double fd = (lp - lm) / (2.0 * eps);
      double an = (*garrs[a])[j];
      double denom = std::max({std::abs(fd), std::abs(an), 1e-6});
      max_rel = std::max(max_rel, std::abs(fd - an) / denom);
    }
  }
  double dt = seconds_since(t0);
  std::ostringstream msg;
  msg << "double-precision analytic gradients match central differences on "
         "every layer (max rel err "
      << max_rel << " < 1e-5, " << dt << "s < 60s)";
  report(7, max_rel < 1e-5 && dt < 60.0, msg.str());
}

void criterion_8() {
  auto t0 = Clock::now();
  const auto& dict = default_dictionary();
  RasterConfig raster_cfg;
  auto records = generate_synthetic(16, 16, 808, dict);
  auto feats = featurize_records(records, dict, raster_cfg);
  std::vector<PairSample> samples;
  for (auto& f : feats) samples.push_back({std::move(f.tensor), f.label, f.id});

  CnnConfig cfg;  // full-size published architecture
  cfg.rng_seed = 8080;
  cfg.batch_size = 8;
  cfg.epochs = 200;
  cfg.max_steps = 500;
  cfg.train_acc_target = 0.99;
  auto [params, rep] = train(samples, cfg);
  double acc = rep.epochs.empty() ? 0.0 : rep.epochs.back().train_accuracy;
  double dt = seconds_since(t0);
  std::ostringstream msg;
  msg << "full-size network overfits a 32-pair balanced toy set (train acc "
      << acc << " ≥ 0.99 in " << rep.steps << " ≤ 500 steps, " << dt
      << "s < 300s)";
  report(8, acc >= 0.99 && rep.steps <= 500 && dt < 300.0, msg.str());
}

void criteria_9_and_10() {
  auto t0 = Clock::now();
  const auto& dict = default_dictionary();
  RasterConfig raster_cfg;
  const std::uint64_t seed = 909;
  auto records = generate_synthetic(1000, 2700, seed, dict);

  // criterion 10 first: class-conditional cosine distance gap
  auto feats = featurize_records(records, dict, raster_cfg);
  double sum_sim = 0.0, sum_dis = 0.0;
  std::size_t n_sim = 0, n_dis = 0;
  for (const auto& f : feats) {
    if (f.label) {
      sum_sim += f.distance;
      ++n_sim;
    } else {
      sum_dis += f.distance;
      ++n_dis;
    }
  }
  double mean_sim = sum_sim / static_cast<double>(n_sim);
  double mean_dis = sum_dis / static_cast<double>(n_dis);
  {
    std::ostringstream msg;
    msg << "mean cosine distance separates the classes (similar " << mean_sim
        << " + 0.05 ≤ dissimilar " << mean_dis << ")";
    report(10, mean_sim + 0.05 <= mean_dis, msg.str());
  }

  EvalReport baseline = evaluate_baseline(records, dict, raster_cfg, seed);

  std::vector<PairSample> samples;
  samples.reserve(feats.size());
  for (auto& f : feats) samples.push_back({std::move(f.tensor), f.label, f.id});
  feats.clear();
  feats.shrink_to_fit();

  CnnConfig cfg;
  cfg.rng_seed = seed;
  cfg.epochs = 3;
  cfg.val_acc_target = 0.90;
  auto [params, rep] = train(samples, cfg);
  double val_acc = rep.epochs.empty() ? 0.0 : rep.epochs.back().val_accuracy;
  double dt = seconds_since(t0);
  std::ostringstream msg;
  msg << "CNN on 1000+2700 synthetic pairs: held-out accuracy " << val_acc
      << " ≥ 0.85 and ≥ cosine baseline " << baseline.accuracy << " + 0.05 ("
      << dt << "s ≤ 1800s)";
  report(9, val_acc >= 0.85 && val_acc >= baseline.accuracy + 0.05 && dt <= 1800.0,
         msg.str());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_11() {
  auto run = [](const std::string& args) {
    std::string cmd = std::string(PF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  bool ok = run("dataset-gen --similar 12 --dissimilar 12 --seed 11 "
                "--out acc11_data.jsonl") == 0;
  const std::string flags =
      "train --data acc11_data.jsonl --seed 1111 --epochs 2 --batch 8 "
      "--fc1 16 --max-steps 6";
  ok = ok && run(flags + " --out acc11_a.ckpt --report acc11_a.json") == 0;
  ok = ok && run(flags + " --out acc11_b.ckpt --report acc11_b.json") == 0;
  std::string ckpt_a = slurp("acc11_a.ckpt"), ckpt_b = slurp("acc11_b.ckpt");
  ok = ok && !ckpt_a.empty() && ckpt_a == ckpt_b;
  // the report carries the measured wall time, which is the one field a
  // reproducible run cannot pin; everything else must match exactly
  nlohmann::json rep_a = nlohmann::json::parse(slurp("acc11_a.json"), nullptr, false);
  nlohmann::json rep_b = nlohmann::json::parse(slurp("acc11_b.json"), nullptr, false);
  ok = ok && !rep_a.is_discarded() && !rep_b.is_discarded();
  if (ok) {
    rep_a.erase("wall_seconds");
    rep_b.erase("wall_seconds");
    ok = rep_a == rep_b;
  }
  for (const char* f : {"acc11_data.jsonl", "acc11_a.ckpt", "acc11_b.ckpt",
                        "acc11_a.json", "acc11_b.json"})
    std::remove(f);
  report(11, ok,
         "two CLI training runs with identical flags and seed produce "
         "bit-identical checkpoints and reports (modulo measured wall time)");
}

void criterion_12() {
  CnnConfig cfg;
  cfg.in_h = 8;
  cfg.in_w = 8;
  cfg.conv1_filters = 2;
  cfg.conv2_filters = 2;
  cfg.fc1_units = 8;
  Rng rng(1212);
  CnnParams<float> params = init_params<float>(cfg, rng);
  bool ok = true;
  double worst = 0.0;
  const int batch_n = 10;
  for (int round = 0; round < 100; ++round) {  // 100 × 10 = 1000 inputs
    std::vector<float> batch(static_cast<std::size_t>(batch_n) * 2 * 64);
    for (auto& v : batch) v = static_cast<float>(rng.normal() * (1 + round % 7));
    ForwardCache<float> cache = forward(params, batch, batch_n, cfg, false, nullptr);
    for (int i = 0; i < batch_n; ++i) {
      double sum = 0.0;
      for (int c = 0; c < cfg.num_classes; ++c)
        sum += cache.probs[static_cast<std::size_t>(i) * cfg.num_classes + c];
      worst = std::max(worst, std::abs(sum - 1.0));
      if (std::abs(sum - 1.0) > 1e-6) ok = false;
    }
  }
  std::ostringstream msg;
  msg << "softmax rows sum to 1 within 1e-6 on 1000 random inputs (worst |Δ| = "
      << worst << ")";
  report(12, ok, msg.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criteria_9_and_10();
  criterion_11();
  criterion_12();
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                : std::to_string(g_failures) + " CRITERIA FAILED")
            << std::endl;
  return g_failures;
}
