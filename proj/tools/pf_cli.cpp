// pf — phonetic-feature pipeline CLI: featurize names into 128×128 feature
// images, compare pairs (cosine and/or CNN), generate synthetic datasets,
// train and evaluate the classifier, and emit distance histograms.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pf/checkpoint.hpp"
#include "pf/cnn.hpp"
#include "pf/codec.hpp"
#include "pf/dictionary.hpp"
#include "pf/errors.hpp"
#include "pf/evaluation.hpp"
#include "pf/pairing.hpp"
#include "pf/raster.hpp"
#include "pf/transcription.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

struct Common {
  std::string dict_path;
  std::string lexicon_path;

  pf::SymbolDictionary dict() const {
    if (!dict_path.empty()) return pf::SymbolDictionary::load_file(dict_path);
    if (const char* env = std::getenv("PF_DICT"))
      return pf::SymbolDictionary::load_file(env);
    return pf::default_dictionary();
  }
  pf::Lexicon lexicon() const {
    if (!lexicon_path.empty()) return pf::Lexicon::load_file(lexicon_path);
    return pf::default_lexicon();
  }
};

nlohmann::json train_report_json(const pf::TrainReport& report) {
  nlohmann::json j;
  j["schema"] = "pf/1";
  j["seed"] = report.seed;
  j["steps"] = report.steps;
  j["wall_seconds"] = report.wall_seconds;
  j["epochs"] = nlohmann::json::array();
  for (const auto& e : report.epochs) {
    j["epochs"].push_back({{"epoch", e.epoch},
                           {"train_loss", e.train_loss},
                           {"train_accuracy", e.train_accuracy},
                           {"val_accuracy", e.val_accuracy}});
  }
  return j;
}

nlohmann::json eval_report_json(const pf::EvalReport& report, bool with_threshold) {
  nlohmann::json j;
  j["schema"] = "pf/1";
  j["accuracy"] = report.accuracy;
  j["tp"] = report.tp;
  j["fp"] = report.fp;
  j["tn"] = report.tn;
  j["fn"] = report.fn;
  j["n_samples"] = report.n_samples;
  if (with_threshold) j["threshold"] = report.threshold;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-gram phonetic feature pipeline for name-pair similarity"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--dict", common.dict_path, "dictionary file (or env PF_DICT)");
  app.add_option("--lexicon", common.lexicon_path, "pronunciation lexicon file");

  // featurize
  auto* featurize = app.add_subcommand("featurize", "render one name as a phonetic feature");
  std::string fz_text, fz_script = "roman", fz_png, fz_raw;
  featurize->add_option("--text", fz_text, "input name")->required();
  featurize->add_option("--script", fz_script, "hangul|en|ipa|roman");
  featurize->add_option("--out", fz_png, "grayscale PNG output path");
  featurize->add_option("--out-raw", fz_raw, "raw tensor dump path");

  // compare / viz
  auto* compare = app.add_subcommand("compare", "score a pair of names");
  std::string cp_a, cp_b, cp_sa = "roman", cp_sb = "roman", cp_model, cp_viz;
  compare->add_option("--a", cp_a)->required();
  compare->add_option("--b", cp_b)->required();
  compare->add_option("--script-a", cp_sa, "hangul|en|ipa|roman");
  compare->add_option("--script-b", cp_sb, "hangul|en|ipa|roman");
  compare->add_option("--model", cp_model, "checkpoint for CNN probability");
  compare->add_option("--viz", cp_viz, "write red/green overlay PNG");

  auto* viz = app.add_subcommand("viz", "write the red/green overlay PNG for a pair");
  std::string vz_a, vz_b, vz_sa = "roman", vz_sb = "roman", vz_out;
  viz->add_option("--a", vz_a)->required();
  viz->add_option("--b", vz_b)->required();
  viz->add_option("--script-a", vz_sa);
  viz->add_option("--script-b", vz_sb);
  viz->add_option("--out", vz_out, "output PNG")->required();

  // dataset-gen
  auto* gen = app.add_subcommand("dataset-gen", "generate a synthetic pair dataset");
  std::size_t gen_similar = 0, gen_dissimilar = 0;
  std::uint64_t gen_seed = 42;
  std::string gen_out;
  gen->add_option("--similar", gen_similar, "similar pair count")->required();
  gen->add_option("--dissimilar", gen_dissimilar, "dissimilar pair count")->required();
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out, "output JSONL path")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "train the CNN on a JSONL dataset");
  std::string tr_data, tr_out, tr_report;
  pf::CnnConfig tr_cfg;
  double tr_train_target = 0, tr_val_target = 0;
  train_cmd->add_option("--data", tr_data)->required();
  train_cmd->add_option("--out", tr_out, "checkpoint output path")->required();
  train_cmd->add_option("--seed", tr_cfg.rng_seed);
  train_cmd->add_option("--epochs", tr_cfg.epochs);
  train_cmd->add_option("--batch", tr_cfg.batch_size);
  train_cmd->add_option("--lr", tr_cfg.learning_rate);
  train_cmd->add_option("--fc1", tr_cfg.fc1_units, "fc1 width");
  train_cmd->add_option("--max-steps", tr_cfg.max_steps, "stop after this many optimizer steps");
  train_cmd->add_option("--train-acc-target", tr_train_target, "early stop at this train accuracy");
  train_cmd->add_option("--val-acc-target", tr_val_target, "early stop at this validation accuracy");
  train_cmd->add_option("--report", tr_report, "also write the report JSON to this path");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate CNN or cosine baseline on the held-out split");
  std::string ev_data, ev_model, ev_baseline;
  std::uint64_t ev_seed = 42;
  eval_cmd->add_option("--data", ev_data)->required();
  eval_cmd->add_option("--model", ev_model, "CNN checkpoint");
  eval_cmd->add_option("--baseline", ev_baseline, "\"cosine\" for the distance baseline");
  eval_cmd->add_option("--seed", ev_seed, "split seed");

  // stats
  auto* stats = app.add_subcommand("stats", "per-class cosine distance histogram CSV");
  std::string st_data, st_out;
  int st_bins = 20;
  stats->add_option("--data", st_data)->required();
  stats->add_option("--bins", st_bins);
  stats->add_option("--out", st_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    pf::RasterConfig raster_cfg;

    if (*featurize) {
      if (fz_text.empty()) {
        std::cerr << "featurize: --text must be non-empty\n";
        return kExitUsage;
      }
      auto dict = common.dict();
      auto lex = common.lexicon();
      pf::ScriptTag script = pf::parse_script_tag(fz_script);
      std::string phonetic = pf::prepare_phonetic(fz_text, script, lex);
      pf::SymbolSequence seq = pf::tokenize(phonetic, dict);
      std::vector<int> mapping = pf::encode(seq, dict);
      pf::PhoneticFeature feature =
          pf::rasterize(pf::gram_coordinates(pf::segment_2grams(seq), dict), raster_cfg);
      if (!fz_png.empty()) pf::export_gray_png(feature, fz_png);
      if (!fz_raw.empty())
        pf::export_raw_tensor(pf::compose_pair(feature, feature, raster_cfg.scale_z), fz_raw);
      nlohmann::json j;
      j["schema"] = "pf/1";
      j["text"] = fz_text;
      j["script"] = fz_script;
      j["phonetic"] = phonetic;
      j["symbols"] = seq.symbols;
      j["mapping"] = mapping;
      j["total_path_length"] = feature.total_length;
      std::cout << j.dump() << "\n";
      return kExitOk;
    }

    if (*compare || *viz) {
      std::string a = *compare ? cp_a : vz_a, b = *compare ? cp_b : vz_b;
      std::string sa = *compare ? cp_sa : vz_sa, sb = *compare ? cp_sb : vz_sb;
      auto dict = common.dict();
      auto lex = common.lexicon();
      pf::PhoneticFeature fa =
          pf::featurize_text(a, pf::parse_script_tag(sa), dict, raster_cfg, lex);
      pf::PhoneticFeature fb =
          pf::featurize_text(b, pf::parse_script_tag(sb), dict, raster_cfg, lex);
      pf::PairTensor pair = pf::compose_pair(fa, fb, raster_cfg.scale_z);
      if (*viz) {
        pf::export_rgb_png(pair, vz_out);
        return kExitOk;
      }
      nlohmann::json j;
      j["schema"] = "pf/1";
      j["a"] = a;
      j["b"] = b;
      j["cosine_distance"] = pf::cosine_distance(fa, fb);
      std::size_t overlap = 0;
      for (std::size_t i = 0; i < pair.channel0.size(); ++i)
        if (pair.channel0[i] > 0 && pair.channel1[i] > 0) ++overlap;
      j["overlap_pixels"] = overlap;
      if (!cp_model.empty()) {
        pf::Checkpoint ckpt;
        try {
          ckpt = pf::load_checkpoint(cp_model);
        } catch (const std::exception& e) {
          std::cerr << "compare: " << e.what() << "\n";
          return kExitRuntime;
        }
        pf::Prediction pred = pf::predict(ckpt.params, pair, ckpt.config);
        j["cnn"] = {{"label", pred.label},
                    {"probability", pred.probability},
                    {"prob_similar", pred.prob_similar}};
      }
      if (!cp_viz.empty()) pf::export_rgb_png(pair, cp_viz);
      std::cout << j.dump() << "\n";
      return kExitOk;
    }

    if (*gen) {
      auto dict = common.dict();
      auto records = pf::generate_synthetic(gen_similar, gen_dissimilar, gen_seed, dict);
      pf::save_jsonl(records, gen_out);
      std::cerr << "wrote " << records.size() << " records to " << gen_out << "\n";
      return kExitOk;
    }

    if (*train_cmd) {
      auto dict = common.dict();
      auto lex = common.lexicon();
      tr_cfg.train_acc_target = tr_train_target;
      tr_cfg.val_acc_target = tr_val_target;
      auto records = pf::load_jsonl(tr_data);
      auto feats = pf::featurize_records(records, dict, raster_cfg, lex);
      std::vector<pf::PairSample> samples;
      samples.reserve(feats.size());
      for (auto& f : feats)
        samples.push_back({std::move(f.tensor), f.label, f.id});
      pf::AdamState<float> state;
      auto [params, report] = pf::train(samples, tr_cfg, &state);
      pf::save_checkpoint(params, &state, tr_cfg, tr_out);
      nlohmann::json j = train_report_json(report);
      if (!tr_report.empty()) {
        std::ofstream rep(tr_report);
        rep << j.dump() << "\n";
      }
      std::cout << j.dump() << "\n";
      return kExitOk;
    }

    if (*eval_cmd) {
      auto dict = common.dict();
      auto lex = common.lexicon();
      auto records = pf::load_jsonl(ev_data);
      if (!ev_baseline.empty() && ev_baseline != "cosine") {
        std::cerr << "eval: unknown baseline '" << ev_baseline << "'\n";
        return kExitUsage;
      }
      if (ev_model.empty() && ev_baseline.empty()) {
        std::cerr << "eval: need --model or --baseline cosine\n";
        return kExitUsage;
      }
      nlohmann::json j;
      if (!ev_baseline.empty()) {
        auto report = pf::evaluate_baseline(records, dict, raster_cfg, ev_seed, lex);
        j = eval_report_json(report, true);
        j["method"] = "cosine";
      } else {
        pf::Checkpoint ckpt;
        try {
          ckpt = pf::load_checkpoint(ev_model);
        } catch (const std::exception& e) {
          std::cerr << "eval: " << e.what() << "\n";
          return kExitRuntime;
        }
        auto report = pf::evaluate_cnn(ckpt.params, ckpt.config, records, dict,
                                       raster_cfg, ev_seed, lex);
        j = eval_report_json(report, false);
        j["method"] = "cnn";
      }
      std::cout << j.dump() << "\n";
      return kExitOk;
    }

    if (*stats) {
      auto dict = common.dict();
      auto lex = common.lexicon();
      auto records = pf::load_jsonl(st_data);
      auto hist = pf::distance_histogram(records, dict, raster_cfg, st_bins, lex);
      std::string csv = pf::histogram_to_csv(hist);
      if (st_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(st_out);
        out << csv;
        if (!out) throw pf::IoError("write failed: " + st_out);
      }
      return kExitOk;
    }
  } catch (const pf::UnknownSymbolError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const pf::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const pf::InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const pf::FormatVersionMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const pf::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
