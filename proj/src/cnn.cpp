#include "pf/cnn.hpp"

namespace pf {

namespace {

std::vector<float> assemble_batch(const std::vector<PairSample>& dataset,
                                  const std::vector<std::size_t>& indices,
                                  std::size_t begin, std::size_t end,
                                  const CnnConfig& cfg,
                                  std::vector<int>& labels_out) {
  std::size_t plane = static_cast<std::size_t>(cfg.in_h) * cfg.in_w;
  std::vector<float> input((end - begin) * cfg.in_channels * plane);
  labels_out.clear();
  for (std::size_t b = begin; b < end; ++b) {
    const PairSample& s = dataset[indices[b]];
    if (s.pair.channel0.size() != plane || s.pair.channel1.size() != plane)
      throw ShapeMismatchError("train: sample dims do not match config");
    float* dst = input.data() + (b - begin) * cfg.in_channels * plane;
    std::copy(s.pair.channel0.begin(), s.pair.channel0.end(), dst);
    std::copy(s.pair.channel1.begin(), s.pair.channel1.end(), dst + plane);
    labels_out.push_back(s.label);
  }
  return input;
}

// argmax accuracy of an inference pass over `indices`
double inference_accuracy(const CnnParams<float>& params,
                          const std::vector<PairSample>& dataset,
                          const std::vector<std::size_t>& indices,
                          const CnnConfig& cfg) {
  if (indices.empty()) return 0.0;
  std::size_t correct = 0;
  std::size_t chunk = static_cast<std::size_t>(std::max(cfg.batch_size, 1));
  std::vector<int> labels;
  for (std::size_t begin = 0; begin < indices.size(); begin += chunk) {
    std::size_t end = std::min(begin + chunk, indices.size());
    std::vector<float> input = assemble_batch(dataset, indices, begin, end, cfg, labels);
    ForwardCache<float> cache =
        forward(params, input, static_cast<int>(end - begin), cfg, false, nullptr);
    for (std::size_t i = 0; i < end - begin; ++i) {
      const float* row = cache.probs.data() + i * cfg.num_classes;
      int pred = 0;
      for (int c = 1; c < cfg.num_classes; ++c)
        if (row[c] > row[pred]) pred = c;
      if (pred == labels[i]) ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(indices.size());
}

}  // namespace

std::pair<CnnParams<float>, TrainReport> train(
    const std::vector<PairSample>& dataset, const CnnConfig& cfg,
    AdamState<float>* state_out) {
  if (dataset.size() < 10)
    throw InsufficientDataError("train: need at least 10 samples, got " +
                                std::to_string(dataset.size()));
  std::vector<int> labels(dataset.size());
  bool has[2] = {false, false};
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    labels[i] = dataset[i].label ? 1 : 0;
    has[labels[i]] = true;
  }
  if (!has[0] || !has[1])
    throw InsufficientDataError("train: dataset contains a single class");

  auto [train_idx, val_idx] = split_stratified(labels, 0.1, cfg.rng_seed);

  Rng rng(cfg.rng_seed);
  CnnParams<float> params = init_params<float>(cfg, rng);
  AdamState<float> state;
  CnnParams<float> grads;

  TrainReport report;
  report.seed = cfg.rng_seed;
  auto t0 = std::chrono::steady_clock::now();

  std::size_t batch = static_cast<std::size_t>(std::max(cfg.batch_size, 1));
  bool stop = false;
  for (int epoch = 1; epoch <= cfg.epochs && !stop; ++epoch) {
    rng.shuffle(train_idx);
    double loss_sum = 0.0;
    std::size_t seen = 0;
    std::vector<int> batch_labels;
    for (std::size_t begin = 0; begin < train_idx.size(); begin += batch) {
      std::size_t end = std::min(begin + batch, train_idx.size());
      std::vector<float> input =
          assemble_batch(dataset, train_idx, begin, end, cfg, batch_labels);
      float loss = loss_and_grads(params, input, static_cast<int>(end - begin),
                                  batch_labels, cfg, rng, grads);
      adam_step(params, grads, state, cfg);
      loss_sum += static_cast<double>(loss) * static_cast<double>(end - begin);
      seen += end - begin;
      ++report.steps;
      if (cfg.max_steps > 0 && report.steps >= cfg.max_steps) {
        stop = true;
        break;
      }
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = seen ? loss_sum / static_cast<double>(seen) : 0.0;
    stats.train_accuracy = inference_accuracy(params, dataset, train_idx, cfg);
    stats.val_accuracy = inference_accuracy(params, dataset, val_idx, cfg);
    report.epochs.push_back(stats);
    if (cfg.train_acc_target > 0 && stats.train_accuracy >= cfg.train_acc_target)
      stop = true;
    if (cfg.val_acc_target > 0 && stats.val_accuracy >= cfg.val_acc_target)
      stop = true;
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (state_out) *state_out = std::move(state);
  return {std::move(params), std::move(report)};
}

}  // namespace pf
