#include "pf/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "json.hpp"
#include "pf/errors.hpp"

namespace pf {

namespace {

constexpr char kMagic[6] = {'P', 'F', 'C', 'N', 'N', '1'};

void write_array(std::ofstream& out, const std::vector<float>& a) {
  out.write(reinterpret_cast<const char*>(a.data()),
            static_cast<std::streamsize>(a.size() * sizeof(float)));
}

void read_array(std::ifstream& in, std::vector<float>& a, std::size_t n,
                const char* name) {
  a.resize(n);
  in.read(reinterpret_cast<char*>(a.data()),
          static_cast<std::streamsize>(n * sizeof(float)));
  if (!in)
    throw FormatVersionMismatchError(std::string("checkpoint: truncated while reading ") + name);
}

struct Shapes {
  std::size_t sizes[8];
};

Shapes param_shapes(const CnnConfig& cfg) {
  std::size_t ckk1 = static_cast<std::size_t>(cfg.in_channels) * cfg.kernel * cfg.kernel;
  std::size_t ckk2 = static_cast<std::size_t>(cfg.conv1_filters) * cfg.kernel * cfg.kernel;
  return {{
      cfg.conv1_filters * ckk1, static_cast<std::size_t>(cfg.conv1_filters),
      cfg.conv2_filters * ckk2, static_cast<std::size_t>(cfg.conv2_filters),
      static_cast<std::size_t>(cfg.fc1_units) * cfg.flatten_size(),
      static_cast<std::size_t>(cfg.fc1_units),
      static_cast<std::size_t>(cfg.num_classes) * cfg.fc1_units,
      static_cast<std::size_t>(cfg.num_classes),
  }};
}

}  // namespace

std::string cnn_config_to_json(const CnnConfig& cfg) {
  nlohmann::json j;  // keys serialize sorted: canonical form
  j["in_channels"] = cfg.in_channels;
  j["in_h"] = cfg.in_h;
  j["in_w"] = cfg.in_w;
  j["kernel"] = cfg.kernel;
  j["conv1_filters"] = cfg.conv1_filters;
  j["conv2_filters"] = cfg.conv2_filters;
  j["fc1_units"] = cfg.fc1_units;
  j["num_classes"] = cfg.num_classes;
  j["dropout_rate"] = cfg.dropout_rate;
  j["learning_rate"] = cfg.learning_rate;
  j["beta1"] = cfg.beta1;
  j["beta2"] = cfg.beta2;
  j["epsilon"] = cfg.epsilon;
  j["batch_size"] = cfg.batch_size;
  j["epochs"] = cfg.epochs;
  j["rng_seed"] = cfg.rng_seed;
  return j.dump();
}

CnnConfig cnn_config_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw FormatVersionMismatchError("checkpoint: header is not valid JSON");
  CnnConfig cfg;
  try {
    cfg.in_channels = j.at("in_channels").get<int>();
    cfg.in_h = j.at("in_h").get<int>();
    cfg.in_w = j.at("in_w").get<int>();
    cfg.kernel = j.at("kernel").get<int>();
    cfg.conv1_filters = j.at("conv1_filters").get<int>();
    cfg.conv2_filters = j.at("conv2_filters").get<int>();
    cfg.fc1_units = j.at("fc1_units").get<int>();
    cfg.num_classes = j.at("num_classes").get<int>();
    cfg.dropout_rate = j.at("dropout_rate").get<double>();
    cfg.learning_rate = j.at("learning_rate").get<double>();
    cfg.beta1 = j.at("beta1").get<double>();
    cfg.beta2 = j.at("beta2").get<double>();
    cfg.epsilon = j.at("epsilon").get<double>();
    cfg.batch_size = j.at("batch_size").get<int>();
    cfg.epochs = j.at("epochs").get<int>();
    cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatVersionMismatchError(std::string("checkpoint: bad header field: ") + e.what());
  }
  return cfg;
}

void save_checkpoint(const CnnParams<float>& params, const AdamState<float>* state,
                     const CnnConfig& cfg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  std::string header = cnn_config_to_json(cfg);
  std::uint32_t len = static_cast<std::uint32_t>(header.size());
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  params.for_each([&](const std::vector<float>& a) { write_array(out, a); });
  unsigned char has_state = (state && state->t > 0) ? 1 : 0;
  out.write(reinterpret_cast<const char*>(&has_state), 1);
  if (has_state) {
    state->m.for_each([&](const std::vector<float>& a) { write_array(out, a); });
    state->v.for_each([&](const std::vector<float>& a) { write_array(out, a); });
    std::uint64_t t = state->t;
    out.write(reinterpret_cast<const char*>(&t), sizeof(t));
  }
  if (!out) throw IoError("write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  char magic[6];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw FormatVersionMismatchError("checkpoint: bad magic in " + path);
  std::uint32_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof(len));
  if (!in || len == 0 || len > (1u << 20))
    throw FormatVersionMismatchError("checkpoint: bad header length");
  std::string header(len, '\0');
  in.read(header.data(), len);
  if (!in) throw FormatVersionMismatchError("checkpoint: truncated header");

  Checkpoint ckpt;
  ckpt.config = cnn_config_from_json(header);
  Shapes shapes = param_shapes(ckpt.config);

  int idx = 0;
  const char* names[8] = {"conv1_w", "conv1_b", "conv2_w", "conv2_b",
                          "fc1_w", "fc1_b", "fc2_w", "fc2_b"};
  ckpt.params.for_each([&](std::vector<float>& a) {
    read_array(in, a, shapes.sizes[idx], names[idx]);
    ++idx;
  });

  unsigned char has_state = 0;
  in.read(reinterpret_cast<char*>(&has_state), 1);
  if (in && has_state) {
    idx = 0;
    ckpt.state.m.for_each([&](std::vector<float>& a) { read_array(in, a, shapes.sizes[idx++], "adam.m"); });
    idx = 0;
    ckpt.state.v.for_each([&](std::vector<float>& a) { read_array(in, a, shapes.sizes[idx++], "adam.v"); });
    std::uint64_t t = 0;
    in.read(reinterpret_cast<char*>(&t), sizeof(t));
    if (!in) throw FormatVersionMismatchError("checkpoint: truncated adam state");
    ckpt.state.t = t;
    ckpt.has_state = true;
  }
  return ckpt;
}

}  // namespace pf
