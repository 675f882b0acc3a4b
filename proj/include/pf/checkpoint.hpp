#pragma once

#include <string>

#include "pf/cnn.hpp"

namespace pf {

// Checkpoint file: magic "PFCNN1", u32 LE header length, config as
// canonical JSON, then parameter arrays in declaration order as
// little-endian 32-bit floats, then the optional Adam state (moments + t).

std::string cnn_config_to_json(const CnnConfig& cfg);
CnnConfig cnn_config_from_json(const std::string& json_text);

void save_checkpoint(const CnnParams<float>& params, const AdamState<float>* state,
                     const CnnConfig& cfg, const std::string& path);

struct Checkpoint {
  CnnConfig config;
  CnnParams<float> params;
  AdamState<float> state;
  bool has_state = false;
};

Checkpoint load_checkpoint(const std::string& path);

}  // namespace pf
