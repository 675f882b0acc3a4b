#pragma once

#include <string>
#include <vector>

#include "pf/raster.hpp"

namespace pf {

// Two-channel CNN input: channel 0 = first mark, channel 1 = second,
// both scaled to [0, 1].
struct PairTensor {
  int width = 0;
  int height = 0;
  std::vector<float> channel0;
  std::vector<float> channel1;
};

struct PairSample {
  PairTensor pair;
  int label = 0;  // 1 = similar, 0 = dissimilar
  std::string provenance;
};

// channel 0 = a/Z, channel 1 = b/Z; no mixing.
PairTensor compose_pair(const PhoneticFeature& a, const PhoneticFeature& b,
                        double scale_z = 255.0);

// 128×128 8-bit RGB PNG: R = channel0·255, G = channel1·255, B = 0.
// Overlapping strokes render yellow.
void export_rgb_png(const PairTensor& pair, const std::string& path);

// Raw dump for cross-language debugging: header line "PF2 <u> <v>\n", then
// both channels channel-major as little-endian 32-bit floats.
void export_raw_tensor(const PairTensor& pair, const std::string& path);
PairTensor import_raw_tensor(const std::string& path);

}  // namespace pf
