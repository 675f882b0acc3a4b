#include "pf/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pf/errors.hpp"
#include "pf/image.hpp"

namespace pf {

PairTensor compose_pair(const PhoneticFeature& a, const PhoneticFeature& b,
                        double scale_z) {
  if (a.width != b.width || a.height != b.height)
    throw DimensionMismatchError("compose_pair: feature dimensions differ");
  PairTensor pair;
  pair.width = a.width;
  pair.height = a.height;
  pair.channel0.resize(a.grid.size());
  pair.channel1.resize(b.grid.size());
  float inv = static_cast<float>(1.0 / scale_z);
  for (std::size_t i = 0; i < a.grid.size(); ++i) pair.channel0[i] = a.grid[i] * inv;
  for (std::size_t i = 0; i < b.grid.size(); ++i) pair.channel1[i] = b.grid[i] * inv;
  return pair;
}

void export_rgb_png(const PairTensor& pair, const std::string& path) {
  std::vector<unsigned char> rgb(static_cast<std::size_t>(pair.width) * pair.height * 3);
  for (std::size_t i = 0; i < pair.channel0.size(); ++i) {
    rgb[i * 3 + 0] = static_cast<unsigned char>(
        std::clamp(pair.channel0[i] * 255.0f, 0.0f, 255.0f));
    rgb[i * 3 + 1] = static_cast<unsigned char>(
        std::clamp(pair.channel1[i] * 255.0f, 0.0f, 255.0f));
    rgb[i * 3 + 2] = 0;
  }
  write_png_rgb(path, rgb, pair.width, pair.height);
}

void export_raw_tensor(const PairTensor& pair, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "PF2 " << pair.width << " " << pair.height << "\n";
  auto write_channel = [&](const std::vector<float>& ch) {
    for (float v : ch) {
      // little-endian on all supported targets
      out.write(reinterpret_cast<const char*>(&v), sizeof(float));
    }
  };
  write_channel(pair.channel0);
  write_channel(pair.channel1);
  if (!out) throw IoError("write failed: " + path);
}

PairTensor import_raw_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic;
  int u = 0, v = 0;
  hs >> magic >> u >> v;
  if (magic != "PF2" || u <= 0 || v <= 0)
    throw FormatVersionMismatchError("raw tensor: bad header '" + header + "'");
  PairTensor pair;
  pair.width = u;
  pair.height = v;
  std::size_t n = static_cast<std::size_t>(u) * v;
  pair.channel0.resize(n);
  pair.channel1.resize(n);
  in.read(reinterpret_cast<char*>(pair.channel0.data()),
          static_cast<std::streamsize>(n * sizeof(float)));
  in.read(reinterpret_cast<char*>(pair.channel1.data()),
          static_cast<std::streamsize>(n * sizeof(float)));
  if (!in) throw IoError("raw tensor: truncated file " + path);
  return pair;
}

}  // namespace pf
