#include "pf/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "pf/image.hpp"

namespace pf {

double gram_intensity(std::size_t i, const RasterConfig& cfg) {
  double factor = 1.0;
  if (cfg.intensity_mode == IntensityMode::kCumulativeProduct) {
    double gamma_k = 1.0;  // γ^k
    for (std::size_t k = 0; k <= i; ++k) {
      factor *= gamma_k;
      gamma_k *= cfg.gamma;
    }
  } else {
    for (std::size_t k = 0; k < i; ++k) factor *= cfg.gamma;
  }
  return cfg.scale_z * factor;
}

double total_path_length(const GramPath& path) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
    double dx = path.points[i + 1].x - path.points[i].x;
    double dy = path.points[i + 1].y - path.points[i].y;
    total += std::sqrt(dx * dx + dy * dy);
  }
  return total;
}

int line_thickness(const GramPath& path, const RasterConfig& cfg) {
  double length = total_path_length(path);
  double raw = cfg.thickness_budget / std::max(length, 1.0);
  int t = static_cast<int>(std::lround(raw));
  return std::clamp(t, 1, cfg.max_thickness);
}

bool stroke_covers(int px, int py, GridPoint a, GridPoint b, int thickness) {
  std::int64_t abx = b.x - a.x, aby = b.y - a.y;
  std::int64_t apx = px - a.x, apy = py - a.y;
  std::int64_t len2 = abx * abx + aby * aby;
  std::int64_t t2 = static_cast<std::int64_t>(thickness) * thickness;
  std::int64_t dot = apx * abx + apy * aby;
  if (len2 == 0 || dot <= 0) return 4 * (apx * apx + apy * apy) <= t2;
  if (dot >= len2) {
    std::int64_t bpx = px - b.x, bpy = py - b.y;
    return 4 * (bpx * bpx + bpy * bpy) <= t2;
  }
  std::int64_t cross = apx * aby - apy * abx;
  return 4 * cross * cross <= t2 * len2;
}

PhoneticFeature rasterize(const GramPath& path, const RasterConfig& cfg) {
  PhoneticFeature feature;
  feature.width = cfg.width;
  feature.height = cfg.height;
  feature.grid.assign(static_cast<std::size_t>(cfg.width) * cfg.height, 0.0f);
  feature.total_length = total_path_length(path);
  if (path.points.size() < 2) return feature;

  int t = line_thickness(path, cfg);
  int halo = t / 2 + 1;
  for (std::size_t j = 0; j + 1 < path.points.size(); ++j) {
    GridPoint a = path.points[j];
    GridPoint b = path.points[j + 1];
    float intensity = static_cast<float>(gram_intensity(j, cfg));
    int x0 = std::max(0, std::min(a.x, b.x) - halo);
    int x1 = std::min(cfg.width - 1, std::max(a.x, b.x) + halo);
    int y0 = std::max(0, std::min(a.y, b.y) - halo);
    int y1 = std::min(cfg.height - 1, std::max(a.y, b.y) + halo);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        if (stroke_covers(x, y, a, b, t))
          feature.at(x, y) = std::max(feature.at(x, y), intensity);
  }
  return feature;
}

PhoneticFeature featurize_phonetic(const std::string& phonetic_text,
                                   const SymbolDictionary& dict,
                                   const RasterConfig& cfg) {
  SymbolSequence seq = tokenize(phonetic_text, dict);
  GramPath path = gram_coordinates(segment_2grams(seq), dict);
  PhoneticFeature feature = rasterize(path, cfg);
  feature.source_word = phonetic_text;
  return feature;
}

void export_gray_png(const PhoneticFeature& feature, const std::string& path) {
  std::vector<unsigned char> pixels(feature.grid.size());
  for (std::size_t i = 0; i < feature.grid.size(); ++i) {
    float v = std::clamp(feature.grid[i], 0.0f, 255.0f);
    pixels[i] = static_cast<unsigned char>(v);  // floor quantization
  }
  write_png_gray(path, pixels, feature.width, feature.height);
}

}  // namespace pf
