#pragma once

#include <string>
#include <vector>

#include "pf/codec.hpp"

namespace pf {

enum class IntensityMode {
  kCumulativeProduct,  // Z·∏γ^k, k = 0..i  (exponent grows quadratically)
  kGeometric,          // Z·γ^i
};

struct RasterConfig {
  double scale_z = 255.0;
  double gamma = 0.9;
  IntensityMode intensity_mode = IntensityMode::kCumulativeProduct;
  int width = 128;
  int height = 128;
  double thickness_budget = 256.0;
  int max_thickness = 7;
};

// u×v intensity grid, row-major, origin top-left (x = column, y = row).
struct PhoneticFeature {
  int width = 0;
  int height = 0;
  std::vector<float> grid;  // height*width values in [0, Z]
  std::string source_word;
  double total_length = 0.0;

  float at(int x, int y) const { return grid[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) { return grid[static_cast<std::size_t>(y) * width + x]; }
};

// Intensity of the i-th segment (0-based): the first segment carries the
// full scale factor.
double gram_intensity(std::size_t i, const RasterConfig& cfg);

// Sum of Euclidean distances between consecutive points; 0 if < 2 points.
double total_path_length(const GramPath& path);

// clamp(round(budget / max(L, 1)), 1, max_thickness): shorter paths get
// thicker strokes so total ink stays roughly constant.
int line_thickness(const GramPath& path, const RasterConfig& cfg);

// Exact stroke membership test shared by the rasterizer and its test
// oracle: pixel (px,py) is on the stroke of segment a→b at thickness t iff
// its distance to the segment is ≤ t/2. Evaluated in exact integer
// arithmetic (4·d²·|ab|² ≤ t²·|ab|²), so there are no float boundary ties.
bool stroke_covers(int px, int py, GridPoint a, GridPoint b, int thickness);

// Draws each consecutive segment at the path's thickness with intensity
// gram_intensity(j); overlapping pixels keep the maximum intensity.
PhoneticFeature rasterize(const GramPath& path, const RasterConfig& cfg);

// Full pipeline helper: tokenize → 2-grams → coordinates → rasterize.
PhoneticFeature featurize_phonetic(const std::string& phonetic_text,
                                   const SymbolDictionary& dict,
                                   const RasterConfig& cfg);

// 8-bit grayscale PNG, intensity floor-quantized.
void export_gray_png(const PhoneticFeature& feature, const std::string& path);

}  // namespace pf
