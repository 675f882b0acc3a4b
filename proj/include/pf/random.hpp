#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace pf {

// Deterministic RNG with fixed algorithms for every draw we make, so
// seeded runs replay bit-identically on one platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(static_cast<std::uint32_t>(seed ^ (seed >> 32))) {}

  // uniform in [0, 1) with 24 bits of mantissa
  double uniform() {
    return static_cast<double>(engine_() >> 8) * (1.0 / 16777216.0);
  }

  // uniform integer in [0, n)
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

  // Box-Muller standard normal
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[uniform_index(i)]);
  }

  std::uint32_t raw() { return engine_(); }

 private:
  std::mt19937 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Stratified split: returns (train_indices, val_indices) with val getting
// round(class_size * val_fraction) of each class. Order within each side
// follows the seeded shuffle.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_stratified(const std::vector<int>& labels, double val_fraction,
                 std::uint64_t seed) {
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i)
    by_class[labels[i] ? 1 : 0].push_back(i);
  Rng rng(seed ^ 0x51f5ULL);
  std::vector<std::size_t> train, val;
  for (auto& cls : by_class) {
    rng.shuffle(cls);
    std::size_t n_val = static_cast<std::size_t>(
        std::lround(static_cast<double>(cls.size()) * val_fraction));
    n_val = std::min(n_val, cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i)
      (i < n_val ? val : train).push_back(cls[i]);
  }
  return {std::move(train), std::move(val)};
}

}  // namespace pf
