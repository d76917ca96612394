#pragma once

#include <cstdint>
#include <random>

namespace deauto {

// Uniform double in [0, 1) built from the top 53 bits of one mt19937_64 draw.
// Used instead of std::uniform_real_distribution so that seeded streams are
// bit-identical across standard library implementations.
inline double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_range(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(gen);
}

}  // namespace deauto
