#pragma once

#include <cstdint>
#include <random>

namespace oba {

// Seeded uniform-[0,1) stream backed by mt19937_64. The 53-bit mapping is
// spelled out here (rather than uniform_real_distribution, whose output is
// implementation-defined) so traces reproduce bit-for-bit across platforms.
class Uniform01 {
 public:
  explicit Uniform01(std::uint64_t seed) : gen_(seed) {}

  double next() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // symmetric uniform on (-1, 1)
  double next_signed() { return 2.0 * next() - 1.0; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oba
