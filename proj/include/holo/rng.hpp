#pragma once

#include <cstdint>
#include <random>

namespace holo {

/// Seed for every random draw in the library. Equal seeds give bit-identical
/// trap phases and therefore bit-identical downstream results.
struct RngSeed {
  std::uint64_t value = 0;
};

/// splitmix64 mixing step. Bijective on 64-bit words, so distinct inputs
/// always map to distinct outputs. Used to derive per-run seeds.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream of phases uniform in [0, 2*pi). Backed by std::mt19937_64, whose
/// output sequence is fixed by the C++ standard, with an explicit mapping
/// (top 53 bits over 2^53) so results do not depend on the platform's
/// distribution implementation.
class PhaseStream {
public:
  explicit PhaseStream(RngSeed seed) : engine_(seed.value) {}

  double next() {
    const std::uint64_t bits = engine_() >> 11;
    constexpr double two_pi = 6.283185307179586476925286766559;
    return two_pi * (static_cast<double>(bits) * 0x1.0p-53);
  }

private:
  std::mt19937_64 engine_;
};

} // namespace holo
