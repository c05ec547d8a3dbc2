#pragma once

#include <algorithm>
#include <complex>
#include <random>

#include "holo/field.hpp"

namespace testutil {

inline holo::ComplexField random_field(int w, int h, holo::Plane plane, std::uint64_t seed) {
  holo::ComplexField f(w, h, plane);
  std::mt19937_64 eng(seed);
  auto unit = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-52 - 1.0; }; // [-1, 1)
  for (holo::cplx& v : f.values()) v = holo::cplx(unit(), unit());
  return f;
}

inline double max_abs_diff(const holo::ComplexField& a, const holo::ComplexField& b) {
  double worst = 0.0;
  auto va = a.values();
  auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) worst = std::max(worst, std::abs(va[i] - vb[i]));
  return worst;
}

inline bool bit_equal(const holo::ComplexField& a, const holo::ComplexField& b) {
  if (a.width() != b.width() || a.height() != b.height()) return false;
  auto va = a.values();
  auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i)
    if (va[i].real() != vb[i].real() || va[i].imag() != vb[i].imag()) return false;
  return true;
}

} // namespace testutil
