#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "holo/errors.hpp"

namespace holo {

using cplx = std::complex<double>;

/// Which side of the Fourier relationship a field lives on: the modulator
/// (hologram) plane or the lens focal (image) plane.
enum class Plane { Hologram, Image };

/// 2D complex amplitude on a regular pixel grid, stored row major with
/// index (x, y) -> y * width + x. Fields are plain values; every operation
/// on them returns a new field.
class ComplexField {
public:
  ComplexField(int width, int height, Plane plane)
      : width_(width), height_(height), plane_(plane) {
    if (width <= 0 || height <= 0)
      throw config_error("field dimensions must be positive");
    values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), cplx{});
  }

  int width() const { return width_; }
  int height() const { return height_; }
  Plane plane() const { return plane_; }
  std::size_t size() const { return values_.size(); }

  bool contains(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  std::size_t index(int x, int y) const {
    if (!contains(x, y))
      throw bounds_error("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                         ") outside " + std::to_string(width_) + "x" + std::to_string(height_) +
                         " field");
    return static_cast<std::size_t>(y) * width_ + x;
  }

  cplx& at(int x, int y) { return values_[index(x, y)]; }
  const cplx& at(int x, int y) const { return values_[index(x, y)]; }

  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }
  cplx* data() { return values_.data(); }
  const cplx* data() const { return values_.data(); }

  friend bool operator==(const ComplexField& a, const ComplexField& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.plane_ == b.plane_ &&
           a.values_ == b.values_;
  }

private:
  int width_;
  int height_;
  Plane plane_;
  std::vector<cplx> values_;
};

/// Total optical power: sum of |value|^2 over all pixels.
inline double power(const ComplexField& field) {
  double sum = 0.0;
  for (const cplx& v : field.values()) sum += std::norm(v);
  return sum;
}

/// Element-wise complex sum of fields sharing dimensions and plane.
inline ComplexField superpose(std::span<const ComplexField> fields) {
  if (fields.empty()) throw shape_error("superpose requires at least one field");
  const ComplexField& first = fields.front();
  ComplexField out(first.width(), first.height(), first.plane());
  for (const ComplexField& f : fields) {
    if (f.width() != first.width() || f.height() != first.height())
      throw shape_error("superpose: field dimensions differ");
    if (f.plane() != first.plane())
      throw shape_error("superpose: field planes differ");
    cplx* o = out.data();
    const cplx* v = f.data();
    for (std::size_t i = 0; i < out.size(); ++i) o[i] += v[i];
  }
  return out;
}

inline ComplexField superpose(std::initializer_list<std::reference_wrapper<const ComplexField>> fields) {
  std::vector<ComplexField> copy(fields.begin(), fields.end());
  return superpose(std::span<const ComplexField>(copy));
}

/// field * factor, preserving plane and dimensions.
inline ComplexField scaled(const ComplexField& field, double factor) {
  ComplexField out = field;
  for (cplx& v : out.values()) v *= factor;
  return out;
}

} // namespace holo
