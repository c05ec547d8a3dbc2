#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "holo/field.hpp"
#include "holo/rng.hpp"

namespace holo {

struct PixelCoord {
  int x = 0;
  int y = 0;
  friend bool operator==(PixelCoord a, PixelCoord b) { return a.x == b.x && a.y == b.y; }
};

/// Square lattice of trap pixels: rows x cols sites, centre-to-centre
/// spacing in pixels (spacing - 1 dark pixels between traps), with the
/// top-left trap at `offset`.
struct TrapLayout {
  int rows = 1;
  int cols = 1;
  int spacing = 5;
  PixelCoord offset;

  int trap_count() const { return rows * cols; }

  /// Trap pixels in row-major order.
  std::vector<PixelCoord> traps() const {
    validate_shape();
    std::vector<PixelCoord> out;
    out.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        out.push_back({offset.x + c * spacing, offset.y + r * spacing});
    return out;
  }

  /// Pixel extent of the grid footprint along x / y.
  int extent_x() const { return (cols - 1) * spacing + 1; }
  int extent_y() const { return (rows - 1) * spacing + 1; }

  /// Central pixel of the grid footprint (rounded down for even extents).
  PixelCoord centroid() const {
    return {offset.x + (extent_x() - 1) / 2, offset.y + (extent_y() - 1) / 2};
  }

  void validate_shape() const {
    if (rows < 1 || cols < 1) throw config_error("trap grid needs rows, cols >= 1");
    if (spacing < 1) throw config_error("trap spacing must be >= 1 pixel");
  }

  /// Checks that every trap pixel lies strictly inside a width x height array.
  void validate_bounds(int width, int height) const {
    validate_shape();
    const PixelCoord last{offset.x + (cols - 1) * spacing, offset.y + (rows - 1) * spacing};
    if (offset.x < 0 || offset.y < 0 || last.x >= width || last.y >= height)
      throw bounds_error("trap layout exceeds " + std::to_string(width) + "x" +
                         std::to_string(height) + " image plane");
  }
};

/// Grid centred on the optical axis (the centred-DC pixel). Used for PSLM
/// targets.
inline TrapLayout centered_grid(int rows, int cols, int spacing, int width, int height) {
  TrapLayout layout{rows, cols, spacing, {}};
  layout.validate_shape();
  const PixelCoord center{width / 2, height / 2};
  layout.offset = {center.x - (layout.extent_x() - 1) / 2,
                   center.y - (layout.extent_y() - 1) / 2};
  return layout;
}

/// Grid displaced from the optical axis by a quarter of the field in both
/// axes, so that for a binary-amplitude device the +1, 0 and -1 diffraction
/// orders land in disjoint parts of the image plane.
inline TrapLayout dmd_grid(int rows, int cols, int spacing, int width, int height) {
  TrapLayout layout = centered_grid(rows, cols, spacing, width, height);
  layout.offset.x += width / 4;
  layout.offset.y += height / 4;
  return layout;
}

/// Target image: every trap pixel holds exp(i*theta_n)/sqrt(N) with theta_n
/// drawn uniformly from [0, 2*pi) in row-major trap order, all other pixels
/// exactly zero. Total power is 1 up to floating rounding.
inline ComplexField build_target(const TrapLayout& layout, int width, int height, RngSeed seed) {
  layout.validate_bounds(width, height);
  ComplexField target(width, height, Plane::Image);
  PhaseStream phases(seed);
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(layout.trap_count()));
  for (const PixelCoord& p : layout.traps())
    target.at(p.x, p.y) = std::polar(amplitude, phases.next());
  return target;
}

} // namespace holo
