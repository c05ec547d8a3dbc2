#pragma once

#include <cmath>
#include <vector>

#include "holo/field.hpp"
#include "holo/target.hpp"

namespace holo {

/// Per-trap image-plane intensities |F|^2, read at the single trap pixel
/// (targets are single-pixel deltas, so no neighbourhood integration).
struct TrapIntensities {
  std::vector<double> values; // row-major trap order
  std::vector<PixelCoord> pixels;
};

struct RunMetrics {
  double cv = 0.0;
  double efficiency = 0.0;
  double total_image_power = 0.0;
  double incident_power = 0.0;
};

inline TrapIntensities trap_intensities(const ComplexField& image, const TrapLayout& layout) {
  layout.validate_bounds(image.width(), image.height());
  TrapIntensities out;
  out.pixels = layout.traps();
  out.values.reserve(out.pixels.size());
  for (const PixelCoord& p : out.pixels) out.values.push_back(std::norm(image.at(p.x, p.y)));
  return out;
}

/// Coefficient of variation: population standard deviation (1/N) of the
/// trap intensities divided by their mean. Lower is more uniform.
inline double coefficient_of_variation(const TrapIntensities& ti) {
  const std::size_t n = ti.values.size();
  if (n == 0) throw metric_error("coefficient of variation needs at least one trap");
  double mean = 0.0;
  for (double v : ti.values) mean += v;
  mean /= static_cast<double>(n);
  if (!(mean > 0.0)) throw metric_error("coefficient of variation undefined for zero mean");
  double var = 0.0;
  for (double v : ti.values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  return std::sqrt(var) / mean;
}

/// Fraction of the power incident on the modulator that arrives at the
/// designated trap pixels. For a binary-amplitude device the layout names
/// only the +1-order trap pixels, so the 0 and -1 orders never count.
inline double efficiency(const ComplexField& image, const TrapLayout& layout,
                         double incident_power) {
  if (!(incident_power > 0.0)) throw metric_error("incident power must be positive");
  const TrapIntensities ti = trap_intensities(image, layout);
  double sum = 0.0;
  for (double v : ti.values) sum += v;
  return sum / incident_power;
}

struct OrderPowers {
  double zero = 0.0;      // fraction of incident power in the 0th order window
  double plus_one = 0.0;  // designated trap window
  double minus_one = 0.0; // mirrored window
};

/// Power in the 0, +1 and -1 diffraction-order windows as fractions of the
/// incident power (width*height in natural units). Each window is the trap
/// grid's bounding box, placed at the layout itself (+1), point-reflected
/// through the centred DC pixel (-1), and centred on DC (0).
inline OrderPowers order_powers(const ComplexField& image, const TrapLayout& layout) {
  layout.validate_bounds(image.width(), image.height());
  const int cx = image.width() / 2, cy = image.height() / 2;
  const int x0 = layout.offset.x, x1 = layout.offset.x + layout.extent_x() - 1;
  const int y0 = layout.offset.y, y1 = layout.offset.y + layout.extent_y() - 1;

  struct Window {
    int x0, x1, y0, y1;
    bool overlaps(const Window& o) const {
      return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
    }
  };
  const Window plus{x0, x1, y0, y1};
  const Window minus{2 * cx - x1, 2 * cx - x0, 2 * cy - y1, 2 * cy - y0};
  const int hw = (layout.extent_x() - 1) / 2, hh = (layout.extent_y() - 1) / 2;
  const Window zero{cx - hw, cx - hw + layout.extent_x() - 1,
                    cy - hh, cy - hh + layout.extent_y() - 1};
  if (plus.overlaps(minus) || plus.overlaps(zero) || minus.overlaps(zero))
    throw config_error("diffraction-order windows overlap; move the trap grid off axis");

  const auto window_power = [&](const Window& win) {
    double sum = 0.0;
    for (int y = std::max(0, win.y0); y <= std::min(image.height() - 1, win.y1); ++y)
      for (int x = std::max(0, win.x0); x <= std::min(image.width() - 1, win.x1); ++x)
        sum += std::norm(image.at(x, y));
    return sum;
  };
  const double incident = static_cast<double>(image.width()) * image.height();
  return OrderPowers{window_power(zero) / incident, window_power(plus) / incident,
                     window_power(minus) / incident};
}

} // namespace holo
