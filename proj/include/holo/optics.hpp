#pragma once

#include <cmath>
#include <numbers>

#include "holo/field.hpp"

namespace holo {

/// Geometry of the Fourier-transforming optical system.
struct OpticalConfig {
  double focal_length = 0.0; // metres
  double wavelength = 0.0;   // metres
  double pixel_pitch = 0.0;  // metres, modulator pixel size on both axes

  void validate() const {
    if (!(focal_length > 0.0) || !(wavelength > 0.0) || !(pixel_pitch > 0.0))
      throw config_error("optical config values must be strictly positive");
  }
};

/// A single trap: position relative to the lens focal point, plus the
/// complex amplitude it should carry.
struct Trap {
  double x = 0.0;         // metres
  double y = 0.0;         // metres
  double z = 0.0;         // metres, defocus out of the focal plane
  double amplitude = 1.0; // |A|, dimensionless
  double phase = 0.0;     // arg(A), radians
};

/// Hologram field of one diffraction-limited trap: each pixel carries
/// magnitude |A| and phase
///   arg(A) + (2*pi / (f*lambda)) * (x0*x + y0*y + (z0 / (2f)) * (x^2 + y^2)),
/// with (x, y) the physical modulator coordinates of the pixel measured
/// from the centre pixel (floor(w/2), floor(h/2)).
inline ComplexField analytic_trap_hologram(const Trap& trap, const OpticalConfig& cfg,
                                           int width, int height) {
  cfg.validate();
  if (trap.amplitude < 0.0) throw config_error("trap amplitude must be non-negative");
  ComplexField holo(width, height, Plane::Hologram);
  const int cx = width / 2, cy = height / 2;
  const double k = 2.0 * std::numbers::pi / (cfg.focal_length * cfg.wavelength);
  const double defocus = trap.z / (2.0 * cfg.focal_length);
  cplx* out = holo.data();
  for (int iy = 0; iy < height; ++iy) {
    const double y = (iy - cy) * cfg.pixel_pitch;
    for (int ix = 0; ix < width; ++ix) {
      const double x = (ix - cx) * cfg.pixel_pitch;
      const double arg = trap.phase + k * (trap.x * x + trap.y * y + defocus * (x * x + y * y));
      out[static_cast<std::size_t>(iy) * width + ix] = std::polar(trap.amplitude, arg);
    }
  }
  return holo;
}

} // namespace holo
