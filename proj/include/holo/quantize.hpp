#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "holo/field.hpp"

namespace holo {

enum class DeviceKind { DMD, PSLM };

/// Physical modulator: a binary-amplitude mirror array or a phase modulator
/// with `phase_levels` evenly spaced levels on [0, 2*pi).
struct DeviceModel {
  DeviceKind kind = DeviceKind::PSLM;
  int phase_levels = 256;

  static DeviceModel dmd() { return {DeviceKind::DMD, 2}; }
  static DeviceModel pslm(int levels = 256) {
    DeviceModel d{DeviceKind::PSLM, levels};
    d.validate();
    return d;
  }

  void validate() const {
    if (kind == DeviceKind::PSLM && phase_levels < 2)
      throw config_error("PSLM needs at least 2 phase levels");
  }
};

/// Order in which the dither pass walks the array. Raster processes every
/// row left to right; serpentine alternates direction per row (with the
/// kernel's horizontal offsets mirrored on reversed rows).
enum class ScanOrder { Raster, Serpentine };

struct KernelTap {
  int dx = 0;
  int dy = 0;
  double weight = 0.0;
};

/// Error-diffusion kernel: offsets (relative to the pixel being processed,
/// under left-to-right scanning) and the fraction of its error each
/// receives. Weights must sum to exactly 1 and all taps must point at
/// pixels not yet processed.
class DitherKernel {
public:
  explicit DitherKernel(std::vector<KernelTap> taps) : taps_(std::move(taps)) {
    if (taps_.empty()) throw config_error("dither kernel needs at least one tap");
    double sum = 0.0;
    for (const KernelTap& t : taps_) {
      if (t.dy < 0 || (t.dy == 0 && t.dx <= 0))
        throw config_error("dither kernel tap points at an already processed pixel");
      sum += t.weight;
    }
    if (sum != 1.0) throw config_error("dither kernel weights must sum to exactly 1");
  }

  std::span<const KernelTap> taps() const { return taps_; }

private:
  std::vector<KernelTap> taps_;
};

namespace kernels {

/// Default kernel: 5/16 to the next pixel in the scan line and a symmetric
/// 3/16, 5/16, 3/16 split over the row below.
inline const DitherKernel& symmetric() {
  static const DitherKernel k(std::vector<KernelTap>{
      {+1, 0, 5.0 / 16.0}, {-1, +1, 3.0 / 16.0}, {0, +1, 5.0 / 16.0}, {+1, +1, 3.0 / 16.0}});
  return k;
}

/// Classical Floyd-Steinberg weights (7, 3, 5, 1)/16.
inline const DitherKernel& classic_fs() {
  static const DitherKernel k(std::vector<KernelTap>{
      {+1, 0, 7.0 / 16.0}, {-1, +1, 3.0 / 16.0}, {0, +1, 5.0 / 16.0}, {+1, +1, 1.0 / 16.0}});
  return k;
}

} // namespace kernels

/// A hologram the device can actually show. DMD values are mirror states
/// {0, 1}; PSLM values are phase-level indices in [0, phase_levels).
struct DisplayedHologram {
  DeviceModel device;
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> values;
};

/// Index of the phase level 2*pi*k/levels nearest to `phase` (any radians).
/// A phase exactly between two levels rounds to the lower index.
inline int nearest_phase_level(double phase, int levels) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double ph = std::fmod(phase, two_pi);
  if (ph < 0.0) ph += two_pi;
  const double t = ph * levels / two_pi;
  int k = static_cast<int>(std::ceil(t - 0.5));
  if (k < 0) k = 0;
  if (k >= levels) k -= levels;
  return k;
}

/// Binary-amplitude rounding: state '1' iff the pixel's phase lies in
/// (-pi/2, +pi/2]; zero-amplitude pixels map to '0'.
inline DisplayedHologram round_dmd(const ComplexField& hologram) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  DisplayedHologram out{DeviceModel::dmd(), hologram.width(), hologram.height(), {}};
  out.values.resize(hologram.size());
  const cplx* v = hologram.data();
  for (std::size_t i = 0; i < hologram.size(); ++i) {
    if (v[i] == 0.0) {
      out.values[i] = 0;
      continue;
    }
    const double ph = std::arg(v[i]);
    out.values[i] = (ph > -half_pi && ph <= half_pi) ? 1 : 0;
  }
  return out;
}

/// Phase rounding: amplitude discarded, each pixel's phase mapped to the
/// nearest of the device's levels.
inline DisplayedHologram round_pslm(const ComplexField& hologram, const DeviceModel& device) {
  if (device.kind != DeviceKind::PSLM) throw config_error("round_pslm requires a PSLM device");
  device.validate();
  DisplayedHologram out{device, hologram.width(), hologram.height(), {}};
  out.values.resize(hologram.size());
  const cplx* v = hologram.data();
  for (std::size_t i = 0; i < hologram.size(); ++i)
    out.values[i] = static_cast<std::uint16_t>(nearest_phase_level(std::arg(v[i]), device.phase_levels));
  return out;
}

/// Core scalar error-diffusion pass. `desired` holds the value wanted at
/// each pixel; every pixel displays the nearer of {0, 1} (exactly 0.5 goes
/// to 1) after adding the error carried to it, and passes its own signed
/// error on through the kernel. Error leaving the array is dropped.
inline std::vector<std::uint16_t> diffuse_binary(std::vector<double> desired, int width, int height,
                                                 const DitherKernel& kernel,
                                                 ScanOrder scan = ScanOrder::Raster) {
  if (width <= 0 || height <= 0 ||
      desired.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw shape_error("diffuse_binary: value buffer does not match dimensions");
  std::vector<std::uint16_t> states(desired.size());
  for (int y = 0; y < height; ++y) {
    const bool reversed = scan == ScanOrder::Serpentine && (y & 1);
    int x = reversed ? width - 1 : 0;
    const int step = reversed ? -1 : +1;
    for (int i = 0; i < width; ++i, x += step) {
      const std::size_t idx = static_cast<std::size_t>(y) * width + x;
      const double acc = desired[idx];
      const std::uint16_t shown = acc >= 0.5 ? 1 : 0;
      states[idx] = shown;
      const double err = acc - shown;
      for (const KernelTap& t : kernel.taps()) {
        const int tx = x + (reversed ? -t.dx : t.dx);
        const int ty = y + t.dy;
        if (tx >= 0 && tx < width && ty >= 0 && ty < height)
          desired[static_cast<std::size_t>(ty) * width + tx] += err * t.weight;
      }
    }
  }
  return states;
}

/// Core vector error-diffusion pass. Each pixel's accumulated complex value
/// is approximated by the unit-magnitude vector at the nearest of `levels`
/// phase levels; the complex error (accumulated minus displayed vector) is
/// what diffuses.
inline std::vector<std::uint16_t> diffuse_phase(std::vector<cplx> desired, int width, int height,
                                                int levels, const DitherKernel& kernel,
                                                ScanOrder scan = ScanOrder::Raster) {
  if (width <= 0 || height <= 0 ||
      desired.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw shape_error("diffuse_phase: value buffer does not match dimensions");
  if (levels < 2) throw config_error("diffuse_phase needs at least 2 levels");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<std::uint16_t> out(desired.size());
  for (int y = 0; y < height; ++y) {
    const bool reversed = scan == ScanOrder::Serpentine && (y & 1);
    int x = reversed ? width - 1 : 0;
    const int step = reversed ? -1 : +1;
    for (int i = 0; i < width; ++i, x += step) {
      const std::size_t idx = static_cast<std::size_t>(y) * width + x;
      const cplx acc = desired[idx];
      const int level = nearest_phase_level(std::arg(acc), levels);
      out[idx] = static_cast<std::uint16_t>(level);
      const cplx shown = std::polar(1.0, two_pi * level / levels);
      const cplx err = acc - shown;
      for (const KernelTap& t : kernel.taps()) {
        const int tx = x + (reversed ? -t.dx : t.dx);
        const int ty = y + t.dy;
        if (tx >= 0 && tx < width && ty >= 0 && ty < height)
          desired[static_cast<std::size_t>(ty) * width + tx] += err * t.weight;
      }
    }
  }
  return out;
}

/// Binary-amplitude dithering: the real part of the hologram is mapped
/// affinely so its minimum lands on 0 and its maximum on 1, then diffused.
inline DisplayedHologram dither_dmd(const ComplexField& hologram, const DitherKernel& kernel,
                                    ScanOrder scan = ScanOrder::Raster) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const cplx& v : hologram.values()) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
  }
  if (!(hi > lo))
    throw degenerate_input_error("dither_dmd: constant real part cannot be scaled to [0, 1]");
  std::vector<double> desired(hologram.size());
  const double inv = 1.0 / (hi - lo);
  const cplx* v = hologram.data();
  for (std::size_t i = 0; i < desired.size(); ++i) desired[i] = (v[i].real() - lo) * inv;
  DisplayedHologram out{DeviceModel::dmd(), hologram.width(), hologram.height(),
                        diffuse_binary(std::move(desired), hologram.width(), hologram.height(),
                                       kernel, scan)};
  return out;
}

/// Phase dithering: the full complex field is scaled so its maximum
/// intensity is 1, then vector-diffused onto the device's phase levels.
inline DisplayedHologram dither_pslm(const ComplexField& hologram, const DeviceModel& device,
                                     const DitherKernel& kernel,
                                     ScanOrder scan = ScanOrder::Raster) {
  if (device.kind != DeviceKind::PSLM) throw config_error("dither_pslm requires a PSLM device");
  device.validate();
  double max_mag = 0.0;
  for (const cplx& v : hologram.values()) max_mag = std::max(max_mag, std::abs(v));
  if (max_mag == 0.0) throw degenerate_input_error("dither_pslm: zero field cannot be scaled");
  std::vector<cplx> desired(hologram.size());
  const double inv = 1.0 / max_mag;
  const cplx* v = hologram.data();
  for (std::size_t i = 0; i < desired.size(); ++i) desired[i] = v[i] * inv;
  DisplayedHologram out{device, hologram.width(), hologram.height(),
                        diffuse_phase(std::move(desired), hologram.width(), hologram.height(),
                                      device.phase_levels, kernel, scan)};
  return out;
}

/// The optical field the device actually produces: amplitude 0/1 with phase
/// 0 for a DMD, unit amplitude with phase 2*pi*level/levels for a PSLM.
inline ComplexField realize(const DisplayedHologram& displayed) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  ComplexField out(displayed.width, displayed.height, Plane::Hologram);
  if (displayed.values.size() != out.size())
    throw shape_error("displayed hologram value buffer does not match dimensions");
  cplx* o = out.data();
  if (displayed.device.kind == DeviceKind::DMD) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (displayed.values[i] > 1) throw config_error("DMD state out of range");
      o[i] = displayed.values[i] ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    }
  } else {
    const int m = displayed.device.phase_levels;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (displayed.values[i] >= m) throw config_error("PSLM level out of range");
      o[i] = std::polar(1.0, two_pi * displayed.values[i] / m);
    }
  }
  return out;
}

} // namespace holo
