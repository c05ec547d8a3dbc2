#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "holo/fft.hpp"
#include "holo/field.hpp"
#include "holo/metrics.hpp"
#include "holo/quantize.hpp"
#include "holo/rng.hpp"
#include "holo/target.hpp"

namespace holo {

/// Image-plane mask: true pixels form the signal region whose amplitudes
/// are enforced; false pixels form the noise region that absorbs error.
struct RegionMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> inside; // row-major, 1 = signal region

  std::size_t count_true() const {
    std::size_t n = 0;
    for (std::uint8_t v : inside) n += v;
    return n;
  }

  bool at(int x, int y) const { return inside[static_cast<std::size_t>(y) * width + x] != 0; }

  void validate() const {
    if (width <= 0 || height <= 0 ||
        inside.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
      throw shape_error("region mask buffer does not match dimensions");
    if (count_true() == 0) throw config_error("region mask needs at least one signal pixel");
  }

  bool covers(const TrapLayout& layout) const {
    for (const PixelCoord& p : layout.traps())
      if (p.x < 0 || p.x >= width || p.y < 0 || p.y >= height || !at(p.x, p.y)) return false;
    return true;
  }
};

/// Axis-aligned rectangular signal region of region_width x region_height
/// pixels centred at `center` (the centre pixel is at offset
/// (floor(rw/2), floor(rh/2)) inside the rectangle).
inline RegionMask make_mask(int width, int height, int region_width, int region_height,
                            PixelCoord center) {
  if (width <= 0 || height <= 0 || region_width <= 0 || region_height <= 0)
    throw config_error("mask dimensions must be positive");
  const int x0 = center.x - region_width / 2;
  const int y0 = center.y - region_height / 2;
  const int x1 = x0 + region_width - 1;
  const int y1 = y0 + region_height - 1;
  if (x0 < 0 || y0 < 0 || x1 >= width || y1 >= height)
    throw bounds_error("signal region exceeds the image plane");
  RegionMask mask{width, height, std::vector<std::uint8_t>(
                                     static_cast<std::size_t>(width) * height, 0)};
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      mask.inside[static_cast<std::size_t>(y) * width + x] = 1;
  return mask;
}

struct MrafConfig {
  double mixing = 0.7; // p: fraction of power routed to the signal region
  int iterations = 20;
  RegionMask mask;
  DeviceModel device;
  RngSeed seed;

  void validate() const {
    if (!(mixing >= 0.0 && mixing <= 1.0)) throw config_error("mixing parameter must be in [0, 1]");
    if (iterations < 1) throw config_error("need at least one iteration");
    mask.validate();
    device.validate();
  }
};

/// Per-iteration figures of merit, recorded on the image produced by the
/// constrained hologram before the mixing step.
struct ConvergenceTrace {
  std::vector<double> cv;
  std::vector<double> efficiency;
};

/// Amplitude mixing: sqrt(p) * |F0| inside the signal region,
/// sqrt(1-p) * |current| outside it, with the phase of `current` kept at
/// every pixel (taken as 0 where current is exactly zero).
inline ComplexField mix_step(const ComplexField& current, std::span<const double> target_amplitudes,
                             const RegionMask& mask, double p) {
  if (static_cast<int>(current.width()) != mask.width || current.height() != mask.height ||
      target_amplitudes.size() != current.size())
    throw shape_error("mix_step: field, mask and target shapes disagree");
  if (!(p >= 0.0 && p <= 1.0)) throw config_error("mixing parameter must be in [0, 1]");
  const double signal_gain = std::sqrt(p);
  const double noise_gain = std::sqrt(1.0 - p);
  ComplexField out(current.width(), current.height(), current.plane());
  const cplx* in = current.data();
  cplx* o = out.data();
  for (std::size_t i = 0; i < current.size(); ++i) {
    if (mask.inside[i]) {
      const double phase = (in[i] == 0.0) ? 0.0 : std::arg(in[i]);
      o[i] = std::polar(signal_gain * target_amplitudes[i], phase);
    } else {
      // sqrt(1-p) * |v| with the phase of v kept is just sqrt(1-p) * v
      o[i] = noise_gain * in[i];
    }
  }
  return out;
}

namespace detail {

inline DisplayedHologram constrain_hologram(const ComplexField& hologram,
                                            const DeviceModel& device) {
  return device.kind == DeviceKind::DMD ? round_dmd(hologram) : round_pslm(hologram, device);
}

struct NullObserver {
  void operator()(int, const DisplayedHologram&, const ComplexField&, const ComplexField&) const {}
};

} // namespace detail

/// Iterative loop with mixed-region amplitude freedom. Starting from the
/// target image, each iteration inverse-transforms to the hologram plane,
/// applies the device constraint, forward-transforms the displayable
/// hologram, records the figures of merit at the trap pixels, and mixes the
/// obtained image with the target amplitudes. Inside the loop the displayed
/// hologram is taken at unit incident power (pixel amplitude 1/sqrt(P)) so
/// the obtained image is commensurate with the unit-power target.
///
/// The observer is called once per iteration with (iteration index, the
/// constrained hologram, the obtained image at physical scale, the mixed
/// image).
template <typename Observer>
std::pair<DisplayedHologram, ConvergenceTrace> mraf_run(const ComplexField& target,
                                                        const TrapLayout& layout,
                                                        const MrafConfig& cfg,
                                                        Observer&& observe) {
  cfg.validate();
  if (cfg.mask.width != target.width() || cfg.mask.height != target.height())
    throw config_error("mask dimensions do not match the target image");
  layout.validate_bounds(target.width(), target.height());
  if (!cfg.mask.covers(layout))
    throw config_error("signal region does not cover every trap pixel");

  std::vector<double> target_amp(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) target_amp[i] = std::abs(target.data()[i]);

  const double incident = static_cast<double>(target.width()) * target.height();
  const double illumination = 1.0 / std::sqrt(incident);

  ConvergenceTrace trace;
  trace.cv.reserve(cfg.iterations);
  trace.efficiency.reserve(cfg.iterations);

  ComplexField image = target;
  DisplayedHologram displayed;
  for (int it = 0; it < cfg.iterations; ++it) {
    const ComplexField hologram = fft_inverse(image);
    displayed = detail::constrain_hologram(hologram, cfg.device);
    const ComplexField obtained = fft_forward(realize(displayed));

    const TrapIntensities ti = trap_intensities(obtained, layout);
    trace.cv.push_back(coefficient_of_variation(ti));
    double trap_power = 0.0;
    for (double v : ti.values) trap_power += v;
    trace.efficiency.push_back(trap_power / incident);

    image = mix_step(scaled(obtained, illumination), target_amp, cfg.mask, cfg.mixing);
    observe(it, displayed, obtained, image);
  }
  return {std::move(displayed), std::move(trace)};
}

inline std::pair<DisplayedHologram, ConvergenceTrace> mraf_run(const ComplexField& target,
                                                               const TrapLayout& layout,
                                                               const MrafConfig& cfg) {
  return mraf_run(target, layout, cfg, detail::NullObserver{});
}

} // namespace holo
