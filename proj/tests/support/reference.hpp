#pragma once

// Independent reference implementations used as oracles. These mirror the
// documented behaviour with straightforward code paths kept separate from
// the library implementations they check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "holo/fft.hpp"
#include "holo/field.hpp"
#include "holo/quantize.hpp"
#include "holo/target.hpp"

namespace reference {

// ---------------------------------------------------------------------------
// Error diffusion with explicit bookkeeping of error flow across the border
// of a rectangular region [rx0, rx1] x [ry0, ry1] (inclusive). Error sent
// off the array counts as leaving whatever region the sender is in.
// ---------------------------------------------------------------------------

template <typename Value>
struct DiffusionAudit {
  std::vector<std::uint16_t> states;
  Value into_region{};  // error carried from outside pixels to inside pixels
  Value out_of_region{}; // error carried from inside pixels out (incl. dropped)
};

template <typename Value, typename Quantize>
DiffusionAudit<Value> audited_diffusion(std::vector<Value> acc, int width, int height,
                                        const holo::DitherKernel& kernel, holo::ScanOrder scan,
                                        int rx0, int ry0, int rx1, int ry1, Quantize&& quantize) {
  DiffusionAudit<Value> audit;
  audit.states.resize(acc.size());
  auto inside = [&](int x, int y) { return x >= rx0 && x <= rx1 && y >= ry0 && y <= ry1; };
  for (int y = 0; y < height; ++y) {
    const bool reversed = scan == holo::ScanOrder::Serpentine && (y & 1);
    int x = reversed ? width - 1 : 0;
    const int step = reversed ? -1 : +1;
    for (int i = 0; i < width; ++i, x += step) {
      const std::size_t idx = static_cast<std::size_t>(y) * width + x;
      const Value err = quantize(acc[idx], audit.states[idx]);
      for (const holo::KernelTap& tap : kernel.taps()) {
        const int tx = x + (reversed ? -tap.dx : tap.dx);
        const int ty = y + tap.dy;
        const Value share = err * tap.weight;
        const bool lands = tx >= 0 && tx < width && ty >= 0 && ty < height;
        if (lands) acc[static_cast<std::size_t>(ty) * width + tx] += share;
        const bool from_inside = inside(x, y);
        const bool to_inside = lands && inside(tx, ty);
        if (from_inside && !to_inside) audit.out_of_region += share;
        if (!from_inside && to_inside) audit.into_region += share;
      }
    }
  }
  return audit;
}

inline DiffusionAudit<double> audited_binary(const std::vector<double>& desired, int width,
                                             int height, const holo::DitherKernel& kernel,
                                             holo::ScanOrder scan, int rx0, int ry0, int rx1,
                                             int ry1) {
  return audited_diffusion<double>(
      desired, width, height, kernel, scan, rx0, ry0, rx1, ry1,
      [](double acc, std::uint16_t& state) {
        state = acc >= 0.5 ? 1 : 0;
        return acc - state;
      });
}

inline DiffusionAudit<holo::cplx> audited_phase(const std::vector<holo::cplx>& desired, int width,
                                                int height, int levels,
                                                const holo::DitherKernel& kernel,
                                                holo::ScanOrder scan, int rx0, int ry0, int rx1,
                                                int ry1) {
  return audited_diffusion<holo::cplx>(
      desired, width, height, kernel, scan, rx0, ry0, rx1, ry1,
      [levels](holo::cplx acc, std::uint16_t& state) {
        const int level = holo::nearest_phase_level(std::arg(acc), levels);
        state = static_cast<std::uint16_t>(level);
        return acc - std::polar(1.0, 2.0 * std::numbers::pi * level / levels);
      });
}

// ---------------------------------------------------------------------------
// Straightforward re-implementations of the figures of merit.
// ---------------------------------------------------------------------------

inline double cv_direct(const std::vector<double>& intensities) {
  const double n = static_cast<double>(intensities.size());
  double mean = 0.0;
  for (double v : intensities) mean += v;
  mean /= n;
  double sq = 0.0;
  for (double v : intensities) sq += (v - mean) * (v - mean);
  return std::sqrt(sq / n) / mean;
}

inline double efficiency_direct(const holo::ComplexField& image,
                                const std::vector<holo::PixelCoord>& traps,
                                double incident_power) {
  double sum = 0.0;
  for (const holo::PixelCoord& p : traps) sum += std::norm(image.at(p.x, p.y));
  return sum / incident_power;
}

// Nearest-rank quantile by counting rather than indexing.
inline double quantile_by_counting(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::size_t need = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  if (need < 1) need = 1;
  std::size_t seen = 0;
  for (double v : values) {
    if (++seen == need) return v;
  }
  return values.back();
}

// ---------------------------------------------------------------------------
// Directly coded Gerchberg-Saxton loop: amplitude replacement everywhere,
// same unit-incident-power convention as the iterative library loop.
// ---------------------------------------------------------------------------

struct GsCapture {
  std::vector<holo::ComplexField> mixed;
  holo::DisplayedHologram displayed;
};

inline GsCapture gerchberg_saxton(const holo::ComplexField& target, const holo::DeviceModel& device,
                                  int iterations) {
  std::vector<double> target_amp(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) target_amp[i] = std::abs(target.data()[i]);
  const double illumination =
      1.0 / std::sqrt(static_cast<double>(target.width()) * target.height());

  GsCapture capture;
  holo::ComplexField image = target;
  for (int it = 0; it < iterations; ++it) {
    const holo::ComplexField hologram = holo::fft_inverse(image);
    capture.displayed = device.kind == holo::DeviceKind::DMD
                            ? holo::round_dmd(hologram)
                            : holo::round_pslm(hologram, device);
    const holo::ComplexField obtained = holo::fft_forward(holo::realize(capture.displayed));
    holo::ComplexField next(target.width(), target.height(), holo::Plane::Image);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const holo::cplx v = obtained.data()[i] * illumination;
      const double phase = (v == 0.0) ? 0.0 : std::arg(v);
      next.data()[i] = std::polar(target_amp[i], phase);
    }
    image = next;
    capture.mixed.push_back(image);
  }
  return capture;
}

} // namespace reference
