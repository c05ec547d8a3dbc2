#pragma once

#include <bit>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "holo/field.hpp"

namespace holo {

namespace detail {

// Iterative radix-2 Cooley-Tukey for power-of-two lengths. Unscaled:
// X[k] = sum_j x[j] exp(sign * 2*pi*i * j*k / n).
class Radix2 {
public:
  Radix2(int n, int sign) : n_(n) {
    bitrev_.resize(n_);
    bitrev_[0] = 0;
    for (int i = 1; i < n_; ++i)
      bitrev_[i] = (bitrev_[i >> 1] >> 1) | ((i & 1) ? (n_ >> 1) : 0);
    tw_.reserve(n_ > 1 ? n_ - 1 : 0);
    for (int len = 2; len <= n_; len <<= 1) {
      const int half = len >> 1;
      const double step = sign * 2.0 * std::numbers::pi / len;
      for (int k = 0; k < half; ++k)
        tw_.emplace_back(std::cos(step * k), std::sin(step * k));
    }
  }

  void run(cplx* data) const {
    for (int i = 0; i < n_; ++i) {
      const int j = bitrev_[i];
      if (i < j) std::swap(data[i], data[j]);
    }
    const cplx* w = tw_.data();
    for (int len = 2; len <= n_; len <<= 1) {
      const int half = len >> 1;
      for (int i = 0; i < n_; i += len) {
        cplx* lo = data + i;
        cplx* hi = data + i + half;
        for (int k = 0; k < half; ++k) {
          const double wr = w[k].real(), wi = w[k].imag();
          const double hr = hi[k].real(), hm = hi[k].imag();
          const double tr = hr * wr - hm * wi;
          const double ti = hr * wi + hm * wr;
          const double lr = lo[k].real(), lm = lo[k].imag();
          hi[k] = cplx(lr - tr, lm - ti);
          lo[k] = cplx(lr + tr, lm + ti);
        }
      }
      w += half;
    }
  }

private:
  int n_;
  std::vector<int> bitrev_;
  std::vector<cplx> tw_;
};

// 1D DFT of arbitrary length: radix-2 directly for powers of two,
// Bluestein's chirp-z convolution otherwise.
class Fft1d {
public:
  Fft1d(int n, int sign) : n_(n) {
    if (std::has_single_bit(static_cast<unsigned>(n_))) {
      r2_.emplace(n_, sign);
      return;
    }
    m_ = static_cast<int>(std::bit_ceil(static_cast<unsigned>(2 * n_ - 1)));
    fwd_.emplace(m_, -1);
    inv_.emplace(m_, +1);
    chirp_.resize(n_);
    const std::uint64_t period = 2 * static_cast<std::uint64_t>(n_);
    for (int j = 0; j < n_; ++j) {
      const std::uint64_t j2 = (static_cast<std::uint64_t>(j) * j) % period;
      const double phase = sign * std::numbers::pi * static_cast<double>(j2) / n_;
      chirp_[j] = cplx(std::cos(phase), std::sin(phase));
    }
    kernel_fft_.assign(m_, cplx{});
    kernel_fft_[0] = std::conj(chirp_[0]);
    for (int j = 1; j < n_; ++j) {
      kernel_fft_[j] = std::conj(chirp_[j]);
      kernel_fft_[m_ - j] = std::conj(chirp_[j]);
    }
    fwd_->run(kernel_fft_.data());
  }

  void run(cplx* data) const {
    if (r2_) {
      r2_->run(data);
      return;
    }
    std::vector<cplx> buf(m_, cplx{});
    for (int j = 0; j < n_; ++j) buf[j] = data[j] * chirp_[j];
    fwd_->run(buf.data());
    for (int i = 0; i < m_; ++i) buf[i] *= kernel_fft_[i];
    inv_->run(buf.data());
    const double inv_m = 1.0 / m_;
    for (int k = 0; k < n_; ++k) data[k] = buf[k] * inv_m * chirp_[k];
  }

private:
  int n_;
  std::optional<Radix2> r2_;
  int m_ = 0;
  std::optional<Radix2> fwd_, inv_;
  std::vector<cplx> chirp_;
  std::vector<cplx> kernel_fft_;
};

inline void transpose_into(const cplx* src, int w, int h, cplx* dst) {
  constexpr int block = 32;
  for (int y0 = 0; y0 < h; y0 += block) {
    const int y1 = std::min(y0 + block, h);
    for (int x0 = 0; x0 < w; x0 += block) {
      const int x1 = std::min(x0 + block, w);
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x)
          dst[static_cast<std::size_t>(x) * h + y] = src[static_cast<std::size_t>(y) * w + x];
    }
  }
}

// Centered unitary 2D transform: the DC sample sits at pixel
// (w/2, h/2) on both sides. Implemented as gather (inverse shift),
// row FFTs, transpose, column FFTs, and a scatter (forward shift)
// fused with the 1/sqrt(w*h) normalisation.
inline ComplexField fft2_centered(const ComplexField& in, int sign, Plane out_plane) {
  const int w = in.width(), h = in.height();
  const int cx = w / 2, cy = h / 2;
  std::vector<cplx> buf(in.size());
  for (int y = 0; y < h; ++y) {
    const int sy = (y + cy < h) ? y + cy : y + cy - h;
    const cplx* src = in.data() + static_cast<std::size_t>(sy) * w;
    cplx* dst = buf.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const int sx = (x + cx < w) ? x + cx : x + cx - w;
      dst[x] = src[sx];
    }
  }

  const Fft1d row_plan(w, sign);
  for (int y = 0; y < h; ++y) row_plan.run(buf.data() + static_cast<std::size_t>(y) * w);

  std::vector<cplx> tbuf(in.size());
  transpose_into(buf.data(), w, h, tbuf.data());

  std::optional<Fft1d> col_store;
  const Fft1d& col_plan = (h == w) ? row_plan : col_store.emplace(h, sign);
  for (int x = 0; x < w; ++x) col_plan.run(tbuf.data() + static_cast<std::size_t>(x) * h);

  ComplexField out(w, h, out_plane);
  const double scale = 1.0 / std::sqrt(static_cast<double>(in.size()));
  cplx* o = out.data();
  for (int x = 0; x < w; ++x) {
    const int ux = (x + cx < w) ? x + cx : x + cx - w;
    const cplx* src = tbuf.data() + static_cast<std::size_t>(x) * h;
    for (int y = 0; y < h; ++y) {
      const int uy = (y + cy < h) ? y + cy : y + cy - h;
      o[static_cast<std::size_t>(uy) * w + ux] = src[y] * scale;
    }
  }
  return out;
}

} // namespace detail

/// Hologram plane -> image plane. Unitary (power preserving), DC at the
/// array centre, forward kernel exp(-2*pi*i * x*u / n) per axis with both
/// coordinates measured from the centre pixel (floor(w/2), floor(h/2)).
inline ComplexField fft_forward(const ComplexField& hologram) {
  return detail::fft2_centered(hologram, -1, Plane::Image);
}

/// Image plane -> hologram plane; exact inverse of fft_forward.
inline ComplexField fft_inverse(const ComplexField& image) {
  return detail::fft2_centered(image, +1, Plane::Hologram);
}

} // namespace holo
