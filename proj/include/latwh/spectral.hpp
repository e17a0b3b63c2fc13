// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "latwh/error.hpp"

namespace latwh {

enum class Analyticity { Plus, Minus, Full };

/// N equispaced points t_j = exp(2 pi i j / N) on the unit circle.
struct CircleContour {
  int n_modes;

  explicit CircleContour(int n) : n_modes(n) {
    if (n < 256 || (n & (n - 1)) != 0)
      throw Error(ErrorCode::InvalidArgument, "mode count must be a power of two >= 256");
  }

  cplx point(int j) const { return std::polar(1.0, 2.0 * std::acos(-1.0) * j / n_modes); }

  std::vector<cplx> points() const {
    std::vector<cplx> out(n_modes);
    for (int j = 0; j < n_modes; ++j) out[j] = point(j);
    return out;
  }
};

/// Fourier coefficients c_k of f(t_j) = sum_k c_k t_j^k, stored in FFT order
/// (index k for k < N/2, index N + k for negative k).
inline std::vector<cplx> fourier_coefficients(const std::vector<cplx>& samples) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  std::vector<cplx> in(samples);
  fft.fwd(out, in);
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (auto& c : out) c *= inv;
  return out;
}

inline std::vector<cplx> samples_from_coefficients(const std::vector<cplx>& coeffs) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  std::vector<cplx> in(coeffs);
  fft.inv(out, in);
  const double n = static_cast<double>(coeffs.size());
  for (auto& v : out) v *= n;
  return out;
}

inline int mode_of_index(int idx, int n) { return idx < n / 2 ? idx : idx - n; }

/// Function sampled on the unit circle with an analyticity tag.
class CircleFunction {
 public:
  CircleFunction() = default;

  CircleFunction(std::vector<cplx> samples, Analyticity tag)
      : samples_(std::move(samples)), coeffs_(fourier_coefficients(samples_)), tag_(tag) {}

  static CircleFunction from_coefficients(std::vector<cplx> coeffs, Analyticity tag) {
    CircleFunction f;
    f.samples_ = samples_from_coefficients(coeffs);
    f.coeffs_ = std::move(coeffs);
    f.tag_ = tag;
    return f;
  }

  int size() const { return static_cast<int>(samples_.size()); }
  Analyticity tag() const { return tag_; }
  const std::vector<cplx>& samples() const { return samples_; }
  const std::vector<cplx>& coefficients() const { return coeffs_; }

  cplx coefficient(int mode) const {
    int n = size();
    if (mode < -n / 2 || mode >= n / 2) return 0.0;
    return coeffs_[mode >= 0 ? mode : n + mode];
  }

  /// Largest coefficient magnitude in the outer eighth of the mode band,
  /// relative to the largest coefficient.
  double tail_ratio() const {
    int n = size();
    double peak = 0.0, tail = 0.0;
    for (int idx = 0; idx < n; ++idx) {
      double a = std::abs(coeffs_[idx]);
      peak = std::max(peak, a);
      if (std::abs(mode_of_index(idx, n)) >= n / 2 - n / 8) tail = std::max(tail, a);
    }
    return peak == 0.0 ? 0.0 : tail / peak;
  }

  /// Trigonometric interpolant sum_k c_k s^k; meant for |s| = 1.
  cplx interpolate(cplx s) const {
    int n = size();
    cplx acc = 0.0;
    // Horner in s over non-negative modes, in 1/s over negative ones.
    for (int k = n / 2 - 1; k >= 0; --k) acc = acc * s + coeffs_[k];
    cplx neg = 0.0;
    cplx si = 1.0 / s;
    for (int k = n / 2; k >= 1; --k) neg = neg * si + coeffs_[n - k];
    return acc + neg * si;
  }

  /// Evaluation: on the contour by interpolation; in the analyticity region
  /// by the trapezoidal Cauchy integral, or by the coefficient series close
  /// to the contour where the Cauchy sum loses accuracy.
  cplx operator()(cplx s) const {
    double r = std::abs(s);
    if (std::abs(r - 1.0) < 1e-12) return interpolate(s);
    bool inside = r < 1.0;
    if (tag_ == Analyticity::Full) throw Error(ErrorCode::InvalidArgument, "full function is only defined on the contour");
    if ((tag_ == Analyticity::Plus) != inside)
      throw Error(ErrorCode::InvalidArgument, "point outside the region of analyticity");
    if (std::abs(r - 1.0) < near_band) return interpolate(s);
    int n = size();
    const double pi = std::acos(-1.0);
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
      cplx t = std::polar(1.0, 2.0 * pi * j / n);
      acc += samples_[j] * t / (t - s);
    }
    acc /= static_cast<double>(n);
    return inside ? acc : coeffs_[0] - acc;
  }

  static constexpr double near_band = 0.05;

 private:
  std::vector<cplx> samples_;
  std::vector<cplx> coeffs_;
  Analyticity tag_ = Analyticity::Full;
};

}  // namespace latwh
