// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <algorithm>

#include "latwh/error.hpp"

namespace latwh {

inline constexpr double on_cut_tolerance = 1e-10;

struct ContinuousDispersion {
  cplx k;
};

struct LatticeDispersion {
  cplx ktilde;
  double h = 1.0;
  cplx k2() const { return ktilde * ktilde; }
};

/// Both roots of q + 1/q = -b with |inner| <= |outer|; product is 1.
struct RootPair {
  cplx inner;
  cplx outer;
  bool on_cut;
};

namespace detail {

/// Roots of x^2 + b x + 1 = 0. `scale` bounds the magnitudes summed into b; a
/// discriminant below its rounding error is taken as zero (double root).
inline RootPair reciprocal_roots(cplx b, double scale = 0.0) {
  cplx d2 = b * b - 4.0;
  const double eps = std::numeric_limits<double>::epsilon();
  if (std::abs(d2) <= 64.0 * eps * (std::max(scale, std::abs(b)) + 1.0) * std::abs(b)) d2 = 0.0;
  cplx disc = std::sqrt(d2);
  // Pick the sign without cancellation; the other root follows from q1 q2 = 1.
  cplx big = (std::real(std::conj(b) * disc) >= 0.0) ? (-b - disc) / 2.0 : (-b + disc) / 2.0;
  cplx small = 1.0 / big;
  bool cut = std::abs(std::abs(big) - 1.0) <= on_cut_tolerance;
  return {small, big, cut};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// continuous

/// sqrt(k^2 - xi^2) on the sheet Im >= 0 (real positive on the cut edge).
inline cplx gamma(cplx xi, const ContinuousDispersion& d) {
  cplx g = std::sqrt(d.k * d.k - xi * xi);
  if (g.imag() < 0.0 || (g.imag() == 0.0 && g.real() < 0.0)) g = -g;
  return g;
}

inline cplx gamma_3d(cplx xi1, cplx xi2, const ContinuousDispersion& d) {
  cplx g = std::sqrt(d.k * d.k - xi1 * xi1 - xi2 * xi2);
  if (g.imag() < 0.0 || (g.imag() == 0.0 && g.real() < 0.0)) g = -g;
  return g;
}

inline cplx continuous_dispersion_residual(cplx xi, cplx g, const ContinuousDispersion& d) {
  return -xi * xi - g * g + d.k * d.k;
}

// ---------------------------------------------------------------------------
// lattice, 2D

inline cplx dispersion_residual(cplx s, cplx q, const LatticeDispersion& d) {
  return s + 1.0 / s + q + 1.0 / q + d.k2() - 4.0;
}

inline RootPair q_roots(cplx s, const LatticeDispersion& d) {
  if (s == 0.0) throw Error(ErrorCode::InvalidArgument, "s = 0");
  return detail::reciprocal_roots(d.k2() - 4.0 + s + 1.0 / s,
                                  std::abs(d.k2() - 4.0) + std::abs(s) + std::abs(1.0 / s));
}

/// Physical-sheet root |q| < 1. Throws OnCut when both roots are unimodular.
inline cplx q_physical(cplx s, const LatticeDispersion& d) {
  RootPair r = q_roots(s, d);
  if (r.on_cut) throw Error(ErrorCode::OnCut, "|q| = 1 for both roots");
  return r.inner;
}

/// Reciprocal root on the other sheet.
inline cplx q_other(cplx s, const LatticeDispersion& d) { return 1.0 / q_physical(s, d); }

inline cplx upsilon_from_q(cplx q) { return (q - 1.0 / q) / 2.0; }

inline cplx upsilon(cplx s, const LatticeDispersion& d) { return upsilon_from_q(q_physical(s, d)); }

struct BranchPoints {
  cplx eta11, eta21, eta12, eta22;
  cplx d1, d2;
  std::array<cplx, 4> all() const { return {eta11, eta21, eta12, eta22}; }
};

inline BranchPoints branch_points(const LatticeDispersion& d) {
  BranchPoints bp;
  bp.d1 = d.k2() - 2.0;
  bp.d2 = d.k2() - 6.0;
  const cplx i(0.0, 1.0);
  cplx r1 = std::sqrt(4.0 - bp.d1 * bp.d1);
  cplx r2 = std::sqrt(bp.d2 * bp.d2 - 4.0);
  bp.eta11 = -bp.d1 / 2.0 - i * r1 / 2.0;
  bp.eta21 = -bp.d1 / 2.0 + i * r1 / 2.0;
  bp.eta12 = -bp.d2 / 2.0 + r2 / 2.0;
  bp.eta22 = -bp.d2 / 2.0 - r2 / 2.0;
  return bp;
}

// ---------------------------------------------------------------------------
// lattice, 3D

inline cplx dispersion_residual_3d(cplx s1, cplx s2, cplx q, const LatticeDispersion& d) {
  return s1 + 1.0 / s1 + s2 + 1.0 / s2 + q + 1.0 / q + d.k2() - 6.0;
}

inline RootPair q_roots_3d(cplx s1, cplx s2, const LatticeDispersion& d) {
  if (s1 == 0.0 || s2 == 0.0) throw Error(ErrorCode::InvalidArgument, "s = 0");
  return detail::reciprocal_roots(d.k2() - 6.0 + s1 + 1.0 / s1 + s2 + 1.0 / s2,
                                  std::abs(d.k2() - 6.0) + std::abs(s1) + std::abs(1.0 / s1) + std::abs(s2) +
                                      std::abs(1.0 / s2));
}

inline cplx q_physical_3d(cplx s1, cplx s2, const LatticeDispersion& d) {
  RootPair r = q_roots_3d(s1, s2, d);
  if (r.on_cut) throw Error(ErrorCode::OnCut, "|q| = 1 for both roots");
  return r.inner;
}

inline cplx upsilon_3d(cplx s1, cplx s2, const LatticeDispersion& d) {
  return upsilon_from_q(q_physical_3d(s1, s2, d));
}

// ---------------------------------------------------------------------------
// incidence

/// Incident lattice wave s^{-m} q^{-n} with |s^in| > 1, |q^in| < 1.
struct LatticeIncidence {
  cplx s_in;
  cplx q_in;
  /// Propagation function at s^in.
  cplx upsilon_in() const { return upsilon_from_q(q_in); }
  /// Propagation function with argument q^in: the |root| < 1 of D(q^in, x) = 0 is 1/s^in.
  cplx upsilon_hat_in() const { return (1.0 / s_in - s_in) / 2.0; }
  cplx value(int m, int n) const { return std::pow(s_in, -m) * std::pow(q_in, -n); }
};

inline LatticeIncidence lattice_incidence(cplx s_in, const LatticeDispersion& d) {
  if (!(std::abs(s_in) > 1.0)) throw Error(ErrorCode::InvalidArgument, "|s_in| must exceed 1");
  return {s_in, q_physical(s_in, d)};
}

/// Guided mode q^in = exp(i pi p / N) between rows 0 and N; s^in is the root with |s| > 1.
inline LatticeIncidence lattice_guided_mode(int p, int N, const LatticeDispersion& d) {
  if (N < 1 || p < 1 || p > N) throw Error(ErrorCode::InvalidArgument, "mode index must be in 1..N");
  const double pi = std::acos(-1.0);
  cplx q_in = std::polar(1.0, pi * p / N);
  RootPair r = detail::reciprocal_roots(d.k2() - 4.0 + q_in + 1.0 / q_in);
  if (r.on_cut) throw Error(ErrorCode::OnCut, "guided mode does not decay in s");
  return {r.outer, q_in};
}

struct LatticeIncidence3D {
  cplx s1_in, s2_in, q_in;
  cplx value(int m, int n, int l) const {
    return std::pow(s1_in, -m) * std::pow(s2_in, -n) * std::pow(q_in, -l);
  }
};

inline LatticeIncidence3D lattice_incidence_3d(cplx s1_in, cplx s2_in, const LatticeDispersion& d) {
  if (!(std::abs(s1_in) > 1.0 && std::abs(s2_in) > 1.0))
    throw Error(ErrorCode::InvalidArgument, "|s_in| must exceed 1");
  return {s1_in, s2_in, q_physical_3d(s1_in, s2_in, d)};
}

/// Incident wave exp(-i xi^in x - i gamma^in y).
struct ContinuousIncidence {
  cplx xi_in;
  cplx gamma_in;
};

inline ContinuousIncidence continuous_incidence(double theta, const ContinuousDispersion& d) {
  return {d.k * std::cos(theta), d.k * std::sin(theta)};
}

/// Guided mode with gamma^in = pi n / b.
inline ContinuousIncidence continuous_guided_mode(int n, double b, const ContinuousDispersion& d) {
  const double pi = std::acos(-1.0);
  if (n < 1 || b <= 0.0) throw Error(ErrorCode::InvalidArgument, "mode needs n >= 1, b > 0");
  double g = pi * n / b;
  if (g > std::abs(d.k)) throw Error(ErrorCode::InvalidArgument, "mode is not propagating");
  cplx xi = std::sqrt(d.k * d.k - g * g);
  if (xi.imag() < 0.0) xi = -xi;
  return {xi, g};
}

struct ContinuousIncidence3D {
  cplx xi1_in, xi2_in, xi3_in;
};

}  // namespace latwh
