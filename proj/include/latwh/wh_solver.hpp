// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "latwh/dispersion.hpp"
#include "latwh/error.hpp"
#include "latwh/lattice_core.hpp"
#include "latwh/spectral.hpp"
#include "latwh/wh_catalog.hpp"

namespace latwh {

enum class ConstantPlacement { Plus, Minus };

struct FactorizationResult {
  CircleFunction plus;      ///< K^+ samples, analytic in |s| < 1
  CircleFunction minus;     ///< K^- samples, analytic in |s| > 1
  CircleFunction log_plus;  ///< non-negative modes of log K
  CircleFunction log_minus; ///< negative modes of log K
  int index = 0;
  double reconstruction_error = 0.0;
  /// Coefficient tail of log K; bounds the aliasing error.
  double aliasing_bound = 0.0;

  cplx eval_plus(cplx s) const { return std::exp(log_plus(s)); }
  cplx eval_minus(cplx s) const { return std::exp(log_minus(s)); }
};

/// Winding number of the sampled curve around the origin.
inline int winding_number(const std::vector<cplx>& k) {
  const double pi = std::acos(-1.0);
  double total = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) total += std::arg(k[(j + 1) % k.size()] / k[j]);
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

inline FactorizationResult log_factorize(const std::vector<cplx>& k,
                                         ConstantPlacement placement = ConstantPlacement::Plus) {
  const int n = static_cast<int>(k.size());
  double kmax = 0.0, kmin = INFINITY;
  for (auto v : k) {
    kmax = std::max(kmax, std::abs(v));
    kmin = std::min(kmin, std::abs(v));
  }
  if (!(kmin > 1e-14 * kmax) || !std::isfinite(kmax))
    throw Error(ErrorCode::KernelVanishesOnContour, "kernel vanishes or is not finite on the contour");
  FactorizationResult r;
  r.index = winding_number(k);
  if (r.index != 0) throw Error(ErrorCode::NonzeroIndex, "kernel has winding number " + std::to_string(r.index));

  std::vector<cplx> logk(n);
  double theta = std::arg(k[0]);
  for (int j = 0; j < n; ++j) {
    if (j > 0) theta += std::arg(k[j] / k[j - 1]);
    logk[j] = cplx(std::log(std::abs(k[j])), theta);
  }
  auto c = fourier_coefficients(logk);
  std::vector<cplx> cp(n, 0.0), cm(n, 0.0);
  for (int idx = 0; idx < n; ++idx) {
    if (idx < n / 2) {
      cp[idx] = c[idx];
    } else {
      cm[idx] = c[idx];
    }
  }
  if (placement == ConstantPlacement::Minus) std::swap(cp[0], cm[0]);
  r.log_plus = CircleFunction::from_coefficients(cp, Analyticity::Plus);
  r.log_minus = CircleFunction::from_coefficients(cm, Analyticity::Minus);
  r.aliasing_bound = CircleFunction(logk, Analyticity::Full).tail_ratio();

  std::vector<cplx> kp(n), km(n);
  for (int j = 0; j < n; ++j) {
    kp[j] = std::exp(r.log_plus.samples()[j]);
    km[j] = std::exp(r.log_minus.samples()[j]);
    r.reconstruction_error = std::max(r.reconstruction_error, std::abs(kp[j] * km[j] - k[j]) / kmax);
  }
  r.plus = CircleFunction(std::move(kp), Analyticity::Plus);
  r.minus = CircleFunction(std::move(km), Analyticity::Minus);
  return r;
}

/// G = G^+ + G^- with G^+ the non-negative modes.
inline std::pair<CircleFunction, CircleFunction> additive_split(const std::vector<cplx>& g,
                                                                double tail_tolerance = 1e-10) {
  const int n = static_cast<int>(g.size());
  CircleFunction whole(g, Analyticity::Full);
  if (whole.tail_ratio() > tail_tolerance)
    throw Error(ErrorCode::SlowCoefficientDecay, "Fourier coefficients do not decay within the mode band");
  std::vector<cplx> cp(n, 0.0), cm(n, 0.0);
  for (int idx = 0; idx < n; ++idx) {
    if (idx < n / 2) {
      cp[idx] = whole.coefficients()[idx];
    } else {
      cm[idx] = whole.coefficients()[idx];
    }
  }
  return {CircleFunction::from_coefficients(std::move(cp), Analyticity::Plus),
          CircleFunction::from_coefficients(std::move(cm), Analyticity::Minus)};
}

enum class BoundaryCondition { Dirichlet, Neumann };

struct SolverDiagnostics {
  int index = 0;
  double factorization_error = 0.0;
  double aliasing_bound = 0.0;
  double split_error = 0.0;
  double forcing_tail = 0.0;
  /// Largest |Psi^-/K^- - G^-| on the contour: the entire function set to zero.
  double entire_part = 0.0;
  /// Max residual of the functional equation at half-shifted contour points.
  double wh_residual_fresh = 0.0;
  /// |Psi^-(s)| |s| at |s| = 10 and 100.
  double minus_decay_10 = 0.0;
  double minus_decay_100 = 0.0;
  /// max |Psi^+| on |s| = 0.5 and 0.9.
  double plus_bound = 0.0;
};

struct HalfPlaneOptions {
  int n_modes = 2048;
  ConstantPlacement placement = ConstantPlacement::Plus;
};

class HalfPlaneSolution {
 public:
  LatticeDispersion disp;
  LatticeIncidence inc;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  FactorizationResult factors;
  CircleFunction psi_plus;
  CircleFunction psi_minus;
  /// Transform of the boundary row of the scattered field over all m.
  CircleFunction boundary;
  SolverDiagnostics diagnostics;

  ProblemSpec problem() const {
    ProblemSpec p;
    p.problem = bc == BoundaryCondition::Dirichlet ? Problem::HalfPlaneDirichlet : Problem::HalfPlaneNeumann;
    p.side = Side::Discrete;
    p.lattice = disp;
    p.lin = inc;
    return p;
  }

  /// u^sc(m, n) for n >= 0 (the upper copy on the plate when n = 0).
  cplx reconstruct_field(int m, int n) const {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
    const int N = boundary.size();
    const double pi = std::acos(-1.0);
    cplx full = 0.0, half = 0.0;
    double scale = 0.0;
    for (int j = 0; j < N; ++j) {
      cplx t = std::polar(1.0, 2.0 * pi * j / N);
      cplx term = boundary.samples()[j] * std::pow(q_[j], n) * std::pow(t, -m);
      full += term;
      if (j % 2 == 0) half += term;
      scale = std::max(scale, std::abs(term));
    }
    full /= static_cast<double>(N);
    half /= static_cast<double>(N / 2);
    if (std::abs(full - half) > 1e-9 * std::max(scale, 1e-300) + 1e-14)
      throw Error(ErrorCode::QuadratureNotConverged, "contour quadrature is not resolved");
    return full;
  }

  /// Field on [m0,m1] x [n0,n1], n0 >= 0, via one FFT per row.
  Field<2> reconstruct_window(int m0, int m1, int n0, int n1) const {
    if (n0 < 0 || m1 < m0 || n1 < n0) throw Error(ErrorCode::InvalidArgument, "bad window");
    const int N = boundary.size();
    if (m1 - m0 >= N / 2) throw Error(ErrorCode::InvalidArgument, "window wider than the mode band");
    Field<2> out;
    std::vector<cplx> row(N);
    for (int n = n0; n <= n1; ++n) {
      for (int j = 0; j < N; ++j) row[j] = boundary.samples()[j] * std::pow(q_[j], n);
      CircleFunction f(row, Analyticity::Full);
      if (f.tail_ratio() > 1e-9) throw Error(ErrorCode::QuadratureNotConverged, "row transform not resolved");
      for (int m = m0; m <= m1; ++m) out.set({m, n}, f.coefficient(m));
    }
    return out;
  }

  void set_q_samples(std::vector<cplx> q) { q_ = std::move(q); }

 private:
  std::vector<cplx> q_;
};

/// Psi^- = K Psi^+ + F on the unit circle for the scalar half-plane problems.
inline HalfPlaneSolution solve_half_plane(const LatticeDispersion& disp, const LatticeIncidence& inc,
                                          BoundaryCondition bc, const HalfPlaneOptions& opt = {}) {
  if (!(disp.ktilde.imag() > 0.0)) throw Error(ErrorCode::InvalidArgument, "Im ktilde must be > 0");
  if (!(std::abs(inc.s_in) > 1.0)) throw Error(ErrorCode::InvalidArgument, "|s_in| must exceed 1");
  CircleContour contour(opt.n_modes);
  const int n = contour.n_modes;
  HalfPlaneSolution sol;
  sol.disp = disp;
  sol.inc = inc;
  sol.bc = bc;
  ProblemSpec p = sol.problem();

  std::vector<cplx> kv(n), fv(n), q(n);
  for (int j = 0; j < n; ++j) {
    SpectralPoint z{contour.point(j)};
    q[j] = q_physical(z.z1, disp);
    kv[j] = kernel(p, z)(0, 0);
    fv[j] = forcing(p, z)(0);
  }
  sol.factors = log_factorize(kv, opt.placement);
  const auto& kp = sol.factors.plus.samples();
  const auto& km = sol.factors.minus.samples();

  std::vector<cplx> g(n);
  for (int j = 0; j < n; ++j) g[j] = fv[j] / km[j];
  auto [gp, gm] = additive_split(g);

  std::vector<cplx> pp(n), pm(n);
  SolverDiagnostics& d = sol.diagnostics;
  for (int j = 0; j < n; ++j) {
    pp[j] = -gp.samples()[j] / kp[j];
    pm[j] = km[j] * gm.samples()[j];
    d.split_error = std::max(d.split_error, std::abs(gp.samples()[j] + gm.samples()[j] - g[j]));
    d.entire_part = std::max(d.entire_part, std::abs(pm[j] / km[j] - gm.samples()[j]));
  }
  sol.psi_plus = CircleFunction(pp, Analyticity::Plus);
  sol.psi_minus = CircleFunction(pm, Analyticity::Minus);

  std::vector<cplx> ub(n);
  for (int j = 0; j < n; ++j) ub[j] = bc == BoundaryCondition::Dirichlet ? pm[j] - fv[j] : pp[j];
  sol.boundary = CircleFunction(std::move(ub), Analyticity::Full);
  sol.set_q_samples(std::move(q));

  d.index = sol.factors.index;
  d.factorization_error = sol.factors.reconstruction_error;
  d.aliasing_bound = sol.factors.aliasing_bound;
  d.forcing_tail = CircleFunction(g, Analyticity::Full).tail_ratio();
  const double pi = std::acos(-1.0);
  for (int j = 0; j < 128; ++j) {
    SpectralPoint z{std::polar(1.0, 2.0 * pi * (j + 0.5) / 128.0)};
    cplx r = wh_residual(p, sol.psi_minus.interpolate(z.z1), sol.psi_plus.interpolate(z.z1), z);
    d.wh_residual_fresh = std::max(d.wh_residual_fresh, std::abs(r));
  }
  for (int j = 0; j < 16; ++j) {
    cplx dir = std::polar(1.0, 2.0 * pi * (j + 0.3) / 16.0);
    d.minus_decay_10 = std::max(d.minus_decay_10, std::abs(sol.psi_minus(10.0 * dir)) * 10.0);
    d.minus_decay_100 = std::max(d.minus_decay_100, std::abs(sol.psi_minus(100.0 * dir)) * 100.0);
    d.plus_bound = std::max({d.plus_bound, std::abs(sol.psi_plus(0.5 * dir)), std::abs(sol.psi_plus(0.9 * dir))});
  }
  return sol;
}

}  // namespace latwh
