// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latwh/dispersion.hpp"
#include "latwh/error.hpp"

namespace latwh {

using KernelValue = Eigen::MatrixXcd;
using ForcingValue = Eigen::VectorXcd;

enum class Problem {
  HalfPlaneDirichlet,
  HalfPlaneNeumann,
  HalfPlaneNeumannElastic,
  SoftHardHalfPlane,
  RightAngledWedge,
  FiniteStrip,
  StaggeredWaveguide,
  StripInWaveguide,
  QuarterPlane,
};

enum class Side { Discrete, Continuous };

inline constexpr Problem all_problems[] = {
    Problem::HalfPlaneDirichlet, Problem::HalfPlaneNeumann,   Problem::HalfPlaneNeumannElastic,
    Problem::SoftHardHalfPlane,  Problem::RightAngledWedge,   Problem::FiniteStrip,
    Problem::StaggeredWaveguide, Problem::StripInWaveguide,   Problem::QuarterPlane,
};

inline const char* to_string(Problem p) {
  switch (p) {
    case Problem::HalfPlaneDirichlet: return "half-plane-dirichlet";
    case Problem::HalfPlaneNeumann: return "half-plane-neumann";
    case Problem::HalfPlaneNeumannElastic: return "half-plane-neumann-elastic";
    case Problem::SoftHardHalfPlane: return "soft-hard";
    case Problem::RightAngledWedge: return "wedge";
    case Problem::FiniteStrip: return "strip";
    case Problem::StaggeredWaveguide: return "staggered";
    case Problem::StripInWaveguide: return "strip-in-waveguide";
    case Problem::QuarterPlane: return "quarter-plane";
  }
  return "unknown";
}

inline Problem parse_problem(std::string_view name) {
  for (Problem p : all_problems)
    if (name == to_string(p)) return p;
  throw Error(ErrorCode::InvalidArgument, "unknown problem '" + std::string(name) + "'");
}

inline const char* to_string(Side s) { return s == Side::Discrete ? "discrete" : "continuous"; }

inline Side parse_side(std::string_view name) {
  if (name == "discrete") return Side::Discrete;
  if (name == "continuous") return Side::Continuous;
  throw Error(ErrorCode::InvalidArgument, "side must be discrete or continuous");
}

inline int kernel_size(Problem p) {
  switch (p) {
    case Problem::SoftHardHalfPlane:
    case Problem::FiniteStrip:
    case Problem::StaggeredWaveguide:
    case Problem::StripInWaveguide: return 2;
    case Problem::RightAngledWedge: return 3;
    default: return 1;
  }
}

inline bool is_3d(Problem p) { return p == Problem::QuarterPlane; }

/// Problem data. Discrete problems use M, N, L, `lattice` and the lattice
/// incidence; continuous ones use a, b, `continuum` and the continuous incidence.
struct ProblemSpec {
  Problem problem = Problem::HalfPlaneDirichlet;
  Side side = Side::Discrete;
  int M = 0, N = 0, L = 0;
  double a = 0.0, b = 0.0;
  LatticeDispersion lattice{cplx(1.0, 0.1)};
  ContinuousDispersion continuum{cplx(1.0, 0.1)};
  LatticeIncidence lin{};
  LatticeIncidence3D lin3{};
  ContinuousIncidence cin{};
  ContinuousIncidence3D cin3{};
};

/// Spectral variable: s or xi, plus the second variable of the quarter-plane.
struct SpectralPoint {
  cplx z1;
  cplx z2{};
};

inline void validate(const ProblemSpec& p) {
  bool d = p.side == Side::Discrete;
  auto need = [](bool ok, const char* msg) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, msg);
  };
  switch (p.problem) {
    case Problem::FiniteStrip:
      need(d ? p.M >= 1 : p.a > 0.0, "strip needs M >= 1 / a > 0");
      break;
    case Problem::StaggeredWaveguide:
      need(d ? (p.M >= 0 && p.N >= 1) : (p.a >= 0.0 && p.b > 0.0), "staggered needs M >= 0, N >= 1 / a >= 0, b > 0");
      break;
    case Problem::StripInWaveguide:
      need(d ? (p.L >= 1 && p.L < p.N) : (p.a > 0.0 && p.a < p.b), "strip in waveguide needs 0 < L < N / 0 < a < b");
      break;
    case Problem::HalfPlaneNeumannElastic:
      need(d, "elastic variant is lattice-only");
      break;
    default: break;
  }
  if (d) {
    need(p.lattice.ktilde.imag() >= 0.0, "Im ktilde must be >= 0");
  } else {
    need(p.continuum.k.imag() >= 0.0, "Im k must be >= 0");
  }
}

// ---------------------------------------------------------------------------
// direct kernels and forcings

namespace detail {

inline void check_nonzero(cplx v, ErrorCode code, const char* what) {
  if (std::abs(v) < 1e-14) throw Error(code, what);
}

inline cplx propagation(const ProblemSpec& p, const SpectralPoint& z) {
  if (p.side == Side::Discrete) {
    return is_3d(p.problem) ? upsilon_3d(z.z1, z.z2, p.lattice) : upsilon(z.z1, p.lattice);
  }
  const cplx i(0.0, 1.0);
  return is_3d(p.problem) ? i * gamma_3d(z.z1, z.z2, p.continuum) : i * gamma(z.z1, p.continuum);
}

}  // namespace detail

inline KernelValue kernel(const ProblemSpec& p, const SpectralPoint& z) {
  const cplx i(0.0, 1.0);
  KernelValue K(kernel_size(p.problem), kernel_size(p.problem));
  if (p.side == Side::Discrete) {
    const cplx s = z.z1;
    if (p.problem == Problem::HalfPlaneNeumannElastic) {
      cplx q = q_physical(s, p.lattice);
      K(0, 0) = s + 1.0 / s + q + p.lattice.k2() - 3.0;
      return K;
    }
    const cplx Y = detail::propagation(p, z);
    const cplx q = is_3d(p.problem) ? cplx{} : q_physical(s, p.lattice);
    switch (p.problem) {
      case Problem::HalfPlaneDirichlet:
      case Problem::QuarterPlane:
        detail::check_nonzero(Y, ErrorCode::KernelSingular, "propagation function vanishes");
        K(0, 0) = 1.0 / Y;
        break;
      case Problem::HalfPlaneNeumann: K(0, 0) = Y; break;
      case Problem::SoftHardHalfPlane:
        detail::check_nonzero(Y, ErrorCode::KernelSingular, "propagation function vanishes");
        K << 0.5, 0.5 * Y, -0.5 / Y, 0.5;
        break;
      case Problem::RightAngledWedge:
        detail::check_nonzero(Y, ErrorCode::KernelSingular, "propagation function vanishes");
        K << 0.0, 2.0 * Y, -2.0 * Y * Y, Y, Y, Y * Y, -1.0, 1.0, Y;
        K *= -1.0 / (2.0 * Y);
        break;
      case Problem::FiniteStrip: {
        detail::check_nonzero(Y, ErrorCode::KernelSingular, "propagation function vanishes");
        cplx s2M = std::pow(s, 2 * p.M);
        K << -s2M, 1.0 / Y, 0.0, 1.0 / s2M;
        break;
      }
      case Problem::StaggeredWaveguide: {
        cplx sM = std::pow(s, p.M), qN = std::pow(q, p.N);
        K << 1.0, sM * qN, qN / sM, 1.0;
        K *= Y / 2.0;
        break;
      }
      case Problem::StripInWaveguide: {
        auto qp = [&](int e) { return std::pow(q, e); };
        cplx den = Y * (qp(p.N) - qp(-p.N));
        detail::check_nonzero(den, ErrorCode::KernelSingular, "waveguide resonance");
        cplx c = qp(2 * p.L - p.N) - qp(p.N - 2 * p.L);
        K << -Y * c, (qp(p.L) + qp(-p.L)) * (qp(p.N - p.L) + qp(p.L - p.N)),
            Y * Y * (qp(p.L) - qp(-p.L)) * (qp(p.N - p.L) - qp(p.L - p.N)), Y * c;
        K /= den;
        break;
      }
      default: break;
    }
    return K;
  }

  const cplx xi = z.z1;
  switch (p.problem) {
    case Problem::HalfPlaneNeumannElastic:
      throw Error(ErrorCode::NotApplicable, "elastic variant has no continuous counterpart");
    case Problem::HalfPlaneDirichlet:
    case Problem::QuarterPlane: {
      cplx t = detail::propagation(p, z);
      detail::check_nonzero(t, ErrorCode::KernelSingular, "branch point");
      K(0, 0) = 1.0 / t;
      break;
    }
    case Problem::HalfPlaneNeumann: K(0, 0) = i * gamma(xi, p.continuum); break;
    case Problem::SoftHardHalfPlane: {
      cplx t = i * gamma(xi, p.continuum);
      detail::check_nonzero(t, ErrorCode::KernelSingular, "branch point");
      K << 0.5, 0.5 * t, -0.5 / t, 0.5;
      break;
    }
    case Problem::RightAngledWedge: {
      cplx g = gamma(xi, p.continuum);
      detail::check_nonzero(g, ErrorCode::KernelSingular, "branch point");
      K << 0.0, 2.0 * i * g, 2.0 * g * g, i * g, i * g, -g * g, -1.0, 1.0, i * g;
      K *= i / (2.0 * g);
      break;
    }
    case Problem::FiniteStrip: {
      cplx g = gamma(xi, p.continuum);
      detail::check_nonzero(g, ErrorCode::KernelSingular, "branch point");
      cplx e = std::exp(2.0 * i * xi * p.a);
      K << -e, 1.0 / (i * g), 0.0, 1.0 / e;
      break;
    }
    case Problem::StaggeredWaveguide: {
      cplx g = gamma(xi, p.continuum);
      K << 1.0, std::exp(i * xi * p.a + i * g * p.b), std::exp(-i * xi * p.a + i * g * p.b), 1.0;
      K *= i * g / 2.0;
      break;
    }
    case Problem::StripInWaveguide: {
      cplx g = gamma(xi, p.continuum);
      const double a = p.a, b = p.b;
      cplx den = g * std::sin(g * b);
      detail::check_nonzero(den, ErrorCode::KernelSingular, "waveguide resonance");
      K << g * std::sin(g * (2.0 * a - b)), 2.0 * std::cos(g * a) * std::cos(g * (b - a)),
          2.0 * g * g * std::sin(g * a) * std::sin(g * (b - a)), -g * std::sin(g * (2.0 * a - b));
      K *= -1.0 / den;
      break;
    }
  }
  return K;
}

inline ForcingValue forcing(const ProblemSpec& p, const SpectralPoint& z) {
  const cplx i(0.0, 1.0);
  ForcingValue F(kernel_size(p.problem));
  if (p.side == Side::Discrete) {
    const cplx s = z.z1;
    const cplx sin_ = p.lin.s_in;
    const cplx Yin = p.lin.upsilon_in();
    if (p.problem == Problem::QuarterPlane) {
      cplx d = (1.0 - z.z1 / p.lin3.s1_in) * (1.0 - z.z2 / p.lin3.s2_in);
      detail::check_nonzero(d, ErrorCode::AtIncidencePole, "incidence pole");
      F(0) = 1.0 / d;
      return F;
    }
    if (p.problem == Problem::StripInWaveguide) {
      const cplx q = q_physical(s, p.lattice), Y = upsilon_from_q(q);
      const cplx qin = p.lin.q_in, Yhat = p.lin.upsilon_hat_in();
      auto qp = [&](int e) { return std::pow(q, e); };
      auto qi = [&](int e) { return std::pow(qin, e); };
      const int N = p.N, L = p.L;
      cplx poles = (1.0 - q / qin) * (1.0 - q * qin);
      detail::check_nonzero(poles, ErrorCode::AtIncidencePole, "incidence pole");
      cplx wg = qp(N) - qp(-N);
      detail::check_nonzero(wg * Y, ErrorCode::KernelSingular, "waveguide resonance");
      cplx t1 = -Yhat * (qi(L - N) + qi(N - L)) * (qp(L) - qp(-L)) / (2.0 * wg * poles);
      cplx t2 = Yhat * Yin * ((qp(L) + qp(-L)) * (qi(L - N) - qi(N - L)) + 2.0 * (qi(N) + qi(-N))) /
                (2.0 * Y * wg * poles);
      cplx f = t1 + t2;
      F << f * (qp(N - L) + qp(L - N)), -f * Y * (qp(N - L) - qp(L - N));
      return F;
    }
    const cplx r1 = 1.0 - s / sin_;
    detail::check_nonzero(r1, ErrorCode::AtIncidencePole, "incidence pole");
    switch (p.problem) {
      case Problem::HalfPlaneDirichlet: F(0) = 1.0 / r1; break;
      case Problem::HalfPlaneNeumann: F(0) = -Yin / r1; break;
      case Problem::HalfPlaneNeumannElastic:
        F(0) = (sin_ + 1.0 / sin_ + p.lin.q_in + p.lattice.k2() - 3.0) / r1;
        break;
      case Problem::SoftHardHalfPlane: {
        cplx Y = upsilon(s, p.lattice);
        F << Y + Yin, Yin / Y - 1.0;
        F *= -1.0 / (2.0 * r1);
        break;
      }
      case Problem::RightAngledWedge: {
        cplx Y = upsilon(s, p.lattice);
        cplx r2 = 1.0 - s * sin_;
        detail::check_nonzero(r2, ErrorCode::AtIncidencePole, "reflected incidence pole");
        F << 2.0 / r2, 1.0 / r1, -1.0 / (r1 * Y);
        F *= Yin;
        break;
      }
      case Problem::FiniteStrip: F << std::pow(sin_, p.M) / r1, 0.0; break;
      case Problem::StaggeredWaveguide:
        F << std::pow(sin_, p.M), std::pow(p.lin.q_in, p.N);
        F *= -Yin / r1;
        break;
      default: break;
    }
    return F;
  }

  const cplx xi = z.z1;
  const cplx xin = p.cin.xi_in, gin = p.cin.gamma_in;
  if (p.problem == Problem::QuarterPlane) {
    cplx d = (z.z1 - p.cin3.xi1_in) * (z.z2 - p.cin3.xi2_in);
    detail::check_nonzero(d, ErrorCode::AtIncidencePole, "incidence pole");
    F(0) = -1.0 / d;
    return F;
  }
  if (p.problem == Problem::HalfPlaneNeumannElastic)
    throw Error(ErrorCode::NotApplicable, "elastic variant has no continuous counterpart");
  const cplx g = gamma(xi, p.continuum);
  if (p.problem == Problem::StripInWaveguide) {
    const double a = p.a, b = p.b;
    cplx den = g * std::sin(g * b) * (g - gin) * (g + gin);
    detail::check_nonzero(den, ErrorCode::AtIncidencePole, "incidence pole or resonance");
    cplx f = 2.0 * i * xin *
             (g * std::cos(gin * (a - b)) * std::sin(a * g) -
              gin * (std::cos(g * a) * std::sin(gin * (a - b)) + std::sin(gin * b))) /
             den;
    F << f * std::cos(g * (b - a)), f * g * std::sin(g * (b - a));
    return F;
  }
  const cplx d1 = xi - xin;
  detail::check_nonzero(d1, ErrorCode::AtIncidencePole, "incidence pole");
  switch (p.problem) {
    case Problem::HalfPlaneDirichlet: F(0) = i / d1; break;
    case Problem::HalfPlaneNeumann: F(0) = gin / d1; break;
    case Problem::SoftHardHalfPlane:
      F << g + gin, i - i * gin / g;
      F /= 2.0 * d1;
      break;
    case Problem::RightAngledWedge: {
      cplx d2 = xi + xin;
      detail::check_nonzero(d2, ErrorCode::AtIncidencePole, "reflected incidence pole");
      F << 2.0 / d2, 1.0 / d1, i / (d1 * g);
      F *= -gin;
      break;
    }
    case Problem::FiniteStrip: F << i * std::exp(i * xin * p.a) / d1, 0.0; break;
    case Problem::StaggeredWaveguide:
      F << std::exp(i * xin * p.a), std::exp(i * gin * p.b);
      F *= gin / d1;
      break;
    default: break;
  }
  return F;
}

// ---------------------------------------------------------------------------
// generating functions

/// Number of arguments of the generating kernel / forcing; 0 when none exists.
inline int kernel_arity(Problem p) {
  switch (p) {
    case Problem::HalfPlaneNeumannElastic: return 0;
    case Problem::FiniteStrip: return 2;
    case Problem::StaggeredWaveguide:
    case Problem::StripInWaveguide: return 3;
    default: return 1;
  }
}

inline int forcing_arity(Problem p) {
  switch (p) {
    case Problem::HalfPlaneDirichlet:
    case Problem::QuarterPlane: return 1;
    case Problem::HalfPlaneNeumann:
    case Problem::FiniteStrip: return 2;
    case Problem::SoftHardHalfPlane: return 3;
    case Problem::RightAngledWedge:
    case Problem::StaggeredWaveguide: return 4;
    default: return 0;
  }
}

inline KernelValue generating_kernel(Problem p, std::span<const cplx> t) {
  int arity = kernel_arity(p);
  if (arity == 0) throw Error(ErrorCode::NotApplicable, "no generating kernel for this problem");
  if (static_cast<int>(t.size()) != arity) throw Error(ErrorCode::ArityMismatch, "wrong number of arguments");
  int n = kernel_size(p);
  KernelValue K(n, n);
  switch (p) {
    case Problem::HalfPlaneDirichlet:
    case Problem::QuarterPlane: K(0, 0) = 1.0 / t[0]; break;
    case Problem::HalfPlaneNeumann: K(0, 0) = t[0]; break;
    case Problem::SoftHardHalfPlane: K << 1.0, t[0], -1.0 / t[0], 1.0; K *= 0.5; break;
    case Problem::RightAngledWedge: {
      cplx x = t[0];
      K << 0.0, 2.0 * x, -2.0 * x * x, x, x, x * x, -1.0, 1.0, x;
      K *= -1.0 / (2.0 * x);
      break;
    }
    case Problem::FiniteStrip: K << -t[1], 1.0 / t[0], 0.0, 1.0 / t[1]; break;
    case Problem::StaggeredWaveguide:
      K << 1.0, t[1] * t[2], t[2] / t[1], 1.0;
      K *= t[0] / 2.0;
      break;
    case Problem::StripInWaveguide: {
      const cplx t1 = t[0], t2 = t[1], t3 = t[2];
      cplx c = t3 * t3 / t2 - t2 / (t3 * t3);
      K << -t1 * c, (t3 + 1.0 / t3) * (t2 / t3 + t3 / t2), t1 * t1 * (t3 - 1.0 / t3) * (t2 / t3 - t3 / t2),
          t1 * c;
      K /= t1 * (t2 - 1.0 / t2);
      break;
    }
    default: break;
  }
  return K;
}

inline ForcingValue generating_forcing(Problem p, std::span<const cplx> t) {
  int arity = forcing_arity(p);
  if (arity == 0) throw Error(ErrorCode::NotApplicable, "no generating forcing for this problem");
  if (static_cast<int>(t.size()) != arity) throw Error(ErrorCode::ArityMismatch, "wrong number of arguments");
  ForcingValue F(kernel_size(p));
  switch (p) {
    case Problem::HalfPlaneDirichlet:
    case Problem::QuarterPlane: F(0) = 1.0 / t[0]; break;
    case Problem::HalfPlaneNeumann: F(0) = -t[1] / t[0]; break;
    case Problem::SoftHardHalfPlane:
      F << t[1] + t[2], t[2] / t[1] - 1.0;
      F *= -1.0 / (2.0 * t[0]);
      break;
    case Problem::RightAngledWedge:
      F << 2.0 / t[1], 1.0 / t[0], -1.0 / (t[0] * t[2]);
      F *= t[3];
      break;
    case Problem::FiniteStrip: F << t[1] / t[0], 0.0; break;
    case Problem::StaggeredWaveguide:
      F << t[2], t[3];
      F *= -t[0] / t[1];
      break;
    default: break;
  }
  return F;
}

/// Arguments of the generating kernel at z, bound by role: propagation
/// function, horizontal shift, vertical shift.
inline std::vector<cplx> kernel_args(const ProblemSpec& p, const SpectralPoint& z) {
  const cplx i(0.0, 1.0);
  bool d = p.side == Side::Discrete;
  cplx t = detail::propagation(p, z);
  switch (p.problem) {
    case Problem::HalfPlaneNeumannElastic:
      throw Error(ErrorCode::NotApplicable, "no generating kernel for this problem");
    case Problem::FiniteStrip:
      return {t, d ? std::pow(z.z1, 2 * p.M) : std::exp(2.0 * i * z.z1 * p.a)};
    case Problem::StaggeredWaveguide:
      if (d) return {t, std::pow(z.z1, p.M), std::pow(q_physical(z.z1, p.lattice), p.N)};
      return {t, std::exp(i * z.z1 * p.a), std::exp(t * p.b)};
    case Problem::StripInWaveguide:
      if (d) {
        cplx q = q_physical(z.z1, p.lattice);
        return {t, std::pow(q, p.N), std::pow(q, p.L)};
      }
      return {t, std::exp(t * p.b), std::exp(t * p.a)};
    default: return {t};
  }
}

inline std::vector<cplx> forcing_args(const ProblemSpec& p, const SpectralPoint& z) {
  const cplx i(0.0, 1.0);
  if (forcing_arity(p.problem) == 0) throw Error(ErrorCode::NotApplicable, "no generating forcing for this problem");
  if (p.side == Side::Discrete) {
    const cplx s = z.z1, sin_ = p.lin.s_in;
    if (p.problem == Problem::QuarterPlane)
      return {(1.0 - z.z1 / p.lin3.s1_in) * (1.0 - z.z2 / p.lin3.s2_in)};
    const cplx r1 = 1.0 - s / sin_, Yin = p.lin.upsilon_in();
    switch (p.problem) {
      case Problem::HalfPlaneNeumann: return {r1, Yin};
      case Problem::SoftHardHalfPlane: return {r1, upsilon(s, p.lattice), Yin};
      case Problem::RightAngledWedge: return {r1, 1.0 - s * sin_, upsilon(s, p.lattice), Yin};
      case Problem::FiniteStrip: return {r1, std::pow(sin_, p.M)};
      case Problem::StaggeredWaveguide: return {Yin, r1, std::pow(sin_, p.M), std::pow(p.lin.q_in, p.N)};
      default: return {r1};
    }
  }
  const cplx xi = z.z1, xin = p.cin.xi_in, gin = p.cin.gamma_in;
  if (p.problem == Problem::QuarterPlane)
    return {(i * z.z1 - i * p.cin3.xi1_in) * (i * z.z2 - i * p.cin3.xi2_in)};
  const cplx r1 = i * xin - i * xi;
  switch (p.problem) {
    case Problem::HalfPlaneNeumann: return {r1, i * gin};
    case Problem::SoftHardHalfPlane: return {r1, i * gamma(xi, p.continuum), i * gin};
    case Problem::RightAngledWedge: return {r1, -i * xin - i * xi, i * gamma(xi, p.continuum), i * gin};
    case Problem::FiniteStrip: return {r1, std::exp(i * xin * p.a)};
    case Problem::StaggeredWaveguide: return {i * gin, r1, std::exp(i * xin * p.a), std::exp(i * gin * p.b)};
    default: return {r1};
  }
}

enum class AnalogyPart { Kernel, Forcing };

/// Max-norm of the difference between the direct formula and the generating function.
inline double analogy_residual(const ProblemSpec& p, const SpectralPoint& z, AnalogyPart part) {
  if (part == AnalogyPart::Kernel) {
    auto args = kernel_args(p, z);
    return (kernel(p, z) - generating_kernel(p.problem, args)).cwiseAbs().maxCoeff();
  }
  auto args = forcing_args(p, z);
  return (forcing(p, z) - generating_forcing(p.problem, args)).cwiseAbs().maxCoeff();
}

/// Default contour samples: unit circle (discrete) or a real segment (continuous).
/// Quarter-plane samples form a near-square torus/grid.
inline std::vector<SpectralPoint> default_samples(const ProblemSpec& p, int count) {
  const double pi = std::acos(-1.0);
  std::vector<SpectralPoint> out;
  if (is_3d(p.problem)) {
    int side = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(count)))));
    for (int j = 0; j < side; ++j)
      for (int k = 0; k < side; ++k) {
        if (p.side == Side::Discrete) {
          out.push_back({std::polar(1.0, 2.0 * pi * (j + 0.25) / side), std::polar(1.0, 2.0 * pi * (k + 0.5) / side)});
        } else {
          double span = 3.0 * std::abs(p.continuum.k);
          out.push_back({cplx(-span + 2.0 * span * (j + 0.5) / side), cplx(-span + 2.0 * span * (k + 0.5) / side)});
        }
      }
    return out;
  }
  for (int j = 0; j < count; ++j) {
    if (p.side == Side::Discrete) {
      out.push_back({std::polar(1.0, 2.0 * pi * (j + 0.5) / count)});
    } else {
      double span = 3.0 * std::abs(p.continuum.k);
      out.push_back({cplx(-span + 2.0 * span * (j + 0.5) / count)});
    }
  }
  return out;
}

struct AnalogyReport {
  int samples = 0;
  double kernel_max = 0.0;
  /// Negative when the forcing has no generating function.
  double forcing_max = -1.0;
  double max_residual() const { return std::max(kernel_max, forcing_max); }
};

inline AnalogyReport analogy_report(const ProblemSpec& p, const std::vector<SpectralPoint>& samples) {
  AnalogyReport r;
  r.samples = static_cast<int>(samples.size());
  bool with_forcing = forcing_arity(p.problem) > 0;
  if (with_forcing) r.forcing_max = 0.0;
  for (const auto& z : samples) {
    r.kernel_max = std::max(r.kernel_max, analogy_residual(p, z, AnalogyPart::Kernel));
    if (with_forcing) r.forcing_max = std::max(r.forcing_max, analogy_residual(p, z, AnalogyPart::Forcing));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Khrapkov structure

/// Ascending coefficients.
struct Polynomial {
  std::vector<cplx> coeffs;

  int degree() const {
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j)
      if (coeffs[j] != 0.0) return j;
    return -1;
  }

  cplx operator()(cplx x) const {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial c;
    if (a.coeffs.empty() || b.coeffs.empty()) return c;
    c.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) c.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return c;
  }

  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    if (a.coeffs.size() < b.coeffs.size()) a.coeffs.resize(b.coeffs.size(), 0.0);
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) a.coeffs[j] -= b.coeffs[j];
    return a;
  }
};

/// K = a I + b J with J^2 = Delta I and polynomial Delta.
struct KhrapkovParts {
  cplx a;
  cplx b;
  KernelValue J;
};

/// Deviator polynomial of the soft/hard kernel: k^2 - xi^2 in xi, or
/// -((s^2 + (k~^2 - 4)s + 1)^2 - 4s^2) = -4 s^2 Upsilon^2 in s.
inline Polynomial deviator_polynomial(const ProblemSpec& p) {
  if (p.problem != Problem::SoftHardHalfPlane)
    throw Error(ErrorCode::NotKhrapkov, "only the soft/hard kernel is handled");
  if (p.side == Side::Continuous) {
    cplx k = p.continuum.k;
    return Polynomial{{k * k, 0.0, -1.0}};
  }
  Polynomial c{{1.0, p.lattice.k2() - 4.0, 1.0}};
  Polynomial sq = c * c - Polynomial{{0.0, 0.0, 4.0}};
  for (auto& x : sq.coeffs) x = -x;
  return sq;
}

inline KhrapkovParts khrapkov_parts(const ProblemSpec& p, const SpectralPoint& z) {
  if (p.problem != Problem::SoftHardHalfPlane)
    throw Error(ErrorCode::NotKhrapkov, "only the soft/hard kernel is handled");
  const cplx i(0.0, 1.0);
  KhrapkovParts r;
  r.a = 0.5;
  r.J.resize(2, 2);
  if (p.side == Side::Continuous) {
    cplx xi = z.z1, k = p.continuum.k;
    r.J << 0.0, -(k * k - xi * xi), -1.0, 0.0;
    r.b = 1.0 / (2.0 * i * gamma(xi, p.continuum));
  } else {
    cplx s = z.z1;
    cplx P = -deviator_polynomial(p)(s);
    r.J << 0.0, P / (2.0 * s), -2.0 * s, 0.0;
    r.b = 1.0 / (4.0 * s * upsilon(s, p.lattice));
  }
  return r;
}

// ---------------------------------------------------------------------------
// functional equation residual

inline Eigen::VectorXcd wh_residual(const ProblemSpec& p, const Eigen::VectorXcd& psi_minus,
                                    const Eigen::VectorXcd& psi_plus, const SpectralPoint& z) {
  int n = kernel_size(p.problem);
  if (psi_minus.size() != n || psi_plus.size() != n)
    throw Error(ErrorCode::ArityMismatch, "spectral vector size does not match the kernel");
  return psi_minus - kernel(p, z) * psi_plus - forcing(p, z);
}

inline cplx wh_residual(const ProblemSpec& p, cplx psi_minus, cplx psi_plus, const SpectralPoint& z) {
  Eigen::VectorXcd a(1), b(1);
  a(0) = psi_minus;
  b(0) = psi_plus;
  return wh_residual(p, a, b, z)(0);
}

/// Wedge spectral vectors from the one-sided sums W^+(s), W^-(s), U^-(s),
/// each supplied as a callable.
template <class Fwp, class Fwm, class Fum>
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> wedge_spectra(Fwp&& w_plus, Fwm&& w_minus, Fum&& u_minus, cplx s) {
  Eigen::VectorXcd minus(3), plus(3);
  minus << -w_plus(1.0 / s), w_minus(s), u_minus(s);
  plus << w_plus(s), -w_minus(1.0 / s), -u_minus(1.0 / s);
  return {minus, plus};
}

}  // namespace latwh
