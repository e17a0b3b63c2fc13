// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "latwh/dispersion.hpp"
#include "latwh/error.hpp"
#include "latwh/lattice_core.hpp"
#include "latwh/wh_catalog.hpp"

namespace latwh {

/// Node copy: side 0 for ordinary nodes, +1 / -1 for the upper / lower copy
/// of a duplicated plate node.
struct NodeCopy {
  int m, n, side;
};

/// Boundary-value problem on the cell complex [-R,R] x [n_lo,R]. Plate nodes
/// are duplicated: cells above a plate row use the upper copy, cells below the
/// lower one. The outer box is fixed to zero except the bottom row of a
/// half-space (n_lo = 0), which carries natural rows.
struct LatticeBVP2D {
  int R = 8;
  int n_lo = -8;
  cplx k2{1.0, 0.0};
  std::set<Node<2>> plate;
  /// Prescribed scattered-field value, if the copy is a Dirichlet node.
  std::function<std::optional<cplx>(const NodeCopy&)> dirichlet;
  /// Right-hand side of a free row (zero in the bulk).
  std::function<cplx(const NodeCopy&)> natural_rhs;
};

class LatticeSolution2D {
 public:
  int R = 0, n_lo = 0;
  cplx k2;
  Field<2> field;  ///< ordinary nodes and upper copies
  Field<2> lower;  ///< lower copies of plate nodes
  std::set<Node<2>> plate;
  std::set<Node<2>> prescribed;  ///< nodes carrying Dirichlet data inside the box
  double algebraic_residual = 0.0;
  int unknowns = 0;

  cplx at(int m, int n, int side = +1) const {
    if (side < 0 && plate.count({m, n})) return lower.at({m, n});
    return field.at({m, n});
  }

  /// Case-c derivative into the half-space above row n (upper copies).
  cplx derivative_up(int m, int n) const {
    return 0.5 * at(m - 1, n, +1) + 0.5 * at(m + 1, n, +1) + at(m, n + 1, -1) +
           2.0 * (k2 / 4.0 - 1.0) * at(m, n, +1);
  }

  /// Case-c derivative into the half-space below row n (lower copies).
  cplx derivative_down(int m, int n) const {
    return 0.5 * at(m - 1, n, -1) + 0.5 * at(m + 1, n, -1) + at(m, n - 1, +1) +
           2.0 * (k2 / 4.0 - 1.0) * at(m, n, -1);
  }

  /// Max |Delta u + k2 u| over nodes that are not on the box, on a plate or prescribed.
  /// A plate neighbor above contributes its lower copy, one below its upper
  /// copy, and one beside it (a plate tip) the mean of both copies.
  double max_interior_residual() const {
    auto side_mean = [&](int m, int n) { return 0.5 * (at(m, n, +1) + at(m, n, -1)); };
    double r = 0.0;
    for (int m = -R + 1; m < R; ++m)
      for (int n = n_lo + 1; n < R; ++n) {
        if (plate.count({m, n}) || prescribed.count({m, n})) continue;
        cplx v = side_mean(m - 1, n) + side_mean(m + 1, n) + at(m, n + 1, -1) + at(m, n - 1, +1) +
                 (k2 - 4.0) * at(m, n);
        r = std::max(r, std::abs(v));
      }
    return r;
  }
};

namespace detail {

template <class Matrix>
Eigen::VectorXcd sparse_solve(const Matrix& a, const Eigen::VectorXcd& b, double& residual) {
  Eigen::SparseLU<Matrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "sparse factorization failed");
  Eigen::VectorXcd x = lu.solve(b);
  if (lu.info() != Eigen::Success || !x.allFinite())
    throw Error(ErrorCode::SingularSystem, "sparse solve failed");
  double bn = b.cwiseAbs().maxCoeff();
  residual = (a * x - b).cwiseAbs().maxCoeff() / (bn > 0.0 ? bn : 1.0);
  if (residual > 1e-10) throw Error(ErrorCode::SingularSystem, "solve residual too large");
  return x;
}

}  // namespace detail

inline LatticeSolution2D solve_lattice(const LatticeBVP2D& bvp) {
  const int R = bvp.R, n_lo = bvp.n_lo;
  if (R < 2 || n_lo > 0 || n_lo < -R) throw Error(ErrorCode::ExtentTooSmall, "bad truncation box");
  const int W = 2 * R + 1, H = R - n_lo + 1;
  const int regular = W * H;
  std::vector<int> lower_id;  // per regular index, -1 when not a plate node
  lower_id.assign(regular, -1);
  std::vector<NodeCopy> copies(regular);
  auto reg = [&](int m, int n) { return (m + R) * H + (n - n_lo); };
  for (int m = -R; m <= R; ++m)
    for (int n = n_lo; n <= R; ++n) copies[reg(m, n)] = {m, n, 0};
  for (const auto& v : bvp.plate) {
    if (v[0] < -R || v[0] > R || v[1] < n_lo || v[1] > R) continue;
    int r = reg(v[0], v[1]);
    copies[r].side = +1;
    lower_id[r] = static_cast<int>(copies.size());
    copies.push_back({v[0], v[1], -1});
  }
  const int total = static_cast<int>(copies.size());
  auto id = [&](int m, int n, int side) {
    int r = reg(m, n);
    return (side < 0 && lower_id[r] >= 0) ? lower_id[r] : r;
  };

  std::vector<char> fixed(total, 0);
  Eigen::VectorXcd value = Eigen::VectorXcd::Zero(total);
  for (int i = 0; i < total; ++i) {
    const auto& c = copies[i];
    bool outer = std::abs(c.m) == R || c.n == R || (n_lo < 0 && c.n == n_lo);
    if (outer) {
      fixed[i] = 1;
      continue;
    }
    if (bvp.dirichlet) {
      if (auto v = bvp.dirichlet(c)) {
        fixed[i] = 1;
        value[i] = *v;
      }
    }
  }
  std::vector<int> free_id(total, -1);
  int nfree = 0;
  for (int i = 0; i < total; ++i)
    if (!fixed[i]) free_id[i] = nfree++;

  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(nfree) * 5);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nfree);
  const cplx self = bvp.k2 / 4.0 - 1.0;
  auto add = [&](int r, int c, cplx v) {
    if (fixed[r]) return;
    if (fixed[c]) {
      rhs[free_id[r]] -= v * value[c];
    } else {
      trip.emplace_back(free_id[r], free_id[c], v);
    }
  };
  for (int m = -R; m < R; ++m)
    for (int n = n_lo; n < R; ++n) {
      int c[4] = {id(m, n, +1), id(m + 1, n, +1), id(m, n + 1, -1), id(m + 1, n + 1, -1)};
      static constexpr int edges[4][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
      for (const auto& e : edges) {
        add(c[e[0]], c[e[1]], 0.5);
        add(c[e[1]], c[e[0]], 0.5);
      }
      for (int a : c) add(a, a, self);
    }
  if (bvp.natural_rhs)
    for (int i = 0; i < total; ++i)
      if (!fixed[i]) rhs[free_id[i]] += bvp.natural_rhs(copies[i]);

  Eigen::SparseMatrix<cplx> A(nfree, nfree);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  LatticeSolution2D sol;
  sol.R = R;
  sol.n_lo = n_lo;
  sol.k2 = bvp.k2;
  sol.plate = bvp.plate;
  sol.unknowns = nfree;
  Eigen::VectorXcd x = nfree > 0 ? detail::sparse_solve(A, rhs, sol.algebraic_residual) : Eigen::VectorXcd();
  for (int i = 0; i < total; ++i) {
    cplx v = fixed[i] ? value[i] : x[free_id[i]];
    const auto& c = copies[i];
    if (fixed[i] && std::abs(c.m) < R && c.n < R && c.n > n_lo) sol.prescribed.insert({c.m, c.n});
    if (c.side < 0) {
      sol.lower.set({c.m, c.n}, v);
    } else {
      sol.field.set({c.m, c.n}, v);
    }
  }
  return sol;
}

/// The assembled row of a copy applied to a field given on geometric nodes.
/// Used for Neumann data: row(u^sc) = -row(u^in).
inline cplx assembled_row_apply(const LatticeBVP2D& bvp, const NodeCopy& c, const std::function<cplx(int, int)>& u) {
  // Cells touching the copy: the upper copy sees cells above, the lower copy cells below.
  cplx acc = 0.0;
  const cplx self = bvp.k2 / 4.0 - 1.0;
  for (int dm : {-1, 0})
    for (int dn : {-1, 0}) {
      bool above = dn == 0;
      if (c.side > 0 && !above) continue;
      if (c.side < 0 && above) continue;
      int mh = dm == 0 ? c.m + 1 : c.m - 1;
      int nv = dn == 0 ? c.n + 1 : c.n - 1;
      acc += self * u(c.m, c.n) + 0.5 * u(mh, c.n) + 0.5 * u(c.m, nv);
    }
  return acc;
}

// ---------------------------------------------------------------------------
// canonical problems

struct TruncatedProblem {
  ProblemSpec problem;
  int R = 50;
  /// Use the half-space symmetry reduction where the problem allows it.
  bool reduced = true;
};

namespace detail {

inline void check_extent(const TruncatedProblem& tp) {
  const auto& p = tp.problem;
  if (p.side != Side::Discrete) throw Error(ErrorCode::InvalidArgument, "oracle needs a discrete problem");
  int g = std::max({p.M, p.N, p.L, 1});
  if (tp.R < 4 * g) throw Error(ErrorCode::ExtentTooSmall, "R must be at least 4 times the geometric integers");
  if (!(p.lattice.ktilde.imag() > 0.0)) throw Error(ErrorCode::InvalidArgument, "Im ktilde must be > 0");
}

}  // namespace detail

/// Scattered field of a discrete canonical problem with incidence s_in^{-m} q_in^{-n}.
inline LatticeSolution2D solve(const TruncatedProblem& tp) {
  detail::check_extent(tp);
  const auto& p = tp.problem;
  const int R = tp.R;
  const cplx s_in = p.lin.s_in, q_in = p.lin.q_in;
  const cplx Yin = p.lin.upsilon_in();
  auto uin = [&](int m, int n) { return std::pow(s_in, -m) * std::pow(q_in, -n); };
  LatticeBVP2D bvp;
  bvp.R = R;
  bvp.k2 = p.lattice.k2();
  switch (p.problem) {
    case Problem::HalfPlaneDirichlet:
      bvp.n_lo = tp.reduced ? 0 : -R;
      bvp.dirichlet = [=](const NodeCopy& c) -> std::optional<cplx> {
        if (c.n == 0 && c.m >= 0) return -std::pow(s_in, -c.m);
        return std::nullopt;
      };
      break;
    case Problem::FiniteStrip: {
      const int M = p.M;
      bvp.n_lo = tp.reduced ? 0 : -R;
      bvp.dirichlet = [=](const NodeCopy& c) -> std::optional<cplx> {
        if (c.n == 0 && std::abs(c.m) <= M) return -std::pow(s_in, -c.m);
        return std::nullopt;
      };
      break;
    }
    case Problem::HalfPlaneNeumann:
      if (tp.reduced) {
        bvp.n_lo = 0;
        bvp.dirichlet = [](const NodeCopy& c) -> std::optional<cplx> {
          if (c.n == 0 && c.m < 0) return cplx(0.0);
          return std::nullopt;
        };
        bvp.natural_rhs = [=](const NodeCopy& c) -> cplx {
          return (c.n == 0 && c.m >= 0) ? Yin * std::pow(s_in, -c.m) : cplx(0.0);
        };
      } else {
        bvp.n_lo = -R;
        for (int m = 0; m < R; ++m) bvp.plate.insert({m, 0});
      }
      break;
    case Problem::StaggeredWaveguide:
      bvp.n_lo = -R;
      for (int m = -p.M; m < R; ++m) bvp.plate.insert({m, 0});
      for (int m = 0; m < R; ++m) bvp.plate.insert({m, -p.N});
      break;
    default:
      throw Error(ErrorCode::NotApplicable, std::string("no 2D oracle for ") + to_string(p.problem));
  }
  if (!bvp.plate.empty()) {
    // Neumann plates: row(u^sc) = -row(u^in) on both copies.
    auto plate = bvp.plate;
    LatticeBVP2D shape = bvp;
    bvp.natural_rhs = [=](const NodeCopy& c) -> cplx {
      if (c.side == 0 || !plate.count({c.m, c.n})) return 0.0;
      return -assembled_row_apply(shape, c, uin);
    };
  }
  return solve_lattice(bvp);
}

/// Spectra of a solved problem at the given points, truncated at |m| < R.
struct SpectraSample {
  cplx s;
  Eigen::VectorXcd minus;
  Eigen::VectorXcd plus;
};

struct Spectra {
  std::vector<SpectraSample> samples;
  /// Geometric-series bound on the discarded tail of each one-sided sum.
  double tail_bound = 0.0;
};

namespace detail {

/// Tail estimate: the last retained magnitude continued by the slowest
/// decay ratio max|q(s)| over the samples.
inline double tail_estimate(double edge, double rho) {
  rho = std::min(rho, 1.0 - 1e-12);
  return edge * rho / (1.0 - rho);
}

}  // namespace detail

inline Spectra extract_spectra(const LatticeSolution2D& u, const TruncatedProblem& tp, const std::vector<cplx>& s_samples) {
  const auto& p = tp.problem;
  const int R = u.R;
  const cplx s_in = p.lin.s_in;
  const int n = kernel_size(p.problem);
  Spectra out;
  double rho = 0.0;
  for (auto s : s_samples) rho = std::max(rho, std::abs(q_physical(s, p.lattice)));
  double edge = 0.0;
  auto track = [&](int m, cplx v) {
    if (std::abs(m) >= R - 2) edge = std::max(edge, std::abs(v));
  };
  // boundary data along each row, used for both the sums and the tail estimate
  std::vector<cplx> row_u(2 * R + 1), row_d(2 * R + 1), row_u2(2 * R + 1), row_d2(2 * R + 1), jump(2 * R + 1),
      jump2(2 * R + 1);
  auto ix = [&](int m) { return m + R; };
  for (int m = -R + 1; m < R; ++m) {
    row_u[ix(m)] = u.at(m, 0, +1);
    row_d[ix(m)] = u.derivative_up(m, 0);
    if (p.problem == Problem::StaggeredWaveguide) {
      jump[ix(m)] = u.at(m, 0, +1) - u.at(m, 0, -1);
      jump2[ix(m)] = u.at(m, -p.N, +1) - u.at(m, -p.N, -1);
      row_d2[ix(m)] = u.derivative_up(m, -p.N);
      row_u2[ix(m)] = u.at(m, -p.N, +1);
    }
  }
  for (int m = -R + 1; m < R; ++m) {
    switch (p.problem) {
      case Problem::HalfPlaneDirichlet: track(m, m < 0 ? row_u[ix(m)] : row_d[ix(m)]); break;
      case Problem::HalfPlaneNeumann: track(m, m < 0 ? row_d[ix(m)] : row_u[ix(m)]); break;
      case Problem::FiniteStrip: track(m, row_u[ix(m)]); break;
      case Problem::StaggeredWaveguide:
        track(m, m < -p.M ? row_d[ix(m)] : jump[ix(m)]);
        track(m, m < 0 ? row_d2[ix(m)] : jump2[ix(m)]);
        break;
      default: break;
    }
  }
  out.tail_bound = detail::tail_estimate(edge, rho);

  for (auto s : s_samples) {
    SpectraSample smp{s, Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n)};
    auto sp = [&](int m) { return std::pow(s, m); };
    switch (p.problem) {
      case Problem::HalfPlaneDirichlet:
        for (int m = -R + 1; m < 0; ++m) smp.minus[0] += sp(m) * row_u[ix(m)];
        for (int m = 0; m < R; ++m) smp.plus[0] += sp(m) * row_d[ix(m)];
        break;
      case Problem::HalfPlaneNeumann:
        for (int m = -R + 1; m < 0; ++m) smp.minus[0] += sp(m) * row_d[ix(m)];
        for (int m = 0; m < R; ++m) smp.plus[0] += sp(m) * row_u[ix(m)];
        break;
      case Problem::FiniteStrip: {
        const int M = p.M;
        cplx um = 0.0, wsum = 0.0, tail = 0.0;
        for (int m = -R + 1; m < -M; ++m) um += sp(m) * row_u[ix(m)];
        for (int m = -M; m <= M; ++m) wsum += sp(m) * row_d[ix(m)];
        for (int m = M + 1; m < R; ++m) tail += sp(m) * row_u[ix(m)];
        cplx r = s / s_in;
        smp.minus << sp(M) * um, sp(-M) * wsum;
        smp.plus << sp(-M) * tail + s * std::pow(s_in, -M - 1) / (1.0 - r), sp(M) * wsum;
        break;
      }
      case Problem::StaggeredWaveguide: {
        const int M = p.M;
        cplx m1 = 0.0, m2 = 0.0, p1 = 0.0, p2 = 0.0;
        for (int m = -R + 1; m < -M; ++m) m1 += sp(m) * row_d[ix(m)];
        for (int m = -R + 1; m < 0; ++m) m2 += sp(m) * row_d2[ix(m)];
        for (int m = -M; m < R; ++m) p1 += sp(m) * jump[ix(m)];
        for (int m = 0; m < R; ++m) p2 += sp(m) * jump2[ix(m)];
        smp.minus << sp(M) * m1, m2;
        smp.plus << sp(M) * p1, p2;
        break;
      }
      default: throw Error(ErrorCode::NotApplicable, "no spectra for this problem");
    }
    out.samples.push_back(std::move(smp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 3D quarter-plane

class LatticeSolution3D {
 public:
  int R = 0;
  cplx k2;
  Field<3> field;
  double algebraic_residual = 0.0;
  int unknowns = 0;

  cplx at(int m, int n, int l) const { return field.at({m, n, l}); }

  /// Planar derivative into l > 0 at (m, n, 0).
  cplx derivative_up(int m, int n) const {
    return 0.5 * (at(m + 1, n, 0) + at(m - 1, n, 0) + at(m, n + 1, 0) + at(m, n - 1, 0)) + at(m, n, 1) +
           (k2 - 6.0) / 2.0 * at(m, n, 0);
  }

  double max_interior_residual() const {
    double r = 0.0;
    for (int m = -R + 1; m < R; ++m)
      for (int n = -R + 1; n < R; ++n)
        for (int l = 1; l < R; ++l) r = std::max(r, std::abs(helmholtz_residual<3>(field, {m, n, l}, k2)));
    return r;
  }
};

/// Dirichlet quarter-plane on the upper half-space l >= 0; off the plate the
/// planar normal derivative vanishes by symmetry.
inline LatticeSolution3D solve_3d(const TruncatedProblem& tp) {
  const auto& p = tp.problem;
  if (p.problem != Problem::QuarterPlane || p.side != Side::Discrete)
    throw Error(ErrorCode::InvalidArgument, "solve_3d needs the discrete quarter-plane");
  const int R = tp.R;
  if (R < 4) throw Error(ErrorCode::ExtentTooSmall, "R must be at least 4");
  if (R > 24) throw Error(ErrorCode::InvalidArgument, "R above 24 is beyond the supported size");
  if (!(p.lattice.ktilde.imag() > 0.0)) throw Error(ErrorCode::InvalidArgument, "Im ktilde must be > 0");
  const cplx k2 = p.lattice.k2();
  const cplx s1 = p.lin3.s1_in, s2 = p.lin3.s2_in;
  const int W = 2 * R + 1, H = R + 1;
  auto id = [&](int m, int n, int l) { return ((m + R) * W + (n + R)) * H + l; };
  const int total = W * W * H;
  std::vector<char> fixed(total, 0);
  Eigen::VectorXcd value = Eigen::VectorXcd::Zero(total);
  for (int m = -R; m <= R; ++m)
    for (int n = -R; n <= R; ++n)
      for (int l = 0; l <= R; ++l) {
        int i = id(m, n, l);
        if (std::abs(m) == R || std::abs(n) == R || l == R) {
          fixed[i] = 1;
        } else if (l == 0 && m >= 0 && n >= 0) {
          fixed[i] = 1;
          value[i] = -std::pow(s1, -m) * std::pow(s2, -n);
        }
      }
  std::vector<int> free_id(total, -1);
  int nfree = 0;
  for (int i = 0; i < total; ++i)
    if (!fixed[i]) free_id[i] = nfree++;
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(nfree) * 7);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nfree);
  auto add = [&](int r, int c, cplx v) {
    if (fixed[c]) {
      rhs[free_id[r]] -= v * value[c];
    } else {
      trip.emplace_back(free_id[r], free_id[c], v);
    }
  };
  for (int m = -R + 1; m < R; ++m)
    for (int n = -R + 1; n < R; ++n)
      for (int l = 0; l < R; ++l) {
        int i = id(m, n, l);
        if (fixed[i]) continue;
        if (l == 0) {
          add(i, id(m + 1, n, 0), 0.5);
          add(i, id(m - 1, n, 0), 0.5);
          add(i, id(m, n + 1, 0), 0.5);
          add(i, id(m, n - 1, 0), 0.5);
          add(i, id(m, n, 1), 1.0);
          add(i, i, (k2 - 6.0) / 2.0);
        } else {
          add(i, id(m + 1, n, l), 1.0);
          add(i, id(m - 1, n, l), 1.0);
          add(i, id(m, n + 1, l), 1.0);
          add(i, id(m, n - 1, l), 1.0);
          add(i, id(m, n, l + 1), 1.0);
          add(i, id(m, n, l - 1), 1.0);
          add(i, i, k2 - 6.0);
        }
      }
  Eigen::SparseMatrix<cplx> A(nfree, nfree);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  LatticeSolution3D sol;
  sol.R = R;
  sol.k2 = k2;
  sol.unknowns = nfree;
  Eigen::VectorXcd x = detail::sparse_solve(A, rhs, sol.algebraic_residual);
  for (int m = -R; m <= R; ++m)
    for (int n = -R; n <= R; ++n)
      for (int l = 0; l <= R; ++l) {
        int i = id(m, n, l);
        sol.field.set({m, n, l}, fixed[i] ? value[i] : x[free_id[i]]);
      }
  return sol;
}

/// Quarter-plane spectra at (s1, s2) samples: minus = sum off the plate of
/// s1^m s2^n u, plus = sum over the plate of s1^m s2^n times the derivative.
inline Spectra extract_spectra_3d(const LatticeSolution3D& u, const std::vector<std::pair<cplx, cplx>>& samples,
                                  const LatticeDispersion& disp) {
  const int R = u.R;
  Spectra out;
  double rho = 0.0;
  for (auto [a, b] : samples) rho = std::max(rho, std::abs(q_physical_3d(a, b, disp)));
  const int W = 2 * R - 1;
  std::vector<cplx> val(W * W), der(W * W);
  double edge = 0.0;
  for (int m = -R + 1; m < R; ++m)
    for (int n = -R + 1; n < R; ++n) {
      int k = (m + R - 1) * W + (n + R - 1);
      bool on_plate = m >= 0 && n >= 0;
      val[k] = on_plate ? 0.0 : u.at(m, n, 0);
      der[k] = on_plate ? u.derivative_up(m, n) : 0.0;
      if (std::max(std::abs(m), std::abs(n)) >= R - 2) edge = std::max({edge, std::abs(val[k]), std::abs(der[k])});
    }
  out.tail_bound = detail::tail_estimate(edge, rho) * W;
  for (auto [s1, s2] : samples) {
    std::vector<cplx> p1(W), p2(W);
    for (int j = 0; j < W; ++j) {
      p1[j] = std::pow(s1, j - R + 1);
      p2[j] = std::pow(s2, j - R + 1);
    }
    cplx mi = 0.0, pl = 0.0;
    for (int a = 0; a < W; ++a)
      for (int b = 0; b < W; ++b) {
        cplx w = p1[a] * p2[b];
        mi += w * val[a * W + b];
        pl += w * der[a * W + b];
      }
    SpectraSample smp{s1, Eigen::VectorXcd::Constant(1, mi), Eigen::VectorXcd::Constant(1, pl)};
    out.samples.push_back(std::move(smp));
  }
  return out;
}

}  // namespace latwh
