// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/rational.hpp>

#include <array>
#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "latwh/error.hpp"
#include "latwh/lattice_core.hpp"

namespace latwh::fem {

using Rational = boost::rational<long long>;

template <int N>
using RMatrix = std::array<std::array<Rational, N>, N>;

template <int N>
RMatrix<N> scaled(const RMatrix<N>& a, Rational f) {
  RMatrix<N> out = a;
  for (auto& row : out)
    for (auto& x : row) x *= f;
  return out;
}

template <int N>
RMatrix<N> from_ints(const std::array<std::array<long long, N>, N>& a, Rational f) {
  RMatrix<N> out;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out[i][j] = Rational(a[i][j]) * f;
  return out;
}

// ---------------------------------------------------------------------------
// exact integration of polynomials over the unit right triangle

/// Bivariate polynomial, exponents (a, b) of x^a y^b.
using Poly2 = std::map<std::pair<int, int>, Rational>;

inline Poly2 operator*(const Poly2& p, const Poly2& q) {
  Poly2 r;
  for (const auto& [e1, c1] : p)
    for (const auto& [e2, c2] : q) r[{e1.first + e2.first, e1.second + e2.second}] += c1 * c2;
  return r;
}

inline long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Integral over {x, y >= 0, x + y <= 1}: a! b! / (a + b + 2)!.
inline Rational integrate(const Poly2& p) {
  Rational acc = 0;
  for (const auto& [e, c] : p) acc += c * Rational(factorial(e.first) * factorial(e.second), factorial(e.first + e.second + 2));
  return acc;
}

struct ElementMatrices {
  RMatrix<3> K;  ///< -integral of grad N_i . grad N_j
  RMatrix<3> M;  ///< integral of N_i N_j
};

/// Linear shape functions 1 - x - y, x, y on the unit right triangle.
inline ElementMatrices element_matrices() {
  const std::array<Poly2, 3> shape = {
      Poly2{{{0, 0}, Rational(1)}, {{1, 0}, Rational(-1)}, {{0, 1}, Rational(-1)}},
      Poly2{{{1, 0}, Rational(1)}},
      Poly2{{{0, 1}, Rational(1)}},
  };
  const std::array<std::array<Rational, 2>, 3> grad = {{{-1, -1}, {1, 0}, {0, 1}}};
  const Rational area = integrate(Poly2{{{0, 0}, Rational(1)}});
  ElementMatrices e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      e.K[i][j] = -(grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1]) * area;
      e.M[i][j] = integrate(shape[i] * shape[j]);
    }
  return e;
}

// ---------------------------------------------------------------------------
// square assembly; nodes 1=(0,0), 2=(1,0), 3=(0,1), 4=(1,1) (0-based here)

enum class Partition { Diag1, Diag2 };

struct SquareMatrices {
  RMatrix<4> Ks1, Ks2, Ks;
  RMatrix<4> Ms1, Ms2, Ms;
  RMatrix<4> Mhat;
};

/// Triangles as (right-angle vertex, other, other). Diag1 cuts along the 2-3
/// diagonal, Diag2 along the 1-4 diagonal.
inline std::array<std::array<int, 3>, 2> triangles(Partition p) {
  if (p == Partition::Diag1) return {{{0, 1, 2}, {3, 2, 1}}};
  return {{{1, 0, 3}, {2, 0, 3}}};
}

inline std::pair<RMatrix<4>, RMatrix<4>> assemble_square(Partition p) {
  ElementMatrices e = element_matrices();
  RMatrix<4> K{}, M{};
  for (auto& row : K) row.fill(Rational(0));
  for (auto& row : M) row.fill(Rational(0));
  for (const auto& tri : triangles(p))
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        K[tri[i]][tri[j]] += e.K[i][j];
        M[tri[i]][tri[j]] += e.M[i][j];
      }
  return {K, M};
}

inline SquareMatrices average_and_lump() {
  SquareMatrices s;
  std::tie(s.Ks1, s.Ms1) = assemble_square(Partition::Diag1);
  std::tie(s.Ks2, s.Ms2) = assemble_square(Partition::Diag2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      s.Ks[i][j] = (s.Ks1[i][j] + s.Ks2[i][j]) / 2;
      s.Ms[i][j] = (s.Ms1[i][j] + s.Ms2[i][j]) / 2;
      s.Mhat[i][j] = 0;
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s.Mhat[i][i] += s.Ms[i][j];
  return s;
}

// ---------------------------------------------------------------------------
// global assembly and stencil equivalence

/// Coefficient c0 + c2 k~^2, exact.
struct Coeff {
  Rational stiff{0};
  Rational mass{0};
  bool operator==(const Coeff&) const = default;
  Coeff operator*(Rational f) const { return {stiff * f, mass * f}; }
};

using Row = std::map<Node<2>, Coeff>;

struct GlobalSystem {
  std::map<std::pair<Node<2>, Node<2>>, Rational> K;
  std::map<Node<2>, Rational> Mhat;

  Row row(const Node<2>& v) const {
    Row r;
    auto it = K.lower_bound({v, Node<2>{INT_MIN, INT_MIN}});
    for (; it != K.end() && it->first.first == v; ++it)
      if (it->second != Rational(0)) r[it->first.second].stiff = it->second;
    auto m = Mhat.find(v);
    if (m != Mhat.end() && m->second != Rational(0)) r[v].mass = m->second;
    return r;
  }

  bool stiffness_symmetric() const {
    for (const auto& [key, val] : K) {
      auto it = K.find({key.second, key.first});
      if (it == K.end() || it->second != val) return false;
    }
    return true;
  }
};

inline GlobalSystem assemble_domain(const Domain2& dom) {
  const SquareMatrices s = average_and_lump();
  GlobalSystem g;
  for (const auto& c : dom.cells()) {
    const std::array<Node<2>, 4> v = {Node<2>{c[0], c[1]}, Node<2>{c[0] + 1, c[1]}, Node<2>{c[0], c[1] + 1},
                                      Node<2>{c[0] + 1, c[1] + 1}};
    for (int i = 0; i < 4; ++i) {
      g.Mhat[v[i]] += s.Mhat[i][i];
      for (int j = 0; j < 4; ++j)
        if (s.Ks[i][j] != Rational(0)) g.K[{v[i], v[j]}] += s.Ks[i][j];
    }
  }
  return g;
}

/// Stencil row from the printed tables: beta in the bulk; on the boundary the
/// class self weight, 1/2 towards boundary neighbors and 1 towards interior ones.
inline Row stencil_row(const Domain2& dom, const Node<2>& v) {
  Row r;
  if (dom.is_interior(v)) {
    r[v] = {Rational(-4), Rational(1)};
    for (int a = 0; a < 2; ++a)
      for (int st : {-1, 1}) r[shifted(v, a, st)] = {Rational(1), Rational(0)};
    return r;
  }
  BoundaryClass cls;
  try {
    cls = classify_boundary(dom, v);
  } catch (const Error& e) {
    throw Error(ErrorCode::DomainClassificationFailed, e.what());
  }
  switch (cls.kind) {
    case BoundaryKind::ExternalRightAngle: r[v] = {Rational(-3), Rational(3, 4)}; break;
    case BoundaryKind::InternalRightAngle: r[v] = {Rational(-1), Rational(1, 4)}; break;
    case BoundaryKind::StraightLine: r[v] = {Rational(-2), Rational(1, 2)}; break;
    default: throw Error(ErrorCode::DomainClassificationFailed, "3D class in a 2D domain");
  }
  for (int a = 0; a < 2; ++a)
    for (int st : {-1, 1}) {
      Node<2> mu = shifted(v, a, st);
      if (dom.is_interior(mu)) {
        r[mu] = {Rational(1), Rational(0)};
      } else if (dom.is_boundary(mu)) {
        r[mu] = {Rational(1, 2), Rational(0)};
      }
    }
  return r;
}

struct Mismatch {
  Node<2> node;
  std::string role;
};

struct EquivalenceReport {
  /// FEM row = factor * stencil row.
  Rational factor{0};
  int rows_checked = 0;
  int interior_rows = 0;
  std::map<std::string, int> boundary_rows;
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty() && rows_checked > 0; }
};

inline std::string role_of(const Domain2& dom, const Node<2>& v) {
  if (dom.is_interior(v)) return "interior";
  return to_string(classify_boundary(dom, v).kind);
}

inline EquivalenceReport check_equivalence(const Domain2& dom, const GlobalSystem& g) {
  EquivalenceReport rep;
  bool have_factor = false;
  for (const auto& v : dom.nodes()) {
    Row fem = g.row(v);
    Row st = stencil_row(dom, v);
    std::string role = role_of(dom, v);
    if (!have_factor) {
      rep.factor = fem[v].mass / st[v].mass;
      have_factor = true;
    }
    Row expect;
    for (const auto& [mu, c] : st) expect[mu] = c * rep.factor;
    ++rep.rows_checked;
    if (role == "interior") {
      ++rep.interior_rows;
    } else {
      ++rep.boundary_rows[role];
    }
    if (fem != expect) rep.mismatches.push_back({v, role});
  }
  return rep;
}

inline EquivalenceReport check_equivalence(const Domain2& dom) { return check_equivalence(dom, assemble_domain(dom)); }

}  // namespace latwh::fem
