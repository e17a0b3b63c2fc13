// SPDX-FileCopyrightText: 2026 latwh contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "latwh/error.hpp"

namespace latwh {

/// Lattice node (m,n) or (m,n,l).
template <std::size_t D>
using Node = std::array<int, D>;

template <std::size_t D>
struct NodeHash {
  std::size_t operator()(const Node<D>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int c : v) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(c));
      h *= 1099511628211ull;
    }
    return h;
  }
};

template <std::size_t D>
Node<D> shifted(Node<D> v, int axis, int step) {
  v[axis] += step;
  return v;
}

/// Complex values attached to lattice nodes.
template <std::size_t D>
class Field {
 public:
  using map_type = std::unordered_map<Node<D>, cplx, NodeHash<D>>;

  void set(const Node<D>& v, cplx value) { values_[v] = value; }
  bool contains(const Node<D>& v) const { return values_.count(v) != 0; }
  std::size_t size() const { return values_.size(); }

  cplx at(const Node<D>& v) const {
    auto it = values_.find(v);
    if (it == values_.end()) throw Error(ErrorCode::MissingNeighborValue, "no value at node");
    return it->second;
  }

  const map_type& values() const { return values_; }

  /// Nodes in lexicographic order, for deterministic output.
  std::vector<Node<D>> sorted_nodes() const {
    std::vector<Node<D>> out;
    out.reserve(values_.size());
    for (const auto& kv : values_) out.push_back(kv.first);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  map_type values_;
};

/// Axis-aligned node ranges, lo/hi inclusive per axis.
template <std::size_t D>
using Box = std::array<std::array<int, 2>, D>;

/// Union of unit cells given as a list of node boxes.
template <std::size_t D>
class LatticeDomain {
  static_assert(D == 2 || D == 3);

 public:
  static constexpr int dim = D;
  static constexpr unsigned full_mask = (1u << (1 << D)) - 1u;

  static LatticeDomain from_boxes(std::vector<Box<D>> boxes) {
    if (boxes.empty()) throw Error(ErrorCode::DegenerateExtent, "no boxes");
    LatticeDomain d;
    for (const auto& b : boxes) {
      for (int a = 0; a < static_cast<int>(D); ++a)
        if (b[a][1] - b[a][0] < 1)
          throw Error(ErrorCode::DegenerateExtent, "box needs at least 2 nodes per side");
      d.add_cells(b);
    }
    d.boxes_ = std::move(boxes);
    d.finish();
    return d;
  }

  const std::vector<Box<D>>& boxes() const { return boxes_; }

  bool has_cell(const Node<D>& lower) const { return cells_.count(lower) != 0; }

  /// Lower corners of the occupied cells, sorted.
  std::vector<Node<D>> cells() const {
    std::vector<Node<D>> out(cells_.begin(), cells_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Bit b set when the cell at octant b around v is occupied. Octant bit a
  /// selects the cell on the + side of axis a.
  unsigned cell_mask(const Node<D>& v) const {
    auto it = masks_.find(v);
    return it == masks_.end() ? 0u : it->second;
  }

  int cell_count(const Node<D>& v) const { return std::popcount(cell_mask(v)); }

  /// Number of occupied cells sharing the edge from v to v + step*e_axis.
  int edge_cell_count(const Node<D>& v, int axis, int step) const {
    unsigned mask = cell_mask(v);
    int count = 0;
    for (unsigned b = 0; b < (1u << D); ++b) {
      bool plus = (b >> axis) & 1u;
      if (plus != (step > 0)) continue;
      if (mask & (1u << b)) ++count;
    }
    return count;
  }

  bool contains(const Node<D>& v) const { return masks_.count(v) != 0; }
  bool is_interior(const Node<D>& v) const { return cell_mask(v) == full_mask; }
  bool is_boundary(const Node<D>& v) const {
    unsigned m = cell_mask(v);
    return m != 0 && m != full_mask;
  }

  /// Interior node with at least one boundary neighbor.
  bool is_adjacent_interior(const Node<D>& v) const {
    if (!is_interior(v)) return false;
    for (int a = 0; a < static_cast<int>(D); ++a)
      for (int st : {-1, 1})
        if (is_boundary(shifted(v, a, st))) return true;
    return false;
  }

  const std::vector<Node<D>>& interior() const { return interior_; }
  const std::vector<Node<D>>& boundary() const { return boundary_; }

  std::vector<Node<D>> nodes() const {
    std::vector<Node<D>> out(interior_);
    out.insert(out.end(), boundary_.begin(), boundary_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void add_cells(const Box<D>& b) {
    Node<D> c{};
    for (int a = 0; a < static_cast<int>(D); ++a) c[a] = b[a][0];
    while (true) {
      cells_.insert(c);
      int a = 0;
      for (; a < static_cast<int>(D); ++a) {
        if (++c[a] < b[a][1]) break;
        c[a] = b[a][0];
      }
      if (a == static_cast<int>(D)) break;
    }
  }

  void finish() {
    for (const auto& c : cells_) {
      for (unsigned b = 0; b < (1u << D); ++b) {
        Node<D> v = c;
        unsigned octant = 0;
        for (int a = 0; a < static_cast<int>(D); ++a) {
          if ((b >> a) & 1u) {
            v[a] += 1;
          } else {
            octant |= 1u << a;
          }
        }
        masks_[v] |= 1u << octant;
      }
    }
    for (const auto& kv : masks_) {
      if (kv.second == full_mask) {
        interior_.push_back(kv.first);
      } else {
        boundary_.push_back(kv.first);
      }
    }
    std::sort(interior_.begin(), interior_.end());
    std::sort(boundary_.begin(), boundary_.end());
  }

  std::vector<Box<D>> boxes_;
  std::unordered_set<Node<D>, NodeHash<D>> cells_;
  std::unordered_map<Node<D>, unsigned, NodeHash<D>> masks_;
  std::vector<Node<D>> interior_;
  std::vector<Node<D>> boundary_;
};

using Domain2 = LatticeDomain<2>;
using Domain3 = LatticeDomain<3>;

inline Domain2 build_rectangle(std::array<int, 2> m_range, std::array<int, 2> n_range) {
  return Domain2::from_boxes({Box<2>{m_range, n_range}});
}

inline Domain3 build_box(std::array<int, 2> m_range, std::array<int, 2> n_range,
                         std::array<int, 2> l_range) {
  return Domain3::from_boxes({Box<3>{m_range, n_range, l_range}});
}

/// Rectangle [m0,m1]x[n0,n1] with the block above n_cut and right of m_cut removed.
inline Domain2 build_l_shape(std::array<int, 2> m_range, std::array<int, 2> n_range, int m_cut,
                             int n_cut) {
  if (!(m_range[0] < m_cut && m_cut < m_range[1] && n_range[0] < n_cut && n_cut < n_range[1]))
    throw Error(ErrorCode::DegenerateExtent, "L-shape cut must lie strictly inside the ranges");
  return Domain2::from_boxes({Box<2>{m_range, std::array<int, 2>{n_range[0], n_cut}},
                              Box<2>{std::array<int, 2>{m_range[0], m_cut}, n_range}});
}

// ---------------------------------------------------------------------------
// Boundary classes

enum class BoundaryKind { ExternalRightAngle, InternalRightAngle, StraightLine, Planar3D, Other3D };

inline const char* to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::ExternalRightAngle: return "ExternalRightAngle";
    case BoundaryKind::InternalRightAngle: return "InternalRightAngle";
    case BoundaryKind::StraightLine: return "StraightLine";
    case BoundaryKind::Planar3D: return "Planar3D";
    case BoundaryKind::Other3D: return "Other3D";
  }
  return "Unknown";
}

/// `cells` is the number of occupied cells around the node (l in 3D).
struct BoundaryClass {
  BoundaryKind kind;
  int cells;
  bool operator==(const BoundaryClass&) const = default;
};

namespace detail {

// Octants b and b ^ (1 << a) share a face.
template <std::size_t D>
bool octants_connected(unsigned mask) {
  if (mask == 0) return true;
  unsigned seen = 1u << std::countr_zero(mask);
  bool grew = true;
  while (grew) {
    grew = false;
    for (unsigned b = 0; b < (1u << D); ++b) {
      if (!(seen & (1u << b))) continue;
      for (int a = 0; a < static_cast<int>(D); ++a) {
        unsigned nb = b ^ (1u << a);
        if ((mask & (1u << nb)) && !(seen & (1u << nb))) {
          seen |= 1u << nb;
          grew = true;
        }
      }
    }
  }
  return seen == mask;
}

}  // namespace detail

/// Convex corners (one cell) are InternalRightAngle, re-entrant corners
/// (three cells) are ExternalRightAngle.
template <std::size_t D>
BoundaryClass classify_boundary(const LatticeDomain<D>& dom, const Node<D>& v) {
  unsigned mask = dom.cell_mask(v);
  constexpr unsigned full = LatticeDomain<D>::full_mask;
  if (mask == 0 || mask == full) throw Error(ErrorCode::InvalidArgument, "node is not on the boundary");
  if (!detail::octants_connected<D>(mask) || !detail::octants_connected<D>(full & ~mask))
    throw Error(ErrorCode::NonRectilinearBoundary, "cells around node do not form a rectilinear boundary");
  int l = std::popcount(mask);
  if constexpr (D == 2) {
    if (l == 1) return {BoundaryKind::InternalRightAngle, 1};
    if (l == 2) return {BoundaryKind::StraightLine, 2};
    return {BoundaryKind::ExternalRightAngle, 3};
  } else {
    if (l == 4) {
      for (int a = 0; a < 3; ++a) {
        unsigned side = 0;
        for (unsigned b = 0; b < 8; ++b)
          if ((b >> a) & 1u) side |= 1u << b;
        if (mask == side || mask == (full & ~side)) return {BoundaryKind::Planar3D, 4};
      }
    }
    return {BoundaryKind::Other3D, l};
  }
}

// ---------------------------------------------------------------------------
// Stencils

template <std::size_t D>
struct StencilWeights {
  cplx center{};
  std::vector<std::pair<Node<D>, cplx>> neighbors;
};

/// Interior row of the 5- or 7-point operator: Delta[u] + k2 u.
template <std::size_t D>
StencilWeights<D> beta_row(const Node<D>& v, cplx k2) {
  StencilWeights<D> w;
  w.center = k2 - 2.0 * D;
  for (int a = 0; a < static_cast<int>(D); ++a)
    for (int st : {-1, 1}) w.neighbors.push_back({shifted(v, a, st), 1.0});
  return w;
}

/// Self weight of the normal derivative for a boundary class.
template <std::size_t D>
cplx alpha_center(const BoundaryClass& cls, cplx k2) {
  if constexpr (D == 2) {
    switch (cls.kind) {
      case BoundaryKind::ExternalRightAngle: return 3.0 * (k2 / 4.0 - 1.0);
      case BoundaryKind::InternalRightAngle: return k2 / 4.0 - 1.0;
      case BoundaryKind::StraightLine: return 2.0 * (k2 / 4.0 - 1.0);
      default: throw Error(ErrorCode::UnsupportedClass, "3D class used on a 2D node");
    }
  } else {
    switch (cls.kind) {
      case BoundaryKind::Planar3D: return 4.0 * (k2 - 6.0) / 8.0;
      case BoundaryKind::Other3D:
        if (cls.cells < 1 || cls.cells > 7) throw Error(ErrorCode::UnsupportedClass, "bad cell count");
        return static_cast<double>(cls.cells) * (k2 - 6.0) / 8.0;
      default: throw Error(ErrorCode::UnsupportedClass, "2D class used on a 3D node");
    }
  }
}

/// Normal-derivative row at a boundary node. A neighbor is weighted by the
/// number of occupied cells sharing the connecting edge over 2^(D-1): 1 for
/// interior neighbors, 1/2 along a 2D boundary, p/4 in 3D.
template <std::size_t D>
StencilWeights<D> alpha_row(const LatticeDomain<D>& dom, const Node<D>& v, cplx k2,
                            const BoundaryClass& cls) {
  StencilWeights<D> w;
  w.center = alpha_center<D>(cls, k2);
  constexpr double denom = D == 2 ? 2.0 : 4.0;
  for (int a = 0; a < static_cast<int>(D); ++a)
    for (int st : {-1, 1}) {
      int e = dom.edge_cell_count(v, a, st);
      if (e > 0) w.neighbors.push_back({shifted(v, a, st), e / denom});
    }
  return w;
}

template <std::size_t D>
cplx apply(const StencilWeights<D>& w, const Field<D>& u, const Node<D>& v) {
  cplx acc = w.center * u.at(v);
  for (const auto& [mu, c] : w.neighbors) acc += c * u.at(mu);
  return acc;
}

/// Delta[u](v) + k2 u(v) - f(v).
template <std::size_t D>
cplx helmholtz_residual(const Field<D>& u, const Node<D>& v, cplx k2, const Field<D>& f) {
  return apply(beta_row<D>(v, k2), u, v) - f.at(v);
}

template <std::size_t D>
cplx helmholtz_residual(const Field<D>& u, const Node<D>& v, cplx k2) {
  return apply(beta_row<D>(v, k2), u, v);
}

template <std::size_t D>
cplx normal_derivative(const LatticeDomain<D>& dom, const Field<D>& u, const Node<D>& v, cplx k2,
                       const BoundaryClass& cls) {
  return apply(alpha_row(dom, v, k2, cls), u, v);
}

template <std::size_t D>
cplx normal_derivative(const LatticeDomain<D>& dom, const Field<D>& u, const Node<D>& v, cplx k2) {
  return normal_derivative(dom, u, v, k2, classify_boundary(dom, v));
}

/// Forcing f = Delta[u] + k2 u on the interior.
template <std::size_t D>
Field<D> helmholtz_forcing(const LatticeDomain<D>& dom, const Field<D>& u, cplx k2) {
  Field<D> f;
  for (const auto& v : dom.interior()) f.set(v, helmholtz_residual(u, v, k2));
  return f;
}

struct GreensResult {
  cplx residual;
  /// Sum of magnitudes of all terms; the natural scale for roundoff.
  double scale;
};

template <std::size_t D>
GreensResult greens_identity(const LatticeDomain<D>& dom, const Field<D>& u, const Field<D>& w,
                             const Field<D>& f, const Field<D>& g, cplx k2) {
  cplx lhs = 0.0, rhs = 0.0;
  double scale = 0.0;
  for (const auto& v : dom.boundary()) {
    BoundaryClass cls;
    try {
      cls = classify_boundary(dom, v);
    } catch (const Error& e) {
      throw Error(ErrorCode::DomainClassificationFailed, e.what());
    }
    auto row = alpha_row(dom, v, k2, cls);
    cplx a = apply(row, u, v) * w.at(v);
    cplx b = apply(row, w, v) * u.at(v);
    lhs += a - b;
    scale += std::abs(a) + std::abs(b);
  }
  for (const auto& v : dom.interior()) {
    cplx a = g.at(v) * u.at(v);
    cplx b = f.at(v) * w.at(v);
    rhs += a - b;
    scale += std::abs(a) + std::abs(b);
  }
  return {lhs - rhs, scale};
}

template <std::size_t D>
cplx greens_residual(const Field<D>& u, const Field<D>& w, const Field<D>& f, const Field<D>& g,
                     const LatticeDomain<D>& dom, cplx k2) {
  return greens_identity(dom, u, w, f, g, k2).residual;
}

/// Merged coefficient table: beta rows on the interior, alpha rows on the boundary.
template <std::size_t D>
std::map<std::pair<Node<D>, Node<D>>, cplx> merged_coefficients(const LatticeDomain<D>& dom, cplx k2) {
  std::map<std::pair<Node<D>, Node<D>>, cplx> table;
  auto put = [&](const Node<D>& v, const StencilWeights<D>& w) {
    table[{v, v}] += w.center;
    for (const auto& [mu, c] : w.neighbors) table[{v, mu}] += c;
  };
  for (const auto& v : dom.interior()) put(v, beta_row<D>(v, k2));
  for (const auto& v : dom.boundary()) put(v, alpha_row(dom, v, k2, classify_boundary(dom, v)));
  return table;
}

}  // namespace latwh
