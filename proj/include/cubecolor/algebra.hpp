#ifndef CUBECOLOR_ALGEBRA_HPP
#define CUBECOLOR_ALGEBRA_HPP

#include <map>

#include "complex.hpp"
#include "core.hpp"

namespace cubecolor {

/* **************************************************************************
 * Sparse exact-integer chains / cochains
 * *************************************************************************/

/// Finitely supported integer assignment to cells of one common dimension.
/// The same container serves chains and cochains (functionals); the pairing
/// below is the bilinear coefficient product. Cells iterate in their
/// canonical lexicographic order. No zero coefficient is ever stored.
template <class Cell>
class Chain {
 public:
  Chain() = default;
  explicit Chain(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  bool empty() const { return cells_.empty(); }
  size_t support_size() const { return cells_.size(); }

  coeff_t operator[](const Cell& c) const {
    auto it = cells_.find(c);
    return it == cells_.end() ? 0 : it->second;
  }

  void add(const Cell& c, coeff_t v) {
    if (v == 0) return;
    if (dim_ < 0)
      dim_ = c.dim();
    else if (c.dim() != dim_)
      throw dimension_error("cell dimension does not match chain dimension");
    auto it = cells_.find(c);
    if (it == cells_.end()) {
      cells_.emplace(c, v);
    } else {
      it->second = checked_add(it->second, v);
      if (it->second == 0) cells_.erase(it);
    }
  }

  Chain& operator+=(const Chain& o) {
    for (const auto& [c, v] : o.cells_) add(c, v);
    return *this;
  }
  Chain& operator-=(const Chain& o) {
    for (const auto& [c, v] : o.cells_) add(c, checked_mul(v, -1));
    return *this;
  }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(coeff_t s, const Chain& a) {
    Chain out(a.dim_);
    if (s == 0) return out;
    for (const auto& [c, v] : a.cells_) out.add(c, checked_mul(s, v));
    return out;
  }

  friend bool operator==(const Chain& a, const Chain& b) {
    return a.cells_ == b.cells_;  // empty chains equal regardless of dim tag
  }

  const std::map<Cell, coeff_t>& cells() const& { return cells_; }
  // a temporary hands its cells out by value, so range-for stays safe
  std::map<Cell, coeff_t> cells() && { return std::move(cells_); }

  template <class Pred>
  Chain filtered(Pred keep) const {
    Chain out(dim_);
    for (const auto& [c, v] : cells_)
      if (keep(c)) out.cells_.emplace(c, v);
    return out;
  }

 private:
  int dim_ = -1;  // -1 until the first cell fixes it
  std::map<Cell, coeff_t> cells_;
};

typedef Chain<CubeFace> CubeChain;
typedef Chain<Simplex> SimplexChain;

/// Bilinear pairing of a cochain with a chain of the same dimension.
template <class Cell>
coeff_t pairing(const Chain<Cell>& f, const Chain<Cell>& c) {
  if (!f.empty() && !c.empty() && f.dim() != c.dim())
    throw dimension_error("pairing requires equal dimensions");
  // iterate the smaller support
  const Chain<Cell>& small = f.support_size() <= c.support_size() ? f : c;
  const Chain<Cell>& large = f.support_size() <= c.support_size() ? c : f;
  coeff_t total = 0;
  for (const auto& [cell, v] : small.cells())
    total = checked_add(total, checked_mul(v, large[cell]));
  return total;
}

/// Sum of absolute values of the coefficients.
template <class Cell>
coeff_t l1_norm(const Chain<Cell>& f) {
  coeff_t total = 0;
  for (const auto& [cell, v] : f.cells())
    total = checked_add(total, v < 0 ? checked_mul(v, -1) : v);
  return total;
}

/* **************************************************************************
 * Boundary operators and the subdivision map
 * *************************************************************************/

/// Cubical boundary: signed sum over free axes j (at position i in the
/// sorted free list) of (-1)^i (top copy - bottom copy) along j.
inline CubeChain cube_boundary(const CubeFace& face) {
  if (face.dim() < 1) throw dimension_error("boundary of a vertex");
  CubeChain out(face.dim() - 1);
  int sign = 1;
  for (size_t i = 0; i < face.free.size(); ++i) {
    int j = face.free[i];
    std::vector<int> sub = face.free;
    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
    Vec top = face.anchor;
    top[j] += 1;
    out.add(CubeFace(top, sub), sign);
    out.add(CubeFace(face.anchor, sub), -sign);
    sign = -sign;
  }
  return out;
}

/// Simplicial boundary: alternating sum of vertex deletions.
inline SimplexChain simplex_boundary(const Simplex& s) {
  if (s.dim() < 1) throw dimension_error("boundary of a 0-simplex");
  SimplexChain out(s.dim() - 1);
  int sign = 1;
  for (size_t i = 0; i < s.verts.size(); ++i) {
    std::vector<Vec> verts = s.verts;
    verts.erase(verts.begin() + static_cast<std::ptrdiff_t>(i));
    out.add(Simplex(std::move(verts)), sign);
    sign = -sign;
  }
  return out;
}

inline CubeChain boundary(const CubeChain& c) {
  CubeChain out(c.dim() - 1);
  for (const auto& [face, v] : c.cells()) out += v * cube_boundary(face);
  return out;
}

inline SimplexChain boundary(const SimplexChain& c) {
  SimplexChain out(c.dim() - 1);
  for (const auto& [s, v] : c.cells()) out += v * simplex_boundary(s);
  return out;
}

/// The subdivision map from cubical to simplicial chains: a k-face maps to
/// the signed sum of its k! Kuhn simplices. Commutes with the boundary.
inline SimplexChain subdivide(const CubeFace& face) {
  SimplexChain out(face.dim());
  for (const auto& [s, sign] : triangulate(face)) out.add(s, sign);
  return out;
}

inline SimplexChain subdivide(const CubeChain& c) {
  SimplexChain out(c.dim());
  for (const auto& [face, v] : c.cells()) out += v * subdivide(face);
  return out;
}

/* **************************************************************************
 * Region-aware cochain operators
 * *************************************************************************/

/// Cubical coboundary within a region: (df)(tau) = f(boundary tau) over all
/// (k+1)-faces tau of the region.
inline CubeChain coboundary(const CubeChain& f, const Box& region, int dim_hint = -1) {
  int k = f.dim() >= 0 ? f.dim() : dim_hint;
  if (k < 0) throw dimension_error("coboundary of a dimensionless cochain");
  for (const auto& [cell, v] : f.cells())
    if (!region.contains_face(cell))
      throw membership_error("cochain support leaves the region");
  CubeChain out(k + 1);
  if (k + 1 > region.dim()) return out;
  for (const CubeFace& tau : faces_of(region, k + 1))
    out.add(tau, pairing(f, cube_boundary(tau)));
  return out;
}

inline CubeChain coboundary(const CubeChain& f, const Skeleton& region, int dim_hint = -1) {
  int k = f.dim() >= 0 ? f.dim() : dim_hint;
  if (k < 0) throw dimension_error("coboundary of a dimensionless cochain");
  if (k + 1 > region.dim) return CubeChain(k + 1);
  return coboundary(f, region.box, dim_hint);
}

/// Simplicial coboundary within a triangulated skeleton.
inline SimplexChain coboundary(const SimplexChain& f, const Skeleton& region,
                               int dim_hint = -1) {
  int k = f.dim() >= 0 ? f.dim() : dim_hint;
  if (k < 0) throw dimension_error("coboundary of a dimensionless cochain");
  for (const auto& [cell, v] : f.cells())
    if (!region.contains_simplex(cell))
      throw membership_error("cochain support leaves the region");
  SimplexChain out(k + 1);
  if (k + 1 > region.dim) return out;
  for (const Simplex& t : simplices_of(region, k + 1))
    out.add(t, pairing(f, simplex_boundary(t)));
  return out;
}

/// Keep exactly the cells lying in the sub-region.
inline CubeChain restrict_to(const CubeChain& f, const Box& sub) {
  return f.filtered([&](const CubeFace& c) { return sub.contains_face(c); });
}
inline CubeChain restrict_to(const CubeChain& f, const Skeleton& sub) {
  return f.filtered([&](const CubeFace& c) { return sub.contains_face(c); });
}
inline SimplexChain restrict_to(const SimplexChain& f, const Skeleton& sub) {
  return f.filtered([&](const Simplex& s) { return sub.contains_simplex(s); });
}

/// Shift a cochain by delta unit cells along one axis.
template <class Cell>
Chain<Cell> translated(const Chain<Cell>& f, int axis, int delta);

template <>
inline CubeChain translated(const CubeChain& f, int axis, int delta) {
  CubeChain out(f.dim());
  for (const auto& [cell, v] : f.cells()) {
    CubeFace c = cell;
    c.anchor[axis] += delta;
    out.add(c, v);
  }
  return out;
}

template <>
inline SimplexChain translated(const SimplexChain& f, int axis, int delta) {
  SimplexChain out(f.dim());
  for (const auto& [cell, v] : f.cells()) {
    Simplex s = cell;
    for (Vec& w : s.verts) w[axis] += delta;
    out.add(s, v);
  }
  return out;
}

/// Direct image under the axis projection onto the hyperplane x_axis = t:
/// each k-cell with the axis free projects, with the axis-drop sign
/// (-1)^(position of axis in the free list), onto its (k-1)-shadow.
inline CubeChain direct_image(const CubeChain& f, int axis, int t) {
  CubeChain out(f.dim() - 1);
  for (const auto& [cell, v] : f.cells()) {
    if (!cell.has_free(axis))
      throw dimension_error("direct image requires the projection axis free");
    int pos = cell.axis_position(axis);
    CubeFace shadow = cell;
    shadow.free.erase(shadow.free.begin() + pos);
    shadow.anchor[axis] = t;
    out.add(shadow, (pos % 2 == 0) ? v : checked_mul(v, -1));
  }
  return out;
}

/// Evaluate a k-cochain on the signed prism of cubical k-cells swept by a
/// (k-1)-face between its own level and level t along the given axis. The
/// orientation is chosen so that subtracting the coboundary of the swept
/// values cancels the cochain on every face with the sweep axis free: the
/// prism is oriented toward the face, i.e. sign - when t > anchor[axis].
inline coeff_t prism_value(const CubeChain& alpha, const CubeFace& tau, int axis, int t) {
  if (tau.has_free(axis))
    throw dimension_error("prism evaluation requires the sweep axis pinned");
  const int h = tau.anchor[axis];
  if (h == t) return 0;
  const int pos = tau.axis_position(axis);  // insertion position of the axis
  std::vector<int> free = tau.free;
  free.insert(free.begin() + pos, axis);
  coeff_t total = 0;
  CubeFace cell(tau.anchor, free);
  for (int level = std::min(h, t); level < std::max(h, t); ++level) {
    cell.anchor[axis] = level;
    total = checked_add(total, alpha[cell]);
  }
  int sign = (t > h) ? -1 : 1;
  if (pos % 2 != 0) sign = -sign;
  return checked_mul(sign, total);
}

}  // namespace cubecolor

#endif
