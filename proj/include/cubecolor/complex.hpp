#ifndef CUBECOLOR_COMPLEX_HPP
#define CUBECOLOR_COMPLEX_HPP

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <tuple>

#include "core.hpp"

namespace cubecolor {

/* **************************************************************************
 * Cells: cubical faces of the lattice partition and Kuhn simplices
 * *************************************************************************/

/// Axis-aligned face of the unit-cell partition: an anchor vertex plus the
/// set of free axes along which the face extends by one.
struct CubeFace {
  Vec anchor;                 // lowest corner, length = ambient dimension
  std::vector<int> free;      // strictly increasing axis indices

  CubeFace() = default;
  CubeFace(Vec a, std::vector<int> f) : anchor(std::move(a)), free(std::move(f)) {
    assert(std::is_sorted(free.begin(), free.end()));
  }

  int dim() const { return static_cast<int>(free.size()); }
  int ambient_dim() const { return static_cast<int>(anchor.size()); }

  bool has_free(int axis) const {
    return std::binary_search(free.begin(), free.end(), axis);
  }

  // 0-based position of an axis in the sorted free list (or where it would
  // be inserted); this is the uniform sign exponent used by boundary,
  // direct image and prism evaluation.
  int axis_position(int axis) const {
    return static_cast<int>(std::lower_bound(free.begin(), free.end(), axis) -
                            free.begin());
  }

  Vec opposite_corner() const {
    Vec v = anchor;
    for (int j : free) v[j] += 1;
    return v;
  }

  // Faces order lexicographically by (free, anchor); enumeration and all
  // sparse containers use this order, so every computation is deterministic.
  friend bool operator<(const CubeFace& a, const CubeFace& b) {
    return std::tie(a.free, a.anchor) < std::tie(b.free, b.anchor);
  }
  friend bool operator==(const CubeFace& a, const CubeFace& b) {
    return a.free == b.free && a.anchor == b.anchor;
  }
};

inline std::string to_string(const CubeFace& f) {
  std::string s = "face{" + to_string(f.anchor) + ";free[";
  for (size_t i = 0; i < f.free.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f.free[i]);
  }
  return s + "]}";
}

/// Simplex of the Kuhn triangulation: a strictly increasing chain of lattice
/// vertices inside one unit cell (each coordinate changes at most once).
/// Vertices are kept in ascending order; that order is the orientation.
/// Top-dimensional simplices of a k-face are the k! monotone unit-step
/// paths; boundaries of those contribute chains with multi-axis steps.
struct Simplex {
  std::vector<Vec> verts;

  Simplex() = default;
  explicit Simplex(std::vector<Vec> vs) : verts(std::move(vs)) {}

  int dim() const { return static_cast<int>(verts.size()) - 1; }
  int ambient_dim() const { return verts.empty() ? 0 : static_cast<int>(verts[0].size()); }

  bool valid_chain() const {
    if (verts.empty()) return false;
    const int d = ambient_dim();
    for (int j = 0; j < d; ++j)
      if (verts.back()[j] - verts.front()[j] > 1 || verts.back()[j] < verts.front()[j])
        return false;
    for (size_t i = 0; i + 1 < verts.size(); ++i) {
      bool strict = false;
      for (int j = 0; j < d; ++j) {
        int diff = verts[i + 1][j] - verts[i][j];
        if (diff < 0 || diff > 1) return false;
        if (diff == 1) strict = true;
      }
      if (!strict) return false;
    }
    return true;
  }

  // Minimal cubical face containing the simplex: lowest vertex plus the
  // union of axes stepped along the chain.
  CubeFace minimal_face() const {
    std::vector<int> axes;
    const int d = ambient_dim();
    for (int j = 0; j < d; ++j)
      if (verts.back()[j] > verts.front()[j]) axes.push_back(j);
    return CubeFace(verts.front(), axes);
  }

  friend bool operator<(const Simplex& a, const Simplex& b) { return a.verts < b.verts; }
  friend bool operator==(const Simplex& a, const Simplex& b) { return a.verts == b.verts; }
};

inline std::string to_string(const Simplex& s) {
  std::string out = "simplex{";
  for (size_t i = 0; i < s.verts.size(); ++i) {
    if (i) out += " ";
    out += to_string(s.verts[i]);
  }
  return out + "}";
}

/* **************************************************************************
 * Regions: boxes (big faces) and their skeleta
 * *************************************************************************/

/// Axis-aligned box inside the ambient grid: anchor plus per-axis extents.
/// Big faces of the cube are boxes with all extents equal to n.
struct Box {
  Vec anchor;
  std::vector<int> axes;   // free axes, strictly increasing
  std::vector<int> len;    // extent (in unit cells) per free axis

  Box() = default;
  Box(Vec a, std::vector<int> ax, std::vector<int> ln)
      : anchor(std::move(a)), axes(std::move(ax)), len(std::move(ln)) {
    assert(axes.size() == len.size());
    assert(std::is_sorted(axes.begin(), axes.end()));
  }

  static Box cube(const GridSpec& spec) {
    std::vector<int> ax(spec.d);
    std::iota(ax.begin(), ax.end(), 0);
    return Box(Vec(spec.d, 0), ax, std::vector<int>(spec.d, spec.n));
  }

  int dim() const { return static_cast<int>(axes.size()); }
  int ambient_dim() const { return static_cast<int>(anchor.size()); }

  int axis_slot(int axis) const {
    auto it = std::lower_bound(axes.begin(), axes.end(), axis);
    return (it != axes.end() && *it == axis) ? static_cast<int>(it - axes.begin()) : -1;
  }

  int max_len() const { return len.empty() ? 0 : *std::max_element(len.begin(), len.end()); }

  bool contains_vertex(const Vec& v) const {
    for (int j = 0; j < ambient_dim(); ++j) {
      int slot = axis_slot(j);
      if (slot < 0) {
        if (v[j] != anchor[j]) return false;
      } else if (v[j] < anchor[j] || v[j] > anchor[j] + len[slot]) {
        return false;
      }
    }
    return true;
  }

  bool contains_face(const CubeFace& f) const {
    for (int j : f.free)
      if (axis_slot(j) < 0) return false;
    for (int j = 0; j < ambient_dim(); ++j) {
      int slot = axis_slot(j);
      if (slot < 0) {
        if (f.anchor[j] != anchor[j]) return false;
      } else {
        int hi = anchor[j] + len[slot] - (f.has_free(j) ? 1 : 0);
        if (f.anchor[j] < anchor[j] || f.anchor[j] > hi) return false;
      }
    }
    return true;
  }

  /// Sub-box at level t along one of our axes (the codimension-1 section).
  Box section(int axis, int t) const {
    int slot = axis_slot(axis);
    if (slot < 0) throw dimension_error("section axis is not free in the box");
    Box out = *this;
    out.anchor[axis] += t;
    out.axes.erase(out.axes.begin() + slot);
    out.len.erase(out.len.begin() + slot);
    return out;
  }

  friend bool operator==(const Box& a, const Box& b) {
    return a.anchor == b.anchor && a.axes == b.axes && a.len == b.len;
  }
};

/// The j-skeleton of a box: all cubical faces of dimension <= dim, together
/// with the Kuhn triangulation of those faces.
struct Skeleton {
  Box box;
  int dim = 0;

  Skeleton() = default;
  Skeleton(Box b, int k) : box(std::move(b)), dim(k) {}

  bool contains_face(const CubeFace& f) const {
    return f.dim() <= dim && box.contains_face(f);
  }
  bool contains_simplex(const Simplex& s) const {
    return contains_face(s.minimal_face());
  }
};

/* **************************************************************************
 * Enumeration
 * *************************************************************************/

namespace detail {

// All size-k subsets of `pool` in lexicographic order.
inline std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& pool, int k) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(pool.size());
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = pool[idx[i]];
    out.push_back(std::move(s));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

/// Every k-face of the cubical partition of a box, in lexicographic order of
/// (free, anchor).
inline std::vector<CubeFace> faces_of(const Box& region, int k) {
  if (k < 0 || k > region.dim())
    throw dimension_error("face dimension " + std::to_string(k) +
                          " out of range for region of dimension " +
                          std::to_string(region.dim()));
  std::vector<CubeFace> out;
  for (const auto& free : detail::subsets_of_size(region.axes, k)) {
    // anchors: free axes range over [a, a+len-1], other box axes over [a, a+len]
    Vec lo = region.anchor;
    Vec hi = region.anchor;
    for (size_t s = 0; s < region.axes.size(); ++s) {
      int j = region.axes[s];
      bool is_free = std::binary_search(free.begin(), free.end(), j);
      hi[j] += region.len[s] - (is_free ? 1 : 0);
    }
    Vec cur = lo;
    while (true) {
      out.emplace_back(cur, free);
      // increment with the last coordinate fastest => plain vector lex order
      int j = region.ambient_dim() - 1;
      while (j >= 0) {
        if (cur[j] < hi[j]) {
          ++cur[j];
          for (int j2 = j + 1; j2 < region.ambient_dim(); ++j2) cur[j2] = lo[j2];
          break;
        }
        --j;
      }
      if (j < 0) break;
    }
  }
  return out;
}

inline std::vector<CubeFace> faces_of(const Skeleton& region, int k) {
  if (k > region.dim)
    throw dimension_error("face dimension exceeds skeleton dimension");
  return faces_of(region.box, k);
}

/// The k! top-dimensional Kuhn simplices of a k-face, each paired with its
/// orientation sign (the parity of the axis permutation generating it).
/// A shared subface of two adjacent faces receives the same simplices from
/// both, so the triangulation is consistent across the whole grid.
inline std::vector<std::pair<Simplex, int>> triangulate(const CubeFace& face) {
  std::vector<std::pair<Simplex, int>> out;
  std::vector<int> perm = face.free;  // sorted = identity permutation
  std::sort(perm.begin(), perm.end());
  do {
    // parity of perm relative to the sorted free list
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i)
      for (size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) sign = -sign;
    std::vector<Vec> verts;
    verts.reserve(perm.size() + 1);
    Vec v = face.anchor;
    verts.push_back(v);
    for (int ax : perm) {
      v[ax] += 1;
      verts.push_back(v);
    }
    out.emplace_back(Simplex(std::move(verts)), sign);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// All j-simplices of the triangulated skeleton. A j-simplex with lowest
/// vertex v and step blocks B_1..B_j is listed once, under the face it spans;
/// faces run in (free, anchor) order and step-block assignments in
/// lexicographic order, so the output order is canonical.
inline std::vector<Simplex> simplices_of(const Skeleton& region, int j) {
  if (j < 0 || j > region.dim)
    throw dimension_error("simplex dimension out of range for skeleton");
  std::vector<Simplex> out;
  if (j == 0) {
    for (const CubeFace& f : faces_of(region.box, 0))
      out.emplace_back(std::vector<Vec>{f.anchor});
    std::sort(out.begin(), out.end());
    return out;
  }
  for (int p = j; p <= region.dim; ++p) {
    for (const CubeFace& f : faces_of(region.box, p)) {
      // ordered partitions of the p free axes into j nonempty blocks:
      // enumerate block assignments, skip non-surjective ones
      std::vector<int> assign(p, 0);
      while (true) {
        std::vector<int> seen(j, 0);
        for (int a : assign) seen[a] = 1;
        bool surjective =
            std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; });
        if (surjective) {
          std::vector<Vec> verts;
          verts.reserve(j + 1);
          Vec v = f.anchor;
          verts.push_back(v);
          for (int b = 0; b < j; ++b) {
            for (int i = 0; i < p; ++i)
              if (assign[i] == b) v[f.free[i]] += 1;
            verts.push_back(v);
          }
          out.emplace_back(std::move(verts));
        }
        int i = p - 1;
        while (i >= 0 && assign[i] == j - 1) --i;
        if (i < 0) break;
        ++assign[i];
        for (int i2 = i + 1; i2 < p; ++i2) assign[i2] = 0;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All (k+1)-simplices of the ambient triangulated skeleton containing s.
inline std::vector<Simplex> cofaces_of(const Simplex& s, const Skeleton& ambient) {
  if (!ambient.contains_simplex(s))
    throw membership_error("simplex does not belong to the ambient skeleton");
  std::vector<Simplex> out;
  // Any coface inserts one vertex into the chain; candidates live in the
  // lattice box spanned by [max-1, min+1] around s.
  const int d = s.ambient_dim();
  Vec lo = s.verts.back(), hi = s.verts.front();
  for (int j = 0; j < d; ++j) {
    lo[j] -= 1;
    hi[j] += 1;
  }
  std::function<void(int, Vec&)> scan = [&](int j, Vec& w) {
    if (j == d) {
      for (size_t pos = 0; pos <= s.verts.size(); ++pos) {
        std::vector<Vec> verts = s.verts;
        verts.insert(verts.begin() + static_cast<std::ptrdiff_t>(pos), w);
        Simplex t(verts);
        if (t.valid_chain() && ambient.contains_simplex(t)) out.push_back(t);
      }
      return;
    }
    for (int x = lo[j]; x <= hi[j]; ++x) {
      w[j] = x;
      scan(j + 1, w);
    }
  };
  Vec w(d, 0);
  scan(0, w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/* **************************************************************************
 * The flag of big faces
 * *************************************************************************/

/// Nested big faces F_m = Q > F_{m-1} > ... > F_0 used by the descent,
/// F_{k-1} pinned from F_k at the highest free axis, level 0. With this
/// canonical choice F_k = [0,n]^{d-m+k} x {0}^{m-k}.
struct FaceFlag {
  GridSpec spec;
  std::vector<Box> levels;  // levels[k] = F_k, k = 0..m

  FaceFlag() = default;
  explicit FaceFlag(const GridSpec& s) : spec(s) {
    levels.resize(s.m + 1);
    for (int k = 0; k <= s.m; ++k) {
      int dimk = s.d - s.m + k;
      std::vector<int> ax(dimk);
      std::iota(ax.begin(), ax.end(), 0);
      levels[k] = Box(Vec(s.d, 0), ax, std::vector<int>(dimk, s.n));
    }
  }

  const Box& big_face(int level) const { return levels.at(level); }

  // Axis pinned when passing from F_level to F_{level-1}.
  int pinned_axis(int level) const {
    assert(level >= 1);
    return spec.d - spec.m + level - 1;
  }

  /// Q_k: the (k+1)-skeleton of F_k.
  Skeleton skeleton(int level) const { return Skeleton(levels.at(level), level + 1); }
};

}  // namespace cubecolor

#endif
