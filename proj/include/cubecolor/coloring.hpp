#ifndef CUBECOLOR_COLORING_HPP
#define CUBECOLOR_COLORING_HPP

#include <optional>
#include <set>
#include <variant>

#include "algebra.hpp"

namespace cubecolor {

/// Total assignment of color ids to the lattice vertices of the grid,
/// stored in vertex-index order (first axis fastest).
struct Coloring {
  GridSpec spec;
  std::vector<int> colors;

  Coloring() = default;
  Coloring(GridSpec s, std::vector<int> cols) : spec(s), colors(std::move(cols)) {
    if (static_cast<std::int64_t>(colors.size()) != spec.vertex_count())
      throw validation_error("coloring must assign a color to every lattice vertex");
    for (int c : colors)
      if (c < 0) throw validation_error("color ids must be nonnegative");
  }

  int at(const Vec& v) const { return colors[spec.vertex_index(v)]; }

  std::vector<int> palette() const {
    std::set<int> s(colors.begin(), colors.end());
    return std::vector<int>(s.begin(), s.end());
  }

  std::map<int, std::int64_t> usage() const {
    std::map<int, std::int64_t> u;
    for (int c : colors) ++u[c];
    return u;
  }

  /// Relabel colors by first appearance in vertex order. Idempotent; two
  /// colorings are relabel-equivalent iff they canonicalize identically.
  Coloring canonical() const {
    std::map<int, int> relabel;
    std::vector<int> out(colors.size());
    for (size_t i = 0; i < colors.size(); ++i) {
      auto it = relabel.find(colors[i]);
      if (it == relabel.end())
        it = relabel.emplace(colors[i], static_cast<int>(relabel.size())).first;
      out[i] = it->second;
    }
    return Coloring(spec, std::move(out));
  }
};

/// Ordered tuple of pairwise distinct color ids.
struct ColorTuple {
  std::vector<int> colors;

  ColorTuple() = default;
  ColorTuple(std::initializer_list<int> ids) : colors(ids) { check(); }
  explicit ColorTuple(std::vector<int> ids) : colors(std::move(ids)) { check(); }

  void check() const {
    std::set<int> s(colors.begin(), colors.end());
    if (s.size() != colors.size())
      throw validation_error("color tuple must not repeat a color");
  }

  size_t size() const { return colors.size(); }
};

enum class ConstraintMode { simplicial, cubical };

inline const char* to_string(ConstraintMode m) {
  return m == ConstraintMode::simplicial ? "simplicial" : "cubical";
}

typedef std::variant<CubeFace, Simplex> FaceRef;

inline std::string to_string(const FaceRef& f) {
  return std::holds_alternative<CubeFace>(f) ? to_string(std::get<CubeFace>(f))
                                             : to_string(std::get<Simplex>(f));
}

/* **************************************************************************
 * Constraint checking
 * *************************************************************************/

namespace detail {

template <class It>
int distinct_color_count(const Coloring& coloring, It first, It last) {
  std::set<int> seen;
  for (; first != last; ++first) seen.insert(coloring.at(*first));
  return static_cast<int>(seen.size());
}

inline std::vector<Vec> face_vertices(const CubeFace& f) {
  std::vector<Vec> out;
  out.reserve(size_t(1) << f.dim());
  for (unsigned mask = 0; mask < (1u << f.dim()); ++mask) {
    Vec v = f.anchor;
    for (int i = 0; i < f.dim(); ++i)
      if (mask & (1u << i)) v[f.free[i]] += 1;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Check the coloring constraint: simplicial mode scans every (m+1)-simplex
/// of the triangulated (m+1)-skeleton for m+2 distinct colors; cubical mode
/// scans every (m+1)-dimensional cubical face for more than m+1 colors.
/// Returns the first violating face in canonical enumeration order, if any.
inline std::optional<FaceRef> validate(const GridSpec& spec, const Coloring& coloring,
                                       ConstraintMode mode) {
  Skeleton skel(Box::cube(spec), spec.m + 1);
  if (mode == ConstraintMode::cubical) {
    for (const CubeFace& f : faces_of(skel, spec.m + 1)) {
      auto vs = detail::face_vertices(f);
      if (detail::distinct_color_count(coloring, vs.begin(), vs.end()) > spec.m + 1)
        return FaceRef(f);
    }
  } else {
    for (const Simplex& s : simplices_of(skel, spec.m + 1)) {
      if (detail::distinct_color_count(coloring, s.verts.begin(), s.verts.end()) ==
          spec.m + 2)
        return FaceRef(s);
    }
  }
  return std::nullopt;
}

/* **************************************************************************
 * Color cochains
 * *************************************************************************/

/// Sign of a simplex against an ordered color tuple: 0 if any color repeats
/// or falls outside the tuple, otherwise the parity of the permutation
/// matching the vertex colors, read along the simplex orientation, to the
/// reversed tuple. Reading against the tuple makes the coboundary of a
/// tuple cochain equal the plain sum of its one-color extensions (no
/// dimension-dependent sign), which the whole balancing construction uses.
inline int color_sign(const ColorTuple& tuple, const Simplex& s, const Coloring& coloring) {
  if (static_cast<int>(tuple.size()) != s.dim() + 1)
    throw dimension_error("color tuple size must be simplex dimension + 1");
  const size_t k = tuple.size();
  std::vector<int> perm(k);
  std::vector<bool> used(k, false);
  for (size_t i = 0; i < k; ++i) {
    int c = coloring.at(s.verts[i]);
    size_t pos = k;
    for (size_t j = 0; j < k; ++j)
      if (tuple.colors[k - 1 - j] == c) {
        pos = j;
        break;
      }
    if (pos == k || used[pos]) return 0;
    used[pos] = true;
    perm[i] = static_cast<int>(pos);
  }
  int sign = 1;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

/// Evaluate the color cochain of a tuple on a simplicial chain without
/// materializing it: the signed count of tuple-colored simplices.
inline coeff_t color_sum(const ColorTuple& tuple, const SimplexChain& chain,
                         const Coloring& coloring) {
  coeff_t total = 0;
  for (const auto& [s, v] : chain.cells())
    total = checked_add(total, checked_mul(v, color_sign(tuple, s, coloring)));
  return total;
}

/// The color cochain itself: supported on exactly the simplices of the
/// region colored bijectively by the tuple.
inline SimplexChain color_cochain(const ColorTuple& tuple, const Skeleton& region,
                                  const Coloring& coloring) {
  SimplexChain out(static_cast<int>(tuple.size()) - 1);
  for (const Simplex& s : simplices_of(region, static_cast<int>(tuple.size()) - 1)) {
    int sign = color_sign(tuple, s, coloring);
    if (sign != 0) out.add(s, sign);
  }
  return out;
}

/* **************************************************************************
 * Component recoloring
 * *************************************************************************/

namespace detail {

// Plain union-find with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n), size_(n, 1) {
    for (size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  size_t find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::int64_t component_size(size_t x) { return size_[find(x)]; }

 private:
  std::vector<size_t> parent_;
  std::vector<std::int64_t> size_;
};

// Union same-colored vertices that share an (m+1)-face under the chosen
// adjacency notion.
inline UnionFind monochromatic_components(const GridSpec& spec, const Coloring& coloring,
                                          ConstraintMode adjacency) {
  UnionFind uf(static_cast<size_t>(spec.vertex_count()));
  Skeleton skel(Box::cube(spec), spec.m + 1);
  auto unite_same = [&](const std::vector<Vec>& vs) {
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j)
        if (coloring.at(vs[i]) == coloring.at(vs[j]))
          uf.unite(static_cast<size_t>(spec.vertex_index(vs[i])),
                   static_cast<size_t>(spec.vertex_index(vs[j])));
  };
  if (adjacency == ConstraintMode::cubical) {
    for (const CubeFace& f : faces_of(skel, spec.m + 1))
      unite_same(detail::face_vertices(f));
  } else {
    for (const Simplex& s : simplices_of(skel, spec.m + 1)) unite_same(s.verts);
  }
  return uf;
}

}  // namespace detail

/// Give every connected monochromatic component its own color. The result is
/// still a valid coloring and its maximum color usage equals the largest
/// monochromatic component size of the input.
inline Coloring split_components(const GridSpec& spec, const Coloring& coloring,
                                 ConstraintMode adjacency) {
  if (validate(spec, coloring, ConstraintMode::simplicial))
    throw validation_error("split_components requires a valid coloring");
  auto uf = detail::monochromatic_components(spec, coloring, adjacency);
  std::vector<int> out(coloring.colors.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<int>(uf.find(i));
  Coloring split = Coloring(spec, std::move(out)).canonical();
  // Same-colored vertices of a simplex share an (m+1)-face, hence a
  // component, so per-simplex color counts never grow.
  if (validate(spec, split, ConstraintMode::simplicial))
    throw invariant_error("component recoloring produced an invalid coloring");
  return split;
}

}  // namespace cubecolor

#endif
