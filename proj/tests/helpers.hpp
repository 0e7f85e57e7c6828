#ifndef CUBECOLOR_TEST_HELPERS_HPP
#define CUBECOLOR_TEST_HELPERS_HPP

#include <random>

#include "cubecolor/balancing.hpp"
#include "cubecolor/oracle.hpp"

namespace test_helpers {

using namespace cubecolor;

inline CubeFace face(std::initializer_list<int> anchor, std::initializer_list<int> free) {
  return CubeFace(Vec(anchor), std::vector<int>(free));
}

inline Simplex simplex(std::initializer_list<std::initializer_list<int>> verts) {
  std::vector<Vec> vs;
  for (const auto& v : verts) vs.emplace_back(v);
  return Simplex(std::move(vs));
}

/// Random k-cochain on a box with small coefficients.
inline CubeChain random_cochain(const Box& region, int k, std::mt19937_64& rng,
                                double density = 0.4, int max_coeff = 3) {
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  CubeChain out(k);
  for (const CubeFace& f : faces_of(region, k))
    if (keep(rng) < density) out.add(f, coeff(rng));
  return out;
}

/// Random simplicial k-cochain on a skeleton.
inline SimplexChain random_simplex_cochain(const Skeleton& region, int k,
                                           std::mt19937_64& rng, double density = 0.4,
                                           int max_coeff = 3) {
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  SimplexChain out(k);
  for (const Simplex& s : simplices_of(region, k))
    if (keep(rng) < density) out.add(s, coeff(rng));
  return out;
}

/// Independent coboundary check through the boundary pairing: verifies
/// g(tau) = f(boundary tau) for every candidate tau, without calling the
/// coboundary operator under test.
inline bool is_coboundary_of(const CubeChain& g, const CubeChain& f, const Box& region,
                             int k) {
  for (const CubeFace& tau : faces_of(region, k + 1))
    if (g[tau] != pairing(f, cube_boundary(tau))) return false;
  return true;
}

/// Largest monochromatic component by plain breadth-first search over an
/// explicitly materialized adjacency list (independent of the union-find).
inline std::int64_t bfs_largest_component(const GridSpec& spec, const Coloring& coloring,
                                          ConstraintMode adjacency) {
  const auto count = static_cast<size_t>(spec.vertex_count());
  std::vector<std::set<size_t>> adj(count);
  Skeleton skel(Box::cube(spec), spec.m + 1);
  auto connect = [&](const std::vector<Vec>& vs) {
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j) {
        if (coloring.at(vs[i]) != coloring.at(vs[j])) continue;
        size_t a = spec.vertex_index(vs[i]), b = spec.vertex_index(vs[j]);
        adj[a].insert(b);
        adj[b].insert(a);
      }
  };
  if (adjacency == ConstraintMode::cubical) {
    for (const CubeFace& f : faces_of(skel, spec.m + 1)) {
      std::vector<Vec> vs;
      for (unsigned mask = 0; mask < (1u << f.dim()); ++mask) {
        Vec v = f.anchor;
        for (int i = 0; i < f.dim(); ++i)
          if (mask & (1u << i)) v[f.free[i]] += 1;
        vs.push_back(v);
      }
      connect(vs);
    }
  } else {
    for (const Simplex& s : simplices_of(skel, spec.m + 1)) connect(s.verts);
  }
  std::vector<char> seen(count, 0);
  std::int64_t best = 0;
  for (size_t start = 0; start < count; ++start) {
    if (seen[start]) continue;
    std::int64_t size = 0;
    std::vector<size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      size_t v = stack.back();
      stack.pop_back();
      ++size;
      for (size_t w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    best = std::max(best, size);
  }
  return best;
}

/// Striped coloring: the color of a vertex is its first coordinate. Valid
/// for m >= 1 since a simplex spans at most two consecutive stripes.
inline Coloring striped_coloring(const GridSpec& spec) {
  std::vector<int> colors(static_cast<size_t>(spec.vertex_count()));
  for (std::int64_t i = 0; i < spec.vertex_count(); ++i)
    colors[static_cast<size_t>(i)] = spec.vertex_at(i)[0];
  return Coloring(spec, std::move(colors));
}

inline Coloring constant_coloring(const GridSpec& spec, int color = 0) {
  return Coloring(spec, std::vector<int>(static_cast<size_t>(spec.vertex_count()), color));
}

}  // namespace test_helpers

#endif
