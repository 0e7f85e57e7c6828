#ifndef CUBECOLOR_ORACLE_HPP
#define CUBECOLOR_ORACLE_HPP

#include <functional>
#include <random>

#include "coloring.hpp"

namespace cubecolor {

// Exhaustive enumeration is kept at desk scale.
constexpr std::int64_t kExhaustiveVertexGuard = 12;

struct OracleReport {
  GridSpec spec;
  std::string mode;  // "exhaustive" or "random"
  std::int64_t samples = 0;
  std::int64_t value = 0;  // min over colorings of the max color usage
  Coloring extremal;
  std::map<std::int64_t, std::int64_t> component_stats;  // largest component -> count
};

namespace detail {

// (m+1)-simplices bucketed by the index of their top vertex; when vertices
// are colored in index order, the bucket at a vertex is exactly the set of
// constraints that become fully determined there.
inline std::vector<std::vector<std::vector<std::int64_t>>> constraint_buckets(
    const GridSpec& spec) {
  std::vector<std::vector<std::vector<std::int64_t>>> buckets(
      static_cast<size_t>(spec.vertex_count()));
  Skeleton skel(Box::cube(spec), spec.m + 1);
  for (const Simplex& s : simplices_of(skel, spec.m + 1)) {
    std::vector<std::int64_t> idx;
    idx.reserve(s.verts.size());
    for (const Vec& v : s.verts) idx.push_back(spec.vertex_index(v));
    buckets[idx.back()].push_back(std::move(idx));
  }
  return buckets;
}

inline bool assignment_ok(const std::vector<int>& colors,
                          const std::vector<std::int64_t>& constraint, int candidate,
                          int limit) {
  std::set<int> seen;
  for (size_t i = 0; i + 1 < constraint.size(); ++i) seen.insert(colors[constraint[i]]);
  seen.insert(candidate);
  return static_cast<int>(seen.size()) <= limit;
}

}  // namespace detail

/// Stream every valid coloring exactly once up to color relabeling, in
/// restricted-growth order (vertex i may only open color max_so_far + 1).
/// The callback returns false to stop early.
inline void enumerate_valid(const GridSpec& spec, int max_palette,
                            const std::function<bool(const Coloring&)>& yield) {
  const std::int64_t count = spec.vertex_count();
  if (count > kExhaustiveVertexGuard)
    throw size_guard_error("exhaustive enumeration is limited to " +
                           std::to_string(kExhaustiveVertexGuard) + " vertices, got " +
                           std::to_string(count));
  if (max_palette < 1) max_palette = static_cast<int>(count);
  auto buckets = detail::constraint_buckets(spec);
  std::vector<int> colors(static_cast<size_t>(count), 0);
  bool stop = false;
  std::function<void(std::int64_t, int)> dfs = [&](std::int64_t i, int used) {
    if (stop) return;
    if (i == count) {
      stop = !yield(Coloring(spec, colors));
      return;
    }
    int top = std::min(used, max_palette - 1);
    for (int c = 0; c <= top && !stop; ++c) {
      bool ok = true;
      for (const auto& constraint : buckets[i])
        if (!detail::assignment_ok(colors, constraint, c, spec.m + 1)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      colors[i] = c;
      dfs(i + 1, std::max(used, c + 1));
    }
  };
  dfs(0, 0);
}

/// Exact minimum over valid colorings of the maximum color usage, with one
/// minimizer (the first in enumeration order).
inline std::pair<std::int64_t, Coloring> min_max_usage(const GridSpec& spec) {
  std::int64_t best = -1;
  Coloring argmin;
  enumerate_valid(spec, 0, [&](const Coloring& coloring) {
    std::int64_t worst = 0;
    for (const auto& [c, n] : coloring.usage()) worst = std::max(worst, n);
    if (best < 0 || worst < best) {
      best = worst;
      argmin = coloring;
    }
    return true;
  });
  return {best, argmin};
}

/// Deterministic-for-seed greedy generator: vertices are colored in index
/// order with a seeded choice among the colors that keep every completed
/// constraint within m+1 colors. The color of the clamped all-ones
/// predecessor is always legal, so the greedy pass never blocks.
inline Coloring random_valid(const GridSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto buckets = detail::constraint_buckets(spec);
  const std::int64_t count = spec.vertex_count();
  std::vector<int> colors(static_cast<size_t>(count), 0);
  int used = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    std::vector<int> candidates(used + 1);
    std::iota(candidates.begin(), candidates.end(), 0);  // existing plus one fresh
    std::shuffle(candidates.begin(), candidates.end(), rng);
    bool placed = false;
    for (int c : candidates) {
      bool ok = true;
      for (const auto& constraint : buckets[i])
        if (!detail::assignment_ok(colors, constraint, c, spec.m + 1)) {
          ok = false;
          break;
        }
      if (ok) {
        colors[i] = c;
        used = std::max(used, c + 1);
        placed = true;
        break;
      }
    }
    if (!placed)
      throw invariant_error("greedy coloring blocked; this should be impossible");
  }
  Coloring out(spec, std::move(colors));
  if (validate(spec, out, ConstraintMode::simplicial))
    throw invariant_error("greedy generator produced an invalid coloring");
  return out.canonical();
}

/// Size of the largest connected monochromatic vertex set under the chosen
/// adjacency notion.
inline std::int64_t largest_monochromatic_component(const GridSpec& spec,
                                                    const Coloring& coloring,
                                                    ConstraintMode adjacency) {
  if (validate(spec, coloring, ConstraintMode::simplicial))
    throw validation_error("component statistics require a valid coloring");
  auto uf = detail::monochromatic_components(spec, coloring, adjacency);
  std::int64_t best = 0;
  for (std::int64_t i = 0; i < spec.vertex_count(); ++i)
    best = std::max(best, uf.component_size(static_cast<size_t>(i)));
  return best;
}

/// Exhaustive study of a small instance.
inline OracleReport oracle_exhaustive(const GridSpec& spec, int max_palette,
                                      ConstraintMode adjacency) {
  OracleReport report;
  report.spec = spec;
  report.mode = "exhaustive";
  std::int64_t best = -1;
  enumerate_valid(spec, max_palette, [&](const Coloring& coloring) {
    ++report.samples;
    std::int64_t worst = 0;
    for (const auto& [c, n] : coloring.usage()) worst = std::max(worst, n);
    if (best < 0 || worst < best) {
      best = worst;
      report.extremal = coloring;
    }
    ++report.component_stats[largest_monochromatic_component(spec, coloring, adjacency)];
    return true;
  });
  report.value = best;
  return report;
}

/// Sampled study via the seeded generator.
inline OracleReport oracle_random(const GridSpec& spec, std::int64_t samples,
                                  std::uint64_t seed, ConstraintMode adjacency) {
  OracleReport report;
  report.spec = spec;
  report.mode = "random";
  std::int64_t best = -1;
  for (std::int64_t i = 0; i < samples; ++i) {
    Coloring coloring = random_valid(spec, seed + static_cast<std::uint64_t>(i));
    ++report.samples;
    std::int64_t worst = 0;
    for (const auto& [c, n] : coloring.usage()) worst = std::max(worst, n);
    if (best < 0 || worst < best) {
      best = worst;
      report.extremal = coloring;
    }
    ++report.component_stats[largest_monochromatic_component(spec, coloring, adjacency)];
  }
  report.value = best < 0 ? 0 : best;
  return report;
}

}  // namespace cubecolor

#endif
