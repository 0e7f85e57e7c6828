#ifndef CUBECOLOR_BALANCING_HPP
#define CUBECOLOR_BALANCING_HPP

#include "coloring.hpp"
#include "filling.hpp"

namespace cubecolor {

/* **************************************************************************
 * Balance state
 * *************************************************************************/

/// Per-level state of the balancing descent. At level k the corrections map
/// assigns to k-faces of the k-th big face a (k+1)-chain of simplices; the
/// balance invariant is that for every (k+1)-face tau and every tuple C of
/// k+1 colors the signed count of C-colored simplices in A(boundary tau)
/// vanishes, where A(sigma) = subdivide(sigma) + boundary(corrections(sigma)).
struct BalanceState {
  GridSpec spec;
  Coloring coloring;
  FaceFlag flag;
  int level = 0;
  std::map<CubeFace, SimplexChain> corrections;
  // multiplicity of each simplex across all correction chains, per level
  std::map<int, std::map<Simplex, coeff_t>> usage;
};

/// A(sigma): the subdivided face adjusted by the boundary of its correction.
inline SimplexChain balanced_chain(const BalanceState& state, const CubeFace& face) {
  if (face.dim() != state.level)
    throw dimension_error("balanced chain queried at the wrong level");
  if (!state.flag.big_face(state.level).contains_face(face))
    throw membership_error("face lies outside the current big face");
  SimplexChain a = subdivide(face);
  auto it = state.corrections.find(face);
  if (it != state.corrections.end() && !it->second.empty()) a += boundary(it->second);
  return a;
}

namespace detail {

inline std::optional<std::vector<int>> distinct_colors(const Simplex& s,
                                                       const Coloring& coloring) {
  std::vector<int> cols;
  cols.reserve(s.verts.size());
  for (const Vec& v : s.verts) cols.push_back(coloring.at(v));
  std::sort(cols.begin(), cols.end());
  if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) return std::nullopt;
  return cols;
}

// Signed totals of a simplicial chain per color set: entry[S] equals the
// evaluation of the color cochain of the ascending tuple on S against the
// chain. Simplices with a repeated color contribute to no tuple.
inline std::map<std::vector<int>, coeff_t> color_set_sums(const SimplexChain& chain,
                                                          const Coloring& coloring) {
  std::map<std::vector<int>, coeff_t> out;
  for (const auto& [s, v] : chain.cells()) {
    auto cols = distinct_colors(s, coloring);
    if (!cols) continue;
    int sign = color_sign(ColorTuple(*cols), s, coloring);
    auto [it, fresh] = out.emplace(*cols, 0);
    it->second = checked_add(it->second, checked_mul(v, sign));
  }
  return out;
}

}  // namespace detail

/// Exhaustive balance check at the current level: every color-set total of
/// A(boundary tau) vanishes for every (k+1)-face tau. Tuples whose color set
/// never meets the support are zero term by term, so checking the observed
/// sets covers all tuples.
inline bool verify_balanced(const BalanceState& state) {
  const int k = state.level;
  const Box& big = state.flag.big_face(k);
  if (k + 1 > big.dim()) return true;
  for (const CubeFace& tau : faces_of(big, k + 1)) {
    SimplexChain a(k);
    for (const auto& [sigma, w] : cube_boundary(tau).cells())
      a += w * balanced_chain(state, sigma);
    for (const auto& [set, total] : detail::color_set_sums(a, state.coloring))
      if (total != 0) return false;
  }
  return true;
}

/// Start of the descent: at the top level the corrections are all zero and
/// the balance condition is exactly the coloring constraint.
inline BalanceState initial_state(const GridSpec& spec, const Coloring& coloring) {
  if (auto violation = validate(spec, coloring, ConstraintMode::simplicial))
    throw validation_error("coloring violates the constraint at " +
                           to_string(*violation));
  BalanceState state;
  state.spec = spec;
  state.coloring = coloring;
  state.flag = FaceFlag(spec);
  state.level = spec.m;
  if (!verify_balanced(state))
    throw invariant_error("top-level state is not balanced despite a valid coloring");
  return state;
}

/// The k-cocycle traced by a color tuple: its value on a k-face is the
/// signed count of tuple-colored simplices in the balanced chain.
inline CubeChain tuple_trace(const BalanceState& state, const ColorTuple& tuple) {
  const int k = state.level;
  if (static_cast<int>(tuple.size()) != k + 1)
    throw dimension_error("tuple size must be level + 1");
  CubeChain xi(k);
  for (const CubeFace& tau : faces_of(state.flag.big_face(k), k))
    xi.add(tau, color_sum(tuple, balanced_chain(state, tau), state.coloring));
  return xi;
}

/* **************************************************************************
 * One descent step
 * *************************************************************************/

/// The planned correction cochain for one tuple: a primitive of the trace
/// cocycle on the next big face, produced from a cheap section (filled
/// there) plus the pushforward of the slab between the section and the
/// target face.
struct CorrectionPlan {
  std::vector<int> tuple;   // ascending color ids
  coeff_t trace_norm = 0;   // M
  int section_level = 0;    // chosen section, 1..n
  FillResult fill;
  CubeChain eta;
};

inline CorrectionPlan plan_corrections(const BalanceState& state, const ColorTuple& tuple,
                                       const CubeChain& xi) {
  const int k = state.level;
  if (k < 1) throw dimension_error("corrections are planned while descending");
  const GridSpec& spec = state.spec;
  const Box& big = state.flag.big_face(k);
  const Box& target = state.flag.big_face(k - 1);
  const int axis = state.flag.pinned_axis(k);
  const int base = big.anchor[axis];

  CorrectionPlan plan;
  plan.tuple = tuple.colors;
  std::sort(plan.tuple.begin(), plan.tuple.end());
  plan.trace_norm = l1_norm(xi);

  // cheapest section parallel to the target face, excluding the target level
  std::vector<coeff_t> norms(spec.n + 1, 0);
  for (const auto& [cell, v] : xi.cells()) {
    if (cell.has_free(axis)) continue;
    norms[cell.anchor[axis] - base] = checked_add(norms[cell.anchor[axis] - base],
                                                  v < 0 ? -v : v);
  }
  int t = 1;
  for (int lvl = 2; lvl <= spec.n; ++lvl)
    if (norms[lvl] < norms[t]) t = lvl;
  plan.section_level = t;

  Box section = big.section(axis, t);
  CubeChain alpha = restrict_to(xi, section);
  plan.fill = fill(alpha, section, k);
  CubeChain beta0 = translated(plan.fill.beta, axis, -t);

  // slab part: faces with the pinned axis free strictly between the target
  // face and the section, pushed down onto the target level
  CubeChain slab = xi.filtered([&](const CubeFace& c) {
    return c.has_free(axis) && c.anchor[axis] >= base && c.anchor[axis] < base + t;
  });
  plan.eta = beta0 - direct_image(slab, axis, base);

  // the coboundary of eta inside the target face must reproduce the trace
  for (const CubeFace& tau : faces_of(target, k))
    if (pairing(plan.eta, cube_boundary(tau)) != xi[tau])
      throw invariant_error(
          "correction cochain fails its coboundary identity (sign convention)");
  coeff_t eta_bound = checked_mul(spec.d - spec.m + 1, plan.trace_norm);
  if (l1_norm(plan.eta) > eta_bound)
    throw invariant_error("correction cochain exceeded its certified norm bound");
  return plan;
}

/// All k-simplices of the triangulated (m+1)-skeleton colored bijectively by
/// the tuple, with their signs against the ascending tuple. These are the
/// only simplices a correction for this tuple may use; corrections for
/// distinct color sets therefore never share a simplex.
inline std::vector<std::pair<Simplex, int>> candidate_pool(const BalanceState& state,
                                                           const ColorTuple& tuple) {
  std::vector<int> want = tuple.colors;
  std::sort(want.begin(), want.end());
  std::vector<std::pair<Simplex, int>> pool;
  Skeleton skel(Box::cube(state.spec), state.spec.m + 1);
  for (const Simplex& s : simplices_of(skel, static_cast<int>(tuple.size()) - 1)) {
    auto cols = detail::distinct_colors(s, state.coloring);
    if (cols && *cols == want)
      pool.emplace_back(s, color_sign(ColorTuple(want), s, state.coloring));
  }
  return pool;
}

namespace detail {

// Turn a correction cochain into correction chains, drawing candidates
// round-robin so the per-simplex multiplicity spreads evenly.
inline std::map<CubeFace, SimplexChain> realize_with_pool(
    const ColorTuple& tuple, const CubeChain& eta,
    const std::vector<std::pair<Simplex, int>>& pool, int realization_sign,
    std::map<Simplex, coeff_t>& usage) {
  std::map<CubeFace, SimplexChain> out;
  if (eta.empty()) return out;
  if (pool.empty())
    throw invariant_error("nonzero correction cochain with no candidate simplex for "
                          "its color tuple (upstream bug: the trace must vanish)");
  size_t cursor = 0;
  for (const auto& [sigma, value] : eta.cells()) {
    coeff_t count = value < 0 ? -value : value;
    coeff_t unit = static_cast<coeff_t>(realization_sign) * (value < 0 ? -1 : 1);
    SimplexChain chain(static_cast<int>(tuple.size()) - 1);
    for (coeff_t i = 0; i < count; ++i) {
      const auto& [simplex, sign] = pool[cursor % pool.size()];
      ++cursor;
      chain.add(simplex, unit * sign);
      usage[simplex] = checked_add(usage[simplex], 1);
    }
    out.emplace(sigma, std::move(chain));
  }
  return out;
}

}  // namespace detail

/// Correction chains for one tuple: each face with a nonzero correction
/// value receives tuple-colored simplices whose signed count realizes it.
inline std::map<CubeFace, SimplexChain> realize(const BalanceState& state,
                                                const ColorTuple& tuple,
                                                const CubeChain& eta,
                                                int realization_sign,
                                                std::map<Simplex, coeff_t>* usage = nullptr) {
  std::map<Simplex, coeff_t> scratch;
  return detail::realize_with_pool(tuple, eta, candidate_pool(state, tuple),
                                   realization_sign, usage ? *usage : scratch);
}

/* **************************************************************************
 * Descent driver
 * *************************************************************************/

struct DescentTupleRecord {
  std::vector<int> tuple;
  coeff_t trace_norm = 0;
  int section_level = 0;
  std::vector<SweepRecord> fill_sweeps;
  coeff_t eta_norm = 0;
  std::int64_t pool_size = 0;
  coeff_t max_usage = 0;  // largest multiplicity this tuple put on one simplex
};

struct DescentLevelRecord {
  int level = 0;  // level reached by the step
  std::vector<DescentTupleRecord> tuples;
  coeff_t max_usage = 0;  // largest multiplicity across the new corrections
};

struct DescentTrace {
  std::vector<DescentLevelRecord> levels;
};

inline BalanceState descend_with_sign(const BalanceState& state, int realization_sign,
                                      DescentLevelRecord* record) {
  const int k = state.level;
  if (k < 1) throw dimension_error("cannot descend below level 0");
  if (!verify_balanced(state))
    throw invariant_error("descent requires a balanced state");
  const Box& big = state.flag.big_face(k);
  const Box& target = state.flag.big_face(k - 1);

  // balanced chains for every k-face, and the per-tuple trace cocycles:
  // the color-set totals of A(tau) are exactly the trace values
  std::map<CubeFace, SimplexChain> balanced;
  std::map<std::vector<int>, CubeChain> traces;
  for (const CubeFace& tau : faces_of(big, k)) {
    SimplexChain a = balanced_chain(state, tau);
    for (const auto& [set, value] : detail::color_set_sums(a, state.coloring)) {
      if (value != 0) {
        auto [it, fresh] = traces.emplace(set, CubeChain(k));
        it->second.add(tau, value);
      }
    }
    balanced.emplace(tau, std::move(a));
  }

  // candidate pools, bucketed by color set over one enumeration pass
  std::map<std::vector<int>, std::vector<std::pair<Simplex, int>>> pools;
  {
    Skeleton skel(Box::cube(state.spec), state.spec.m + 1);
    for (const Simplex& s : simplices_of(skel, k)) {
      auto cols = detail::distinct_colors(s, state.coloring);
      if (!cols || !traces.count(*cols)) continue;
      pools[*cols].emplace_back(s, color_sign(ColorTuple(*cols), s, state.coloring));
    }
  }

  std::map<CubeFace, SimplexChain> new_corrections;
  std::map<Simplex, coeff_t> new_usage;
  for (const auto& [set, xi] : traces) {
    ColorTuple tuple(set);
    CorrectionPlan plan = plan_corrections(state, tuple, xi);
    std::map<Simplex, coeff_t> tuple_usage;
    auto partial = detail::realize_with_pool(tuple, plan.eta, pools[set],
                                             realization_sign, tuple_usage);
    for (auto& [sigma, chain] : partial) {
      auto [it, fresh] = new_corrections.emplace(sigma, SimplexChain(k));
      it->second += chain;
    }
    coeff_t tuple_max = 0;
    for (const auto& [s, u] : tuple_usage) {
      new_usage[s] = checked_add(new_usage[s], u);
      tuple_max = std::max(tuple_max, u);
    }
    if (record) {
      DescentTupleRecord rec;
      rec.tuple = set;
      rec.trace_norm = plan.trace_norm;
      rec.section_level = plan.section_level;
      rec.fill_sweeps = plan.fill.sweeps;
      rec.eta_norm = l1_norm(plan.eta);
      rec.pool_size = static_cast<std::int64_t>(pools[set].size());
      rec.max_usage = tuple_max;
      record->tuples.push_back(std::move(rec));
    }
  }

  // per-tuple balance identity at the new level: for every k-face of the
  // target, every color-set total of A(tau) + B(boundary tau) vanishes
  for (const CubeFace& tau : faces_of(target, k)) {
    SimplexChain total = balanced.at(tau);
    for (const auto& [sigma, w] : cube_boundary(tau).cells()) {
      auto it = new_corrections.find(sigma);
      if (it != new_corrections.end()) total += w * it->second;
    }
    for (const auto& [set, value] : detail::color_set_sums(total, state.coloring))
      if (value != 0)
        throw invariant_error("per-tuple balance identity failed at " + to_string(tau));
  }

  BalanceState next;
  next.spec = state.spec;
  next.coloring = state.coloring;
  next.flag = state.flag;
  next.level = k - 1;
  next.corrections = std::move(new_corrections);
  next.usage = state.usage;
  next.usage[k - 1] = new_usage;
  if (record) {
    record->level = k - 1;
    for (const auto& [s, u] : new_usage)
      record->max_usage = std::max(record->max_usage, u);
  }
  if (!verify_balanced(next))
    throw invariant_error("descent produced an unbalanced state");
  return next;
}

/// The realization sign is forced by the balance identity; both conventions
/// are tried once on a fixed reference instance and the survivor is frozen.
inline int realization_sign() {
  static const int frozen = [] {
    GridSpec spec(2, 1, 1);
    Coloring coloring(spec, {0, 1, 1, 0});
    BalanceState state = initial_state(spec, coloring);
    for (int sign : {+1, -1}) {
      try {
        descend_with_sign(state, sign, nullptr);
        return sign;
      } catch (const invariant_error&) {
      }
    }
    throw invariant_error("no realization sign satisfies the balance identity");
  }();
  return frozen;
}

inline BalanceState descend(const BalanceState& state, DescentLevelRecord* record = nullptr) {
  return descend_with_sign(state, realization_sign(), record);
}

/// Run the descent from the top level down to level 0.
inline BalanceState descend_to_bottom(const BalanceState& state, DescentTrace* trace = nullptr) {
  BalanceState cur = state;
  while (cur.level > 0) {
    DescentLevelRecord rec;
    cur = descend(cur, trace ? &rec : nullptr);
    if (trace) trace->levels.push_back(std::move(rec));
  }
  return cur;
}

}  // namespace cubecolor

#endif
