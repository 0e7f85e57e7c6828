#ifndef CUBECOLOR_CERTIFICATE_HPP
#define CUBECOLOR_CERTIFICATE_HPP

#include <deque>

#include "balancing.hpp"

namespace cubecolor {

/// Constructive witness that one color is used on many vertices: the
/// balanced 0-chains A(v) of the bottom-level vertices all carry the same
/// per-color totals x_c summing to 1, so a color with nonzero total appears
/// in every support. One support vertex per v is recorded, and the measured
/// incidence bound caps how many v can share a witness.
struct Certificate {
  int color = 0;
  std::map<int, coeff_t> x;          // nonzero per-color totals
  std::vector<Vec> witnesses;        // distinct, sorted, all colored `color`
  coeff_t incidence_bound = 1;
  // audit data: per bottom-level vertex, the support of A(v) with coefficients
  std::map<Vec, std::vector<std::pair<Vec, coeff_t>>> per_vertex_support;
};

inline coeff_t lower_bound(const Certificate& cert) {
  return static_cast<coeff_t>(cert.witnesses.size());
}

namespace detail {

// Bottom-level vertices in breadth-first order from the box anchor.
inline std::vector<Vec> bfs_vertices(const Box& box) {
  std::vector<Vec> order;
  std::set<Vec> seen;
  std::deque<Vec> queue;
  queue.push_back(box.anchor);
  seen.insert(box.anchor);
  while (!queue.empty()) {
    Vec v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (size_t slot = 0; slot < box.axes.size(); ++slot) {
      int j = box.axes[slot];
      for (int step : {-1, +1}) {
        Vec w = v;
        w[j] += step;
        if (w[j] < box.anchor[j] || w[j] > box.anchor[j] + box.len[slot]) continue;
        if (seen.insert(w).second) queue.push_back(w);
      }
    }
  }
  return order;
}

inline std::map<int, coeff_t> color_totals(const SimplexChain& a, const Coloring& coloring) {
  std::map<int, coeff_t> x;
  for (const auto& [s, v] : a.cells()) {
    auto [it, fresh] = x.emplace(coloring.at(s.verts[0]), 0);
    it->second = checked_add(it->second, v);
  }
  for (auto it = x.begin(); it != x.end();)
    it = (it->second == 0) ? x.erase(it) : std::next(it);
  return x;
}

// 1 + the heaviest load of correction 1-simplices at any vertex of the given
// color; a bottom-level vertex can only reach a witness through itself or
// through a correction edge at the witness.
inline coeff_t incidence_bound_for(const BalanceState& state, int color) {
  std::map<Vec, coeff_t> load;
  auto it = state.usage.find(0);
  if (it != state.usage.end()) {
    for (const auto& [edge, count] : it->second)
      for (const Vec& w : edge.verts)
        if (state.coloring.at(w) == color) {
          auto [lt, fresh] = load.emplace(w, 0);
          lt->second = checked_add(lt->second, count);
        }
  }
  coeff_t worst = 0;
  for (const auto& [w, c] : load) worst = std::max(worst, c);
  return checked_add(worst, 1);
}

}  // namespace detail

/// Walk the bottom-level vertices, check that the per-color totals are
/// vertex-independent and sum to 1, pick the smallest color with a nonzero
/// total, and record one support witness per vertex.
inline Certificate extract_certificate(const BalanceState& state) {
  if (state.level != 0)
    throw dimension_error("certificates are extracted at level 0");
  if (!verify_balanced(state))
    throw invariant_error("certificate extraction requires a balanced state");
  const Box& bottom = state.flag.big_face(0);

  Certificate cert;
  bool first = true;
  std::set<Vec> witnesses;
  for (const Vec& v : detail::bfs_vertices(bottom)) {
    SimplexChain a = balanced_chain(state, CubeFace(v, {}));
    coeff_t total = 0;
    for (const auto& [s, w] : a.cells()) total = checked_add(total, w);
    if (total != 1)
      throw invariant_error("balanced 0-chain coefficients do not sum to 1 at " +
                            to_string(v));
    auto x = detail::color_totals(a, state.coloring);
    if (first) {
      cert.x = x;
      first = false;
    } else if (x != cert.x) {
      throw invariant_error("per-color totals vary across bottom-level vertices");
    }
    cert.per_vertex_support[v] = {};
    for (const auto& [s, w] : a.cells())
      cert.per_vertex_support[v].emplace_back(s.verts[0], w);
  }
  if (cert.x.empty())
    throw invariant_error("no color has a nonzero total (totals must sum to 1)");
  cert.color = cert.x.begin()->first;  // smallest color id with nonzero total

  for (const auto& [v, support] : cert.per_vertex_support) {
    const Vec* pick = nullptr;
    for (const auto& [w, coeff] : support)
      if (state.coloring.at(w) == cert.color && (!pick || w < *pick)) pick = &w;
    if (!pick)
      throw invariant_error("no witness of the chosen color in a support");
    witnesses.insert(*pick);
  }
  cert.witnesses.assign(witnesses.begin(), witnesses.end());
  cert.incidence_bound = detail::incidence_bound_for(state, cert.color);

  coeff_t vertices = 1;
  for (int len : bottom.len) vertices = checked_mul(vertices, len + 1);
  if (checked_mul(lower_bound(cert), cert.incidence_bound) < vertices)
    throw invariant_error("witness count times incidence bound fell short");
  return cert;
}

/// Re-derive everything from the state and compare against the certificate;
/// also check the witness count against the actual color usage. Returns
/// false instead of throwing, so tampered certificates report cleanly.
inline bool verify_certificate(const GridSpec& spec, const Coloring& coloring,
                               const BalanceState& state, const Certificate& cert) {
  try {
    if (state.level != 0 || !(state.spec == spec)) return false;
    if (!verify_balanced(state)) return false;
    const Box& bottom = state.flag.big_face(0);

    std::map<int, coeff_t> x;
    std::set<Vec> expected_witnesses;
    bool first = true;
    for (const CubeFace& vf : faces_of(bottom, 0)) {
      SimplexChain a = balanced_chain(state, vf);
      coeff_t total = 0;
      for (const auto& [s, w] : a.cells()) total = checked_add(total, w);
      if (total != 1) return false;
      auto xv = detail::color_totals(a, coloring);
      if (first) {
        x = xv;
        first = false;
      } else if (xv != x) {
        return false;
      }
      const Vec* pick = nullptr;
      for (const auto& [s, w] : a.cells()) {
        if (coloring.at(s.verts[0]) != cert.color) continue;
        if (!pick || s.verts[0] < *pick) pick = &s.verts[0];
      }
      if (!pick) return false;
      expected_witnesses.insert(*pick);
    }
    if (x != cert.x) return false;
    coeff_t sum = 0;
    for (const auto& [c, v] : cert.x) sum = checked_add(sum, v);
    if (sum != 1) return false;
    auto it = cert.x.find(cert.color);
    if (it == cert.x.end() || it->second == 0) return false;
    if (cert.x.begin()->first != cert.color) return false;

    std::set<Vec> got(cert.witnesses.begin(), cert.witnesses.end());
    if (got != expected_witnesses) return false;
    for (const Vec& w : cert.witnesses)
      if (coloring.at(w) != cert.color) return false;

    if (cert.incidence_bound != detail::incidence_bound_for(state, cert.color))
      return false;
    coeff_t vertices = 1;
    for (int len : bottom.len) vertices = checked_mul(vertices, len + 1);
    if (checked_mul(lower_bound(cert), cert.incidence_bound) < vertices) return false;

    coeff_t used = 0;
    for (int c : coloring.colors)
      if (c == cert.color) ++used;
    if (used < lower_bound(cert)) return false;
    return true;
  } catch (const error&) {
    return false;
  }
}

}  // namespace cubecolor

#endif
