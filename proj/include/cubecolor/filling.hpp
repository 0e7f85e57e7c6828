#ifndef CUBECOLOR_FILLING_HPP
#define CUBECOLOR_FILLING_HPP

#include "algebra.hpp"

namespace cubecolor {

struct SweepRecord {
  int axis = 0;
  int level = 0;          // chosen section level
  coeff_t alpha_norm = 0;  // norm of the residual entering the sweep
  coeff_t beta_norm = 0;   // norm of the primitive produced by the sweep
};

/// Output of the cocycle filling solver: a primitive beta with
/// coboundary(beta) = alpha and norm(beta) <= (d'-k+1) * n * norm(alpha).
struct FillResult {
  CubeChain beta;
  std::vector<SweepRecord> sweeps;
  coeff_t bound = 0;
  std::vector<coeff_t> residual_norms;  // norms of alpha_0, alpha_1, ...
};

namespace detail {

inline void require_cocycle(const CubeChain& alpha, const Box& region, int k) {
  CubeChain d = coboundary(alpha, region, k);
  if (!d.empty())
    throw cocycle_error("input cochain is not a cocycle (nonzero coboundary on " +
                        std::to_string(d.support_size()) + " cells)");
}

}  // namespace detail

/// Smallest level t in [0, len] minimizing the norm of the restriction of
/// alpha to the section x_axis = t. Cells with the axis free lie in no
/// section, so the minimum over the len+1 sections is at most norm/(len+1).
inline int choose_section(const CubeChain& alpha, const Box& region, int axis) {
  int slot = region.axis_slot(axis);
  if (slot < 0) throw dimension_error("section axis is not free in the region");
  std::vector<coeff_t> norms(region.len[slot] + 1, 0);
  for (const auto& [cell, v] : alpha.cells()) {
    if (cell.has_free(axis)) continue;
    int t = cell.anchor[axis] - region.anchor[axis];
    norms[t] = checked_add(norms[t], v < 0 ? -v : v);
  }
  int best = 0;
  for (int t = 1; t < static_cast<int>(norms.size()); ++t)
    if (norms[t] < norms[best]) best = t;
  return best;  // level relative to the region's anchor
}

/// One sweep of the filling construction along an axis: pick the cheapest
/// section, take prism values toward it as the partial primitive beta_i, and
/// subtract its coboundary. The residual vanishes on every face with the
/// swept axis free and copies the section's values on parallel sections, so
/// its norm never grows.
inline std::pair<CubeChain, CubeChain> sweep(const CubeChain& alpha, const Box& region,
                                             int axis, int* chosen_level = nullptr) {
  const int k = alpha.dim();
  detail::require_cocycle(alpha, region, k);
  const int t = choose_section(alpha, region, axis);
  if (chosen_level) *chosen_level = t;
  const int abs_level = region.anchor[axis] + t;

  CubeChain beta(k - 1);
  for (const CubeFace& tau : faces_of(region, k - 1)) {
    if (tau.has_free(axis)) continue;
    beta.add(tau, prism_value(alpha, tau, axis, abs_level));
  }
  CubeChain next = alpha - coboundary(beta, region, k - 1);

  for (const auto& [cell, v] : next.cells())
    if (cell.has_free(axis))
      throw invariant_error("sweep residual survives on a face with the swept axis free");
  int slot = region.axis_slot(axis);
  if (l1_norm(beta) > checked_mul(region.len[slot], l1_norm(alpha)))
    throw invariant_error("sweep primitive exceeded its norm bound");
  if (l1_norm(next) > l1_norm(alpha))
    throw invariant_error("sweep residual norm increased");
  return {beta, next};
}

/// Solve coboundary(beta) = alpha for a k-cocycle alpha on the cubical
/// partition of a box, sweeping the box's axes in ascending order. Any
/// k-subset of the axes meets the first d'-k+1 of them, so at most that many
/// sweeps empty the residual.
inline FillResult fill(const CubeChain& alpha, const Box& region, int k = -1) {
  if (k < 0) k = alpha.dim();
  if (k < 0) throw dimension_error("cocycle dimension unknown");
  if (k == 0)
    throw dimension_error("filling a 0-cocycle is unsupported (it is constant on a "
                          "connected box and has no primitive)");
  if (k > region.dim())
    throw dimension_error("cocycle dimension exceeds region dimension");
  for (const auto& [cell, v] : alpha.cells())
    if (!region.contains_face(cell))
      throw membership_error("cocycle support leaves the region");
  detail::require_cocycle(alpha, region, k);

  FillResult out;
  out.beta = CubeChain(k - 1);
  out.bound = checked_mul(region.dim() - k + 1,
                          checked_mul(region.max_len(), l1_norm(alpha)));
  out.residual_norms.push_back(l1_norm(alpha));

  CubeChain residual = alpha;
  const int max_sweeps = region.dim() - k + 1;
  for (int i = 0; i < max_sweeps && !residual.empty(); ++i) {
    int axis = region.axes[i];
    SweepRecord rec;
    rec.axis = axis;
    rec.alpha_norm = l1_norm(residual);
    auto [beta_i, next] = sweep(residual, region, axis, &rec.level);
    rec.beta_norm = l1_norm(beta_i);
    out.sweeps.push_back(rec);
    out.beta += beta_i;
    residual = next;
    out.residual_norms.push_back(l1_norm(residual));
  }
  if (!residual.empty())
    throw invariant_error("filling left a nonzero residual after all sweeps");
  if (l1_norm(out.beta) > out.bound)
    throw invariant_error("filling primitive exceeded the certified bound");
  // final self-check through the boundary pairing
  for (const CubeFace& tau : faces_of(region, k))
    if (pairing(out.beta, cube_boundary(tau)) != alpha[tau])
      throw invariant_error("filling primitive fails the coboundary equation");
  return out;
}

}  // namespace cubecolor

#endif
