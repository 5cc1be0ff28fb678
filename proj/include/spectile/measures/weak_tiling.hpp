#pragma once

#include <string>

#include "spectile/core/defaults.hpp"
#include "spectile/measures/convolution.hpp"
#include "spectile/spectra/spectra.hpp"

namespace spectile {

/// Which indicator 1_R * mu should reproduce.
enum class WeakTilingTarget { Complement, WholeSpace };

struct WeakTilingReport {
  WeakTilingTarget target = WeakTilingTarget::Complement;
  double max_residual_inside = 0;   // over grid points in R
  double max_residual_outside = 0;  // over grid points off R
  DVec worst_inside, worst_outside;
  std::size_t points_checked = 0;
  std::size_t points_skipped = 0;  // within the margin of a discontinuity
  std::vector<DVec> support_violations;
  GridSpec grid;
  double margin = 0;

  double max_residual() const { return std::max(max_residual_inside, max_residual_outside); }
  bool pass(double tol) const { return max_residual() <= tol && support_violations.empty() && points_checked > 0; }
};

namespace detail {

/// True if x is within `margin` of a surface where 1_R * c jumps.
inline bool near_discontinuity(const Region& r, const MeasureComponent& c, const DVec& x, double margin) {
  const double reach = r.radius() + margin;
  return std::visit(
      [&](const auto& m) -> bool {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Atoms>) {
          for (const auto& p : m.points)
            if (norm(x - p) <= reach && r.near_boundary(x - p, margin)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, LatticeAtoms>) {
          bool hit = false;
          for (const auto& off : m.offsets) {
            const DVec o = to_double(off);
            m.lattice.for_each_in_ball(x - o, reach, [&](const std::vector<long>&, const DVec& p) {
              hit = hit || r.near_boundary(x - (p + o), margin);
            });
          }
          return hit;
        } else if constexpr (std::is_same_v<T, ProductLebesgue>) {
          // Slices vary by O(margin) where R's boundary is slanted and jump
          // where it is parallel to the Lebesgue directions.
          const double jump = std::sqrt(margin);
          const DVec xv = pick(x, m.point_axes);
          for (const auto& p : m.point_set.points_in_ball(xv, reach)) {
            const DVec s = xv - p;
            const double v = slice_volume(r, m.point_axes, s);
            for (std::size_t i = 0; i < s.size(); ++i)
              for (double sign : {-1.0, 1.0}) {
                DVec moved = s;
                moved[i] += sign * margin;
                const double w = slice_volume(r, m.point_axes, moved);
                if ((w > 0) != (v > 0) || std::abs(w - v) > jump) return true;
              }
          }
          return false;
        } else {
          return false;
        }
      },
      c);
}

/// Whether the slab {x_V = p} meets the open set Delta(R).
inline bool slab_meets_delta(const Region& r, const std::vector<std::size_t>& axes, const RVec& p) {
  if (r.is_polytope())
    return slice_polytope(r.difference_body().halfspaces(), axes, p, r.dim(), true).has_value();
  for (const auto& a : r.box_union().boxes())
    for (const auto& b : r.box_union().boxes()) {
      bool in = true;
      for (std::size_t i = 0; i < axes.size() && in; ++i)
        in = a.lo[axes[i]] - b.hi[axes[i]] < p[i] && p[i] < a.hi[axes[i]] - b.lo[axes[i]];
      if (in) return true;
    }
  return false;
}

/// Atoms of mu lying in Delta(R), where a weak tiling of the complement
/// cannot put mass.
inline std::vector<DVec> support_violations(const Region& r, const MeasureSpec& mu) {
  std::vector<DVec> out;
  const double reach = 2 * r.radius() + 1e-9;
  for (const auto& c : mu.components()) {
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, Atoms>) {
            for (std::size_t i = 0; i < m.points.size(); ++i) {
              if (norm(m.points[i]) > reach) continue;
              const RVec t = m.exact.empty() ? from_double(m.points[i]) : m.exact[i];
              if (r.overlap_positive(t)) out.push_back(m.points[i]);
            }
          } else if constexpr (std::is_same_v<T, LatticeAtoms>) {
            for (const auto& off : m.offsets)
              m.lattice.for_each_in_ball(-to_double(off), reach, [&](const std::vector<long>& k, const DVec&) {
                const RVec t = m.lattice.point(k) + off;
                if (m.exclude_origin && is_zero(t)) return;
                if (r.overlap_positive(t)) out.push_back(to_double(t));
              });
          } else if constexpr (std::is_same_v<T, ProductLebesgue>) {
            if (!m.point_set.is_rational()) {
              for (const auto& p : m.point_set.points_in_ball(DVec(m.point_axes.size(), 0.0), reach))
                if (slab_meets_delta(r, m.point_axes, from_double(p))) out.push_back(p);
              return;
            }
            m.point_set.for_each_exact_in_ball(DVec(m.point_axes.size(), 0.0), reach, [&](const RVec& p) {
              if (slab_meets_delta(r, m.point_axes, p)) out.push_back(to_double(p));
            });
          } else {
            out.push_back(DVec(r.dim(), 0.0));  // uniform mass charges every open set
          }
        },
        c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Grid test of 1_R * mu = 1_{R^c} (or = 1) away from discontinuities.
inline WeakTilingReport weak_tiling_verify(const Region& r, const MeasureSpec& mu, const GridSpec& grid,
                                           WeakTilingTarget target = WeakTilingTarget::Complement) {
  grid.validate(r.dim());
  WeakTilingReport report;
  report.target = target;
  report.grid = grid;
  report.margin = grid.margin;
  for (const auto& x : grid.points()) {
    bool skip = r.near_boundary(x, grid.margin);
    for (const auto& c : mu.components()) skip = skip || detail::near_discontinuity(r, c, x, grid.margin);
    if (skip) {
      ++report.points_skipped;
      continue;
    }
    ++report.points_checked;
    const double value = eval_convolution(r, mu, x);
    const bool inside = r.contains(x);
    const double expected = (target == WeakTilingTarget::WholeSpace || !inside) ? 1.0 : 0.0;
    const double residual = std::abs(value - expected);
    double& worst = inside ? report.max_residual_inside : report.max_residual_outside;
    DVec& where = inside ? report.worst_inside : report.worst_outside;
    if (where.empty() || residual > worst) {
      worst = residual;
      where = x;
    }
  }
  if (target == WeakTilingTarget::Complement) report.support_violations = detail::support_violations(r, mu);
  return report;
}

}  // namespace spectile
