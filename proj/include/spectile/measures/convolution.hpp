#pragma once

#include <optional>

#include "spectile/fourier/region.hpp"
#include "spectile/measures/measure.hpp"

namespace spectile {

namespace detail {

/// {w : (s on `fixed`, w on the other axes) satisfies hs}, or nullopt when
/// it has empty interior in the free coordinates or a constant constraint
/// fails (strictly, when `strict`).
inline std::optional<geometry::Polytope> slice_polytope(const std::vector<geometry::Halfspace>& hs,
                                                        const std::vector<std::size_t>& fixed, const RVec& s,
                                                        std::size_t d, bool strict) {
  const auto free = other_axes(fixed, d);
  std::vector<geometry::Halfspace> out;
  for (const auto& h : hs) {
    const Rational c = h.offset - dot(pick(h.normal, fixed), s);
    RVec n = pick(h.normal, free);
    if (is_zero(n)) {
      if (strict ? c <= 0 : c < 0) return std::nullopt;
      continue;
    }
    out.push_back({std::move(n), c});
  }
  try {
    return geometry::Polytope::from_halfspaces(out);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotFullDimensional) return std::nullopt;
    throw;
  }
}

/// Volume, in the coordinates off `fixed`, of the slice of R at s.
inline double slice_volume(const Region& r, const std::vector<std::size_t>& fixed, const DVec& s) {
  const std::size_t d = r.dim();
  const auto free = other_axes(fixed, d);
  if (!r.is_polytope()) {
    double total = 0;
    for (const auto& b : r.box_union().boxes_double()) {
      bool in = true;
      for (std::size_t i = 0; i < fixed.size() && in; ++i) in = s[i] >= b.lo[fixed[i]] && s[i] <= b.hi[fixed[i]];
      if (!in) continue;
      double v = 1;
      for (auto a : free) v *= b.hi[a] - b.lo[a];
      total += v;
    }
    return total;
  }
  const auto& hs = r.polytope().halfspaces();
  if (free.size() == 1) {
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (const auto& h : hs) {
      const DVec n = to_double(h.normal);
      double c = to_double(h.offset);
      for (std::size_t i = 0; i < fixed.size(); ++i) c -= n[fixed[i]] * s[i];
      const double a = n[free[0]];
      if (a > 0) hi = std::min(hi, c / a);
      else if (a < 0) lo = std::max(lo, c / a);
      else if (c < 0) return 0;
    }
    return std::max(0.0, hi - lo);
  }
  RVec exact;
  for (double v : s) exact.push_back(from_double(v));
  const auto slice = slice_polytope(hs, fixed, exact, d, false);
  return slice ? to_double(slice->volume()) : 0.0;
}

inline bool is_origin(const Lattice& l, const std::vector<long>& c, const RVec& offset) {
  return is_zero(l.point(c) + offset);
}

}  // namespace detail

/// (1_R * mu)(x) = mu(x - R) for a single component. Closed membership;
/// values on translated boundaries are not meaningful.
inline double eval_component(const Region& r, const MeasureComponent& c, const DVec& x) {
  const double reach = r.radius();
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        double total = 0;
        if constexpr (std::is_same_v<T, Atoms>) {
          if (norm(x) + reach > m.support_radius)
            throw Error(ErrorCode::WindowTooSmall, "atom list does not cover x - R");
          for (std::size_t i = 0; i < m.points.size(); ++i)
            if (r.contains(x - m.points[i])) total += m.weights[i];
        } else if constexpr (std::is_same_v<T, LatticeAtoms>) {
          for (std::size_t j = 0; j < m.offsets.size(); ++j) {
            const DVec o = to_double(m.offsets[j]);
            m.lattice.for_each_in_ball(x - o, reach, [&](const std::vector<long>& c, const DVec& p) {
              const DVec atom = p + o;
              if (!r.contains(x - atom)) return;
              if (m.exclude_origin && norm(atom) < 1e-9 && detail::is_origin(m.lattice, c, m.offsets[j])) return;
              total += m.weights[j];
            });
          }
        } else if constexpr (std::is_same_v<T, ProductLebesgue>) {
          const DVec xv = detail::pick(x, m.point_axes);
          for (const auto& p : m.point_set.points_in_ball(xv, reach))
            total += detail::slice_volume(r, m.point_axes, xv - p);
          total *= m.density;
        } else {
          total = m.density * to_double(r.measure());
        }
        return total;
      },
      c);
}

inline double eval_convolution(const Region& r, const MeasureSpec& mu, const DVec& x) {
  if (x.size() != r.dim() || mu.dim() != r.dim()) throw Error(ErrorCode::MalformedInput, "dimension mismatch");
  double total = 0;
  for (const auto& c : mu.components()) total += eval_component(r, c, x);
  return total;
}

}  // namespace spectile
