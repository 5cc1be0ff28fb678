#pragma once

#include <vector>

#include "spectile/geometry/polytope.hpp"

namespace spectile::geometry {

/// P - P. Its interior is the set of shifts t with vol(P & (P + t)) > 0.
inline Polytope difference_body(const Polytope& p) {
  const auto& v = p.vertices();
  std::vector<RVec> diffs;
  diffs.reserve(v.size() * v.size());
  for (const auto& a : v)
    for (const auto& b : v) diffs.push_back(a - b);
  return Polytope::from_vertices(diffs);
}

/// Exact volume of P & (P + t).
inline Rational overlap_volume(const Polytope& p, const RVec& t) {
  std::vector<Halfspace> hs = p.halfspaces();
  for (const auto& h : p.halfspaces()) hs.push_back({h.normal, h.offset + dot(h.normal, t)});
  const auto verts = vertices_from_halfspaces(hs, p.dim());
  if (verts.size() < p.dim() + 1) return 0;
  try {
    return Polytope::from_vertices(verts).volume();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotFullDimensional) return 0;
    throw;
  }
}

/// vol(P & (P + t)) > 0 without computing the volume: t in int(P - P).
inline bool overlap_positive(const Polytope& difference, const RVec& t) { return difference.contains_interior(t); }

}  // namespace spectile::geometry
