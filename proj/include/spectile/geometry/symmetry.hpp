#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "spectile/geometry/polytope.hpp"

namespace spectile::geometry {

namespace detail {

inline RVec centroid_of(const std::vector<RVec>& all, const std::vector<std::size_t>& ids) {
  RVec c(all[0].size(), Rational(0));
  for (auto i : ids) c = c + all[i];
  for (auto& x : c) x /= static_cast<long>(ids.size());
  return c;
}

/// Index of `p` in the sorted vertex list, if present.
inline std::optional<std::size_t> find_vertex(const std::vector<RVec>& sorted, const RVec& p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
  if (it == sorted.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - sorted.begin());
}

/// Image of a vertex-index set under point reflection through `center`, or
/// nullopt if some image is not a vertex.
inline std::optional<std::vector<std::size_t>> reflect_ids(const std::vector<RVec>& verts,
                                                           const std::vector<std::size_t>& ids, const RVec& center) {
  std::vector<std::size_t> out;
  for (auto i : ids) {
    auto j = find_vertex(verts, scaled(center, Rational(2)) - verts[i]);
    if (!j) return std::nullopt;
    out.push_back(*j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// The point x with -P + x = P - x, if P is centrally symmetric. It is
/// necessarily the vertex centroid.
inline std::optional<RVec> center_of_symmetry(const Polytope& p) {
  const RVec& c = p.centroid();
  std::vector<std::size_t> all(p.vertices().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (!detail::reflect_ids(p.vertices(), all, c)) return std::nullopt;
  return c;
}

struct SymmetryReport {
  std::optional<RVec> body_center;
  /// Per facet: its center when the facet is centrally symmetric.
  std::vector<std::optional<RVec>> facet_centers;
  /// Per facet: index of the facet obtained by reflecting through body_center.
  std::vector<std::optional<std::size_t>> opposite_facet;
  /// Per facet F_i: tau_i with F_i = -F_i + tau_i after centering the body,
  /// i.e. the translation carrying the opposite facet onto F_i.
  std::vector<std::optional<RVec>> facet_pair_vectors;

  bool all_facets_symmetric() const {
    return std::all_of(facet_centers.begin(), facet_centers.end(), [](const auto& c) { return c.has_value(); });
  }
};

/// Point reflection through the facet's vertex centroid keeps the facet's
/// affine hull fixed, so symmetry is decided on vertex sets directly.
inline SymmetryReport facet_symmetry(const Polytope& p) {
  SymmetryReport report;
  report.body_center = center_of_symmetry(p);
  const auto& verts = p.vertices();
  const auto& facets = p.facet_vertices();
  for (const auto& f : facets) {
    const RVec c = detail::centroid_of(verts, f);
    const auto image = detail::reflect_ids(verts, f, c);
    report.facet_centers.push_back(image && *image == f ? std::optional<RVec>(c) : std::nullopt);
  }
  report.opposite_facet.assign(facets.size(), std::nullopt);
  report.facet_pair_vectors.assign(facets.size(), std::nullopt);
  if (report.body_center) {
    for (std::size_t i = 0; i < facets.size(); ++i) {
      const auto image = detail::reflect_ids(verts, facets[i], *report.body_center);
      auto it = std::find(facets.begin(), facets.end(), *image);
      if (it == facets.end()) continue;
      const std::size_t j = static_cast<std::size_t>(it - facets.begin());
      report.opposite_facet[i] = j;
      if (report.facet_centers[i])
        report.facet_pair_vectors[i] = detail::centroid_of(verts, facets[i]) - detail::centroid_of(verts, facets[j]);
    }
  }
  return report;
}

}  // namespace spectile::geometry
