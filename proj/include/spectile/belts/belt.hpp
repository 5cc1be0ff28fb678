#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "spectile/geometry/symmetry.hpp"

namespace spectile::belts {

using geometry::Polytope;

/// Cyclic facet sequence generated by a subfacet. connecting[i] is the
/// subfacet shared by facets[i] and facets[i+1] (indices wrap), and
/// orientation[i] is +1 if it is a translate of the generator, -1 if it is a
/// translate of its reflection.
struct Belt {
  std::size_t generator = 0;  // index into face_lattice().subfacets()
  std::vector<std::size_t> facets;
  std::vector<std::size_t> connecting;
  std::vector<int> orientation;

  std::size_t length() const { return facets.size(); }
};

namespace detail {

inline std::vector<RVec> sorted_points(const Polytope& p, const std::vector<std::size_t>& ids, bool negate) {
  std::vector<RVec> pts;
  for (auto i : ids) pts.push_back(negate ? -p.vertices()[i] : p.vertices()[i]);
  std::sort(pts.begin(), pts.end());
  return pts;
}

/// True if b = a + t for some vector t. Translation preserves lexicographic
/// order, so sorted lists are compared elementwise.
inline bool is_translate(const std::vector<RVec>& a, const std::vector<RVec>& b) {
  if (a.size() != b.size()) return false;
  const RVec t = b[0] - a[0];
  for (std::size_t i = 1; i < a.size(); ++i)
    if (b[i] - a[i] != t) return false;
  return true;
}

inline std::size_t other_facet(const std::pair<std::size_t, std::size_t>& owners, std::size_t f) {
  return owners.first == f ? owners.second : owners.first;
}

/// Facet centers, requiring every facet to be centrally symmetric.
inline std::vector<RVec> facet_centers(const Polytope& p) {
  const auto report = geometry::facet_symmetry(p);
  std::vector<RVec> centers;
  for (const auto& c : report.facet_centers) {
    if (!c) throw Error(ErrorCode::PreconditionFailed, "facet not centrally symmetric; belt walk undefined");
    centers.push_back(*c);
  }
  return centers;
}

inline std::map<std::vector<std::size_t>, std::size_t> subfacet_index(const Polytope& p) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  const auto& subs = p.face_lattice().subfacets();
  for (std::size_t i = 0; i < subs.size(); ++i) index[subs[i].vertices] = i;
  return index;
}

/// Rotates the cycle so the smallest facet index comes first, followed by its
/// smaller neighbor, then rebuilds the connecting subfacets and orientations.
inline Belt canonical(const Polytope& p, const std::vector<std::size_t>& cycle,
                      const std::map<std::vector<std::size_t>, std::size_t>& index) {
  const std::size_t n = cycle.size();
  const std::size_t k = static_cast<std::size_t>(std::min_element(cycle.begin(), cycle.end()) - cycle.begin());
  const bool forward = cycle[(k + 1) % n] < cycle[(k + n - 1) % n];
  Belt belt;
  for (std::size_t i = 0; i < n; ++i) belt.facets.push_back(cycle[forward ? (k + i) % n : (k + n - i) % n]);
  const auto& fv = p.facet_vertices();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = fv[belt.facets[i]];
    const auto& b = fv[belt.facets[(i + 1) % n]];
    std::vector<std::size_t> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    belt.connecting.push_back(index.at(common));
  }
  const auto& subs = p.face_lattice().subfacets();
  belt.generator = *std::min_element(belt.connecting.begin(), belt.connecting.end(), [&](auto x, auto y) {
    return subs[x].vertices < subs[y].vertices;
  });
  const auto g = sorted_points(p, subs[belt.generator].vertices, false);
  const auto minus_g = sorted_points(p, subs[belt.generator].vertices, true);
  for (auto s : belt.connecting) {
    const auto pts = sorted_points(p, subs[s].vertices, false);
    if (is_translate(g, pts))
      belt.orientation.push_back(1);
    else if (is_translate(minus_g, pts))
      belt.orientation.push_back(-1);
    else
      throw Error(ErrorCode::PreconditionFailed, "belt subfacet is not a translate of the generator");
  }
  return belt;
}

inline Belt walk(const Polytope& p, std::size_t g, const std::vector<RVec>& centers,
                 const std::map<std::vector<std::size_t>, std::size_t>& index) {
  const auto& lat = p.face_lattice();
  const auto& subs = lat.subfacets();
  const std::size_t start = lat.subfacet_facets[g].first;
  std::vector<std::size_t> facets{start};
  std::size_t sub = g;
  std::size_t cur = lat.subfacet_facets[g].second;
  while (cur != start) {
    if (facets.size() > p.num_facets())
      throw Error(ErrorCode::MalformedInput, "belt walk did not close");
    facets.push_back(cur);
    const auto image = geometry::detail::reflect_ids(p.vertices(), subs[sub].vertices, centers[cur]);
    auto it = image ? index.find(*image) : index.end();
    if (it == index.end()) throw Error(ErrorCode::PreconditionFailed, "reflected subfacet is not a face");
    sub = it->second;
    cur = other_facet(lat.subfacet_facets[sub], cur);
  }
  return canonical(p, facets, index);
}

}  // namespace detail

/// Belt generated by subfacet `g` (index into face_lattice().subfacets()).
/// Every facet must be centrally symmetric.
inline Belt belt_of(const Polytope& p, std::size_t g) {
  if (p.dim() < 2) throw Error(ErrorCode::PreconditionFailed, "belts need dimension >= 2");
  if (g >= p.face_lattice().subfacets().size()) throw Error(ErrorCode::MalformedInput, "subfacet index out of range");
  return detail::walk(p, g, detail::facet_centers(p), detail::subfacet_index(p));
}

/// One belt per class of subfacets, ordered by first subfacet index.
inline std::vector<Belt> all_belts(const Polytope& p) {
  if (p.dim() < 2) return {};
  const auto centers = detail::facet_centers(p);
  const auto index = detail::subfacet_index(p);
  std::vector<bool> seen(p.face_lattice().subfacets().size(), false);
  std::vector<Belt> out;
  for (std::size_t s = 0; s < seen.size(); ++s) {
    if (seen[s]) continue;
    out.push_back(detail::walk(p, s, centers, index));
    for (auto c : out.back().connecting) seen[c] = true;
  }
  return out;
}

}  // namespace spectile::belts
