#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "spectile/core/error.hpp"
#include "spectile/core/linalg.hpp"
#include "spectile/core/rational.hpp"

namespace spectile::geometry {

/// A facet of a full-dimensional hull: {x : normal . x <= offset} is the
/// supporting halfspace; `normal` is primitive integral.
struct HullFacet {
  RVec normal;
  Rational offset;
  std::vector<std::size_t> vertices;  // indices into HullResult::vertices, sorted
};

struct HullResult {
  std::vector<RVec> vertices;  // extreme points, lexicographically sorted
  std::vector<HullFacet> facets;
};

namespace detail {

inline std::pair<RVec, Rational> plane_through(const std::vector<RVec>& pts, const std::vector<std::size_t>& ids,
                                               const RVec& interior) {
  const std::size_t d = interior.size();
  RMat diffs;
  for (std::size_t i = 1; i < ids.size(); ++i) diffs.push_back(pts[ids[i]] - pts[ids[0]]);
  auto ns = linalg::nullspace(diffs, d);
  RVec n = primitive(ns.at(0));
  Rational b = dot(n, pts[ids[0]]);
  if (dot(n, interior) > b) {
    n = -n;
    b = -b;
  }
  return {n, b};
}

struct SimplexFacet {
  std::vector<std::size_t> verts;
  RVec normal;
  Rational offset;
  bool alive = true;
};

}  // namespace detail

/// Exact convex hull of a finite rational point set in R^d (d >= 1).
/// Throws NotFullDimensional when the affine hull is a proper subspace.
inline HullResult convex_hull(const std::vector<RVec>& input) {
  if (input.empty()) throw Error(ErrorCode::MalformedInput, "empty point set");
  const std::size_t d = input[0].size();
  if (d == 0) throw Error(ErrorCode::MalformedInput, "zero-dimensional points");
  for (const auto& p : input)
    if (p.size() != d) throw Error(ErrorCode::MalformedInput, "points have inconsistent dimension");

  const std::set<RVec> unique(input.begin(), input.end());
  const std::vector<RVec> pts(unique.begin(), unique.end());

  HullResult result;
  if (d == 1) {
    if (pts.size() < 2) throw Error(ErrorCode::NotFullDimensional, "interval needs two distinct points");
    result.vertices = {pts.front(), pts.back()};
    result.facets.push_back({RVec{Rational(-1)}, -pts.front()[0], {0}});
    result.facets.push_back({RVec{Rational(1)}, pts.back()[0], {1}});
    return result;
  }

  // Initial simplex: greedy affinely independent subset.
  std::vector<std::size_t> simplex{0};
  RMat span;
  for (std::size_t i = 1; i < pts.size() && simplex.size() < d + 1; ++i) {
    RMat trial = span;
    trial.push_back(pts[i] - pts[0]);
    if (linalg::rank(trial) == trial.size()) {
      span = std::move(trial);
      simplex.push_back(i);
    }
  }
  if (simplex.size() < d + 1) throw Error(ErrorCode::NotFullDimensional, "affine hull has dimension < d");

  RVec interior(d, Rational(0));
  for (auto i : simplex) interior = interior + pts[i];
  for (auto& x : interior) x /= static_cast<long>(d + 1);

  std::vector<detail::SimplexFacet> facets;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> ridges;

  auto ridge_keys = [](const std::vector<std::size_t>& verts) {
    std::vector<std::vector<std::size_t>> keys;
    for (std::size_t skip = 0; skip < verts.size(); ++skip) {
      std::vector<std::size_t> r;
      for (std::size_t j = 0; j < verts.size(); ++j)
        if (j != skip) r.push_back(verts[j]);
      keys.push_back(r);
    }
    return keys;
  };

  auto add_facet = [&](std::vector<std::size_t> verts) {
    std::sort(verts.begin(), verts.end());
    auto [n, b] = detail::plane_through(pts, verts, interior);
    const std::size_t id = facets.size();
    for (auto& key : ridge_keys(verts)) ridges[key].push_back(id);
    facets.push_back({std::move(verts), std::move(n), std::move(b), true});
  };

  auto remove_facet = [&](std::size_t id) {
    facets[id].alive = false;
    for (auto& key : ridge_keys(facets[id].verts)) {
      auto& owners = ridges[key];
      owners.erase(std::remove(owners.begin(), owners.end(), id), owners.end());
      if (owners.empty()) ridges.erase(key);
    }
  };

  for (std::size_t skip = 0; skip < simplex.size(); ++skip) {
    std::vector<std::size_t> verts;
    for (std::size_t j = 0; j < simplex.size(); ++j)
      if (j != skip) verts.push_back(simplex[j]);
    add_facet(verts);
  }

  std::vector<bool> in_simplex(pts.size(), false);
  for (auto i : simplex) in_simplex[i] = true;

  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (in_simplex[p]) continue;
    std::vector<bool> visible(facets.size(), false);
    std::vector<std::size_t> visible_ids;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (facets[f].alive && dot(facets[f].normal, pts[p]) > facets[f].offset) {
        visible[f] = true;
        visible_ids.push_back(f);
      }
    }
    if (visible_ids.empty()) continue;

    std::vector<std::vector<std::size_t>> horizon;
    for (auto f : visible_ids) {
      for (auto& key : ridge_keys(facets[f].verts)) {
        const auto& owners = ridges.at(key);
        bool neighbour_visible = true;
        for (auto o : owners)
          if (o != f && !visible[o]) neighbour_visible = false;
        if (!neighbour_visible) horizon.push_back(key);
      }
    }
    for (auto f : visible_ids) remove_facet(f);
    for (auto& ridge : horizon) {
      auto verts = ridge;
      verts.push_back(p);
      add_facet(verts);
    }
  }

  // Merge coplanar simplices into facets.
  std::map<std::pair<RVec, Rational>, int> planes;
  std::set<std::size_t> candidates;
  for (const auto& f : facets) {
    if (!f.alive) continue;
    planes.emplace(std::make_pair(f.normal, f.offset), 0);
    candidates.insert(f.verts.begin(), f.verts.end());
  }

  std::vector<std::size_t> extreme;
  for (auto c : candidates) {
    RMat tight;
    for (const auto& [plane, unused] : planes)
      if (dot(plane.first, pts[c]) == plane.second) tight.push_back(plane.first);
    if (linalg::rank(tight) == d) extreme.push_back(c);
  }
  for (auto c : extreme) result.vertices.push_back(pts[c]);  // pts sorted, so vertices sorted

  for (const auto& [plane, unused] : planes) {
    HullFacet facet{plane.first, plane.second, {}};
    for (std::size_t v = 0; v < result.vertices.size(); ++v)
      if (dot(plane.first, result.vertices[v]) == plane.second) facet.vertices.push_back(v);
    result.facets.push_back(std::move(facet));
  }
  return result;
}

/// Halfspace {x : normal . x <= offset}.
struct Halfspace {
  RVec normal;
  Rational offset;
};

namespace detail {

/// Floating screen for a d-subset of constraints: true only when the
/// subset's intersection point exists and violates another constraint by a
/// wide margin. Singular or borderline cases are left to the exact path.
inline bool clearly_infeasible(const std::vector<DVec>& normals, const std::vector<double>& offsets,
                               const std::vector<double>& scales, const std::vector<std::size_t>& idx) {
  const std::size_t d = idx.size();
  std::vector<DVec> a(d);
  for (std::size_t r = 0; r < d; ++r) {
    a[r] = normals[idx[r]];
    a[r].push_back(offsets[idx[r]]);
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-9) return false;
    std::swap(a[p], a[c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= d; ++j) a[r][j] -= f * a[c][j];
    }
  }
  DVec x(d);
  double size = 1;
  for (std::size_t r = 0; r < d; ++r) {
    x[r] = a[r][d] / a[r][r];
    size = std::max(size, std::abs(x[r]));
  }
  for (std::size_t i = 0; i < normals.size(); ++i)
    if (dot(normals[i], x) - offsets[i] > 1e-6 * scales[i] * size + 1e-9 * std::abs(offsets[i])) return true;
  return false;
}

}  // namespace detail

/// All vertices of {x : A x <= b} by enumerating d-subsets of constraints.
/// Returns an empty list when the intersection has no vertices.
inline std::vector<RVec> vertices_from_halfspaces(const std::vector<Halfspace>& hs, std::size_t d) {
  std::set<RVec> found;
  const std::size_t m = hs.size();
  if (m < d) return {};
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  std::vector<DVec> normals_d;
  std::vector<double> offsets_d, scales;
  for (const auto& h : hs) {
    normals_d.push_back(to_double(h.normal));
    offsets_d.push_back(to_double(h.offset));
    scales.push_back(norm(normals_d.back()));
  }
  while (true) {
    if (detail::clearly_infeasible(normals_d, offsets_d, scales, idx)) {
      std::size_t k = d;
      while (k > 0 && idx[k - 1] == m - d + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < d; ++j) idx[j] = idx[j - 1] + 1;
      continue;
    }
    RMat a;
    RVec b;
    for (auto i : idx) {
      a.push_back(hs[i].normal);
      b.push_back(hs[i].offset);
    }
    if (auto x = linalg::solve(a, b)) {
      bool feasible = true;
      for (const auto& h : hs)
        if (dot(h.normal, *x) > h.offset) {
          feasible = false;
          break;
        }
      if (feasible) found.insert(*x);
    }
    std::size_t k = d;
    while (k > 0 && idx[k - 1] == m - d + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {found.begin(), found.end()};
}

/// True when the normals positively span R^d, i.e. {x : A x <= b} is
/// bounded for every b.
inline bool normals_positively_span(const std::vector<Halfspace>& hs, std::size_t d) {
  std::vector<RVec> normals;
  for (const auto& h : hs) normals.push_back(h.normal);
  normals.push_back(RVec(d, Rational(0)));
  try {
    const auto hull = convex_hull(normals);
    const RVec origin(d, Rational(0));
    for (const auto& f : hull.facets)
      if (!(f.offset > 0)) return false;
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace spectile::geometry
