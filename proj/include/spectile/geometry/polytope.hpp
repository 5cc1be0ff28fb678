#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "spectile/core/error.hpp"
#include "spectile/core/linalg.hpp"
#include "spectile/core/rational.hpp"
#include "spectile/geometry/hull.hpp"

namespace spectile::geometry {

struct Face {
  int dim = 0;
  std::vector<std::size_t> vertices;  // sorted indices into Polytope::vertices()
  RVec supporting_normal;             // witness: the face is argmax of this normal
};

struct FaceLattice {
  /// faces_by_dim[k] holds the k-dimensional faces, 0 <= k <= d-1.
  std::vector<std::vector<Face>> faces_by_dim;
  /// children[k][i]: indices into faces_by_dim[k-1] of the facets of face i.
  std::vector<std::vector<std::vector<std::size_t>>> children;
  /// For each subfacet (faces_by_dim[d-2]), its two incident facets.
  std::vector<std::pair<std::size_t, std::size_t>> subfacet_facets;

  const std::vector<Face>& facets() const { return faces_by_dim.back(); }
  const std::vector<Face>& subfacets() const {
    static const std::vector<Face> none;
    return faces_by_dim.size() >= 2 ? faces_by_dim[faces_by_dim.size() - 2] : none;
  }
  std::size_t count(int k) const { return faces_by_dim.at(static_cast<std::size_t>(k)).size(); }
};

/// Convex polytope with nonempty interior. Holds an irredundant vertex list
/// and the facet halfspaces; the face lattice and triangulation are built on
/// first use and cached. Instances are immutable and safe to share.
class Polytope {
 public:
  static Polytope from_vertices(const std::vector<RVec>& points) { return Polytope(convex_hull(points)); }

  static Polytope from_halfspaces(const std::vector<Halfspace>& hs) {
    if (hs.empty()) throw Error(ErrorCode::MalformedInput, "no halfspaces");
    const std::size_t d = hs[0].normal.size();
    for (const auto& h : hs) {
      if (h.normal.size() != d) throw Error(ErrorCode::MalformedInput, "halfspace normals differ in length");
      if (is_zero(h.normal)) throw Error(ErrorCode::MalformedInput, "zero halfspace normal");
    }
    if (!normals_positively_span(hs, d)) throw Error(ErrorCode::Unbounded, "halfspace intersection is not compact");
    const auto verts = vertices_from_halfspaces(hs, d);
    if (verts.empty()) throw Error(ErrorCode::NotFullDimensional, "halfspace intersection is empty");
    return from_vertices(verts);
  }

  std::size_t dim() const { return vertices_[0].size(); }
  const std::vector<RVec>& vertices() const { return vertices_; }
  const std::vector<DVec>& vertices_double() const { return vertices_double_; }
  /// Facet halfspaces, aligned with face_lattice().facets().
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  std::size_t num_facets() const { return halfspaces_.size(); }
  const std::vector<std::vector<std::size_t>>& facet_vertices() const { return facet_vertices_; }

  /// Vertex centroid.
  const RVec& centroid() const { return centroid_; }

  const FaceLattice& face_lattice() const {
    std::call_once(cache_->lattice_once, [this] { cache_->lattice = build_lattice(); });
    return cache_->lattice;
  }

  /// Simplices (as d+1 points) covering the polytope with disjoint
  /// interiors: each facet is pulled from its lowest-index vertex and the
  /// result coned to the vertex centroid.
  const std::vector<std::vector<RVec>>& triangulation() const {
    std::call_once(cache_->tri_once, [this] { cache_->triangulation = build_triangulation(); });
    return cache_->triangulation;
  }

  const Rational& volume() const {
    std::call_once(cache_->volume_once, [this] {
      Rational total = 0;
      const std::size_t d = dim();
      for (const auto& s : triangulation()) {
        RMat m;
        for (std::size_t i = 1; i <= d; ++i) m.push_back(s[i] - s[0]);
        total += abs(linalg::determinant(m));
      }
      Rational fact = 1;
      for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<long>(i);
      cache_->volume = total / fact;
    });
    return cache_->volume;
  }

  bool contains(const RVec& x) const {
    for (const auto& h : halfspaces_)
      if (dot(h.normal, x) > h.offset) return false;
    return true;
  }

  bool contains_interior(const RVec& x) const {
    for (const auto& h : halfspaces_)
      if (!(dot(h.normal, x) < h.offset)) return false;
    return true;
  }

  /// Floating membership of the polytope dilated outward by `slack`
  /// (Euclidean distance to each facet plane); negative slack shrinks.
  bool contains(const DVec& x, double slack = 0.0) const {
    for (std::size_t i = 0; i < halfspaces_.size(); ++i)
      if (dot(unit_normals_[i], x) > unit_offsets_[i] + slack) return false;
    return true;
  }

  /// Largest distance from the origin to a vertex.
  double radius() const {
    double r = 0;
    for (const auto& v : vertices_double_) r = std::max(r, norm(v));
    return r;
  }

  Polytope translated(const RVec& t) const {
    std::vector<RVec> moved;
    for (const auto& v : vertices_) moved.push_back(v + t);
    return from_vertices(moved);
  }

  /// Image under x -> A x + b.
  Polytope transformed(const RMat& a, const RVec& b) const {
    std::vector<RVec> moved;
    for (const auto& v : vertices_) moved.push_back(linalg::multiply(a, v) + b);
    return from_vertices(moved);
  }

  std::vector<std::size_t> facets_containing(const std::vector<std::size_t>& face_vertices) const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < facet_vertices_.size(); ++f)
      if (std::includes(facet_vertices_[f].begin(), facet_vertices_[f].end(), face_vertices.begin(),
                        face_vertices.end()))
        out.push_back(f);
    return out;
  }

 private:
  explicit Polytope(HullResult hull) : cache_(std::make_shared<Cache>()) {
    vertices_ = std::move(hull.vertices);
    for (const auto& v : vertices_) vertices_double_.push_back(to_double(v));
    for (auto& f : hull.facets) {
      halfspaces_.push_back({f.normal, f.offset});
      facet_vertices_.push_back(std::move(f.vertices));
      const DVec n = to_double(f.normal);
      const double len = norm(n);
      unit_normals_.push_back(scaled(n, 1.0 / len));
      unit_offsets_.push_back(to_double(f.offset) / len);
    }
    centroid_ = RVec(dim(), Rational(0));
    for (const auto& v : vertices_) centroid_ = centroid_ + v;
    for (auto& x : centroid_) x /= static_cast<long>(vertices_.size());
  }

  std::vector<RVec> points_of(const std::vector<std::size_t>& ids) const {
    std::vector<RVec> pts;
    for (auto i : ids) pts.push_back(vertices_[i]);
    return pts;
  }

  FaceLattice build_lattice() const {
    const std::size_t d = dim();
    FaceLattice lat;
    lat.faces_by_dim.resize(d);
    lat.children.resize(d);

    for (std::size_t f = 0; f < facet_vertices_.size(); ++f)
      lat.faces_by_dim[d - 1].push_back({static_cast<int>(d - 1), facet_vertices_[f], halfspaces_[f].normal});

    for (std::size_t k = d - 1; k-- > 0;) {
      std::set<std::vector<std::size_t>> seen;
      auto& level = lat.faces_by_dim[k];
      if (k == 0) {
        for (std::size_t v = 0; v < vertices_.size(); ++v) seen.insert({v});
      } else {
        for (const auto& upper : lat.faces_by_dim[k + 1]) {
          for (const auto& facet : facet_vertices_) {
            std::vector<std::size_t> common;
            std::set_intersection(upper.vertices.begin(), upper.vertices.end(), facet.begin(), facet.end(),
                                  std::back_inserter(common));
            if (common.size() < k + 1 || common.size() == upper.vertices.size() || seen.count(common)) continue;
            if (linalg::affine_rank(points_of(common)) == k) seen.insert(common);
          }
        }
      }
      for (const auto& verts : seen) {
        RVec normal(d, Rational(0));
        for (auto f : facets_containing(verts)) normal = normal + halfspaces_[f].normal;
        level.push_back({static_cast<int>(k), verts, normal});
      }
    }

    for (std::size_t k = 1; k < d; ++k) {
      for (const auto& face : lat.faces_by_dim[k]) {
        std::vector<std::size_t> kids;
        for (std::size_t j = 0; j < lat.faces_by_dim[k - 1].size(); ++j) {
          const auto& sub = lat.faces_by_dim[k - 1][j].vertices;
          if (std::includes(face.vertices.begin(), face.vertices.end(), sub.begin(), sub.end())) kids.push_back(j);
        }
        lat.children[k].push_back(std::move(kids));
      }
    }

    if (d >= 2) {
      for (const auto& sub : lat.faces_by_dim[d - 2]) {
        const auto owners = facets_containing(sub.vertices);
        if (owners.size() != 2)
          throw Error(ErrorCode::MalformedInput, "subfacet not incident to exactly two facets");
        lat.subfacet_facets.emplace_back(owners[0], owners[1]);
      }
    }
    return lat;
  }

  std::vector<std::vector<RVec>> build_triangulation() const {
    const auto& lat = face_lattice();
    const std::size_t d = dim();
    // Pulling triangulation of a face as lists of vertex indices.
    std::vector<std::vector<std::vector<std::vector<std::size_t>>>> memo(d);
    for (std::size_t k = 0; k < d; ++k) memo[k].resize(lat.faces_by_dim[k].size());
    for (std::size_t i = 0; i < lat.faces_by_dim[0].size(); ++i) memo[0][i] = {lat.faces_by_dim[0][i].vertices};
    for (std::size_t k = 1; k < d; ++k) {
      for (std::size_t i = 0; i < lat.faces_by_dim[k].size(); ++i) {
        const std::size_t apex = lat.faces_by_dim[k][i].vertices.front();
        for (auto child : lat.children[k][i]) {
          const auto& cv = lat.faces_by_dim[k - 1][child].vertices;
          if (std::binary_search(cv.begin(), cv.end(), apex)) continue;
          for (auto s : memo[k - 1][child]) {
            s.push_back(apex);
            memo[k][i].push_back(std::move(s));
          }
        }
      }
    }
    std::vector<std::vector<RVec>> simplices;
    for (const auto& facet_simplices : memo[d - 1]) {
      for (const auto& s : facet_simplices) {
        std::vector<RVec> simplex{centroid_};
        for (auto v : s) simplex.push_back(vertices_[v]);
        simplices.push_back(std::move(simplex));
      }
    }
    return simplices;
  }

  struct Cache {
    std::once_flag lattice_once, tri_once, volume_once;
    FaceLattice lattice;
    std::vector<std::vector<RVec>> triangulation;
    Rational volume;
  };

  std::vector<RVec> vertices_;
  std::vector<DVec> vertices_double_;
  std::vector<Halfspace> halfspaces_;
  std::vector<std::vector<std::size_t>> facet_vertices_;
  std::vector<DVec> unit_normals_;
  std::vector<double> unit_offsets_;
  RVec centroid_;
  std::shared_ptr<Cache> cache_;
};

/// Checks the Euler relation f0 - f1 + ... + (-1)^(d-1) f_{d-1} = 1 - (-1)^d.
inline bool euler_relation_holds(const FaceLattice& lat) {
  const long d = static_cast<long>(lat.faces_by_dim.size());
  long sum = 0;
  for (long k = 0; k < d; ++k) sum += (k % 2 == 0 ? 1 : -1) * static_cast<long>(lat.faces_by_dim[k].size());
  return sum == 1 - (d % 2 == 0 ? 1 : -1);
}

}  // namespace spectile::geometry
