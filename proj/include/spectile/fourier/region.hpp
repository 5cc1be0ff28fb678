#pragma once

#include <memory>
#include <mutex>
#include <variant>
#include <vector>

#include "spectile/core/error.hpp"
#include "spectile/core/rational.hpp"
#include "spectile/geometry/difference_body.hpp"
#include "spectile/geometry/polytope.hpp"

namespace spectile {

struct Box {
  RVec lo, hi;

  Rational volume() const {
    Rational v = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }
};

/// Finite union of closed axis-aligned boxes with pairwise disjoint
/// interiors.
class BoxUnion {
 public:
  BoxUnion() = default;

  explicit BoxUnion(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
    if (boxes_.empty()) throw Error(ErrorCode::MalformedInput, "box union needs at least one box");
    const std::size_t d = boxes_[0].lo.size();
    if (d == 0) throw Error(ErrorCode::MalformedInput, "zero-dimensional box");
    for (const auto& b : boxes_) {
      if (b.lo.size() != d || b.hi.size() != d) throw Error(ErrorCode::MalformedInput, "boxes differ in dimension");
      for (std::size_t i = 0; i < d; ++i)
        if (!(b.lo[i] < b.hi[i])) throw Error(ErrorCode::MalformedInput, "box with empty interior");
    }
    for (std::size_t i = 0; i < boxes_.size(); ++i)
      for (std::size_t j = i + 1; j < boxes_.size(); ++j)
        if (intersection_volume(boxes_[i], boxes_[j], RVec(d, Rational(0))) > 0)
          throw Error(ErrorCode::MalformedInput, "boxes overlap with positive measure");
    for (const auto& b : boxes_) boxes_double_.push_back({to_double(b.lo), to_double(b.hi)});
  }

  std::size_t dim() const { return boxes_[0].lo.size(); }
  const std::vector<Box>& boxes() const { return boxes_; }

  struct DoubleBox {
    DVec lo, hi;
  };
  const std::vector<DoubleBox>& boxes_double() const { return boxes_double_; }

  Rational measure() const {
    Rational m = 0;
    for (const auto& b : boxes_) m += b.volume();
    return m;
  }

  /// vol(a & (b + t)).
  static Rational intersection_volume(const Box& a, const Box& b, const RVec& t) {
    Rational v = 1;
    for (std::size_t i = 0; i < a.lo.size(); ++i) {
      const Rational lo = std::max(a.lo[i], Rational(b.lo[i] + t[i]));
      const Rational hi = std::min(a.hi[i], Rational(b.hi[i] + t[i]));
      if (!(lo < hi)) return 0;
      v *= hi - lo;
    }
    return v;
  }

  /// vol(U & (U + t)).
  Rational overlap_volume(const RVec& t) const {
    Rational v = 0;
    for (const auto& a : boxes_)
      for (const auto& b : boxes_) v += intersection_volume(a, b, t);
    return v;
  }

 private:
  std::vector<Box> boxes_;
  std::vector<DoubleBox> boxes_double_;
};

/// A bounded set of positive measure: a convex polytope or a box union.
class Region {
 public:
  Region(geometry::Polytope p) : shape_(std::move(p)), cache_(std::make_shared<Cache>()) {}
  Region(BoxUnion b) : shape_(std::move(b)), cache_(std::make_shared<Cache>()) {}

  bool is_polytope() const { return std::holds_alternative<geometry::Polytope>(shape_); }
  const geometry::Polytope& polytope() const { return std::get<geometry::Polytope>(shape_); }
  const BoxUnion& box_union() const { return std::get<BoxUnion>(shape_); }

  std::size_t dim() const {
    return is_polytope() ? polytope().dim() : box_union().dim();
  }

  Rational measure() const { return is_polytope() ? polytope().volume() : box_union().measure(); }

  /// Membership of the region dilated by `slack` (negative shrinks).
  bool contains(const DVec& x, double slack = 0.0) const {
    if (is_polytope()) return polytope().contains(x, slack);
    for (const auto& b : box_union().boxes_double()) {
      bool in = true;
      for (std::size_t i = 0; i < x.size() && in; ++i) in = x[i] >= b.lo[i] - slack && x[i] <= b.hi[i] + slack;
      if (in) return true;
    }
    return false;
  }

  /// True when x lies within `margin` of a boundary surface (conservative
  /// for box unions: shared internal faces count as boundary).
  bool near_boundary(const DVec& x, double margin) const {
    if (is_polytope()) return polytope().contains(x, margin) != polytope().contains(x, -margin);
    for (const auto& b : box_union().boxes_double()) {
      bool outer = true, inner = true;
      for (std::size_t i = 0; i < x.size(); ++i) {
        outer = outer && x[i] >= b.lo[i] - margin && x[i] <= b.hi[i] + margin;
        inner = inner && x[i] >= b.lo[i] + margin && x[i] <= b.hi[i] - margin;
      }
      if (outer != inner) return true;
    }
    return false;
  }

  /// Axis-aligned bounding box.
  std::pair<DVec, DVec> bounds() const {
    const std::size_t d = dim();
    DVec lo(d, std::numeric_limits<double>::infinity()), hi(d, -std::numeric_limits<double>::infinity());
    auto absorb = [&](const DVec& p) {
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    };
    if (is_polytope()) {
      for (const auto& v : polytope().vertices_double()) absorb(v);
    } else {
      for (const auto& b : box_union().boxes_double()) {
        absorb(b.lo);
        absorb(b.hi);
      }
    }
    return {lo, hi};
  }

  /// Largest distance from the origin to a point of the region.
  double radius() const {
    const auto [lo, hi] = bounds();
    double r2 = 0;
    for (std::size_t i = 0; i < lo.size(); ++i) r2 += std::max(lo[i] * lo[i], hi[i] * hi[i]);
    return std::sqrt(r2);
  }

  /// m(R & (R + t)) > 0.
  bool overlap_positive(const RVec& t) const {
    if (!is_polytope()) return box_union().overlap_volume(t) > 0;
    return geometry::overlap_positive(difference_body(), t);
  }

  Rational overlap_volume(const RVec& t) const {
    return is_polytope() ? geometry::overlap_volume(polytope(), t) : box_union().overlap_volume(t);
  }

  /// P - P for polytopes (cached).
  const geometry::Polytope& difference_body() const {
    std::call_once(cache_->diff_once, [this] {
      cache_->difference = std::make_unique<geometry::Polytope>(geometry::difference_body(polytope()));
    });
    return *cache_->difference;
  }

  /// Simplices of the region's triangulation in floating point, with
  /// |det| = d! * volume (cached). Boxes are not triangulated.
  struct DoubleSimplex {
    std::vector<DVec> vertices;
    double abs_det;
  };
  const std::vector<DoubleSimplex>& simplices() const {
    std::call_once(cache_->simplex_once, [this] {
      for (const auto& s : polytope().triangulation()) {
        RMat m;
        for (std::size_t i = 1; i < s.size(); ++i) m.push_back(s[i] - s[0]);
        DoubleSimplex ds;
        for (const auto& v : s) ds.vertices.push_back(to_double(v));
        ds.abs_det = to_double(abs(linalg::determinant(m)));
        cache_->simplices.push_back(std::move(ds));
      }
    });
    return cache_->simplices;
  }

 private:
  struct Cache {
    std::once_flag diff_once, simplex_once;
    std::unique_ptr<geometry::Polytope> difference;
    std::vector<DoubleSimplex> simplices;
  };

  std::variant<geometry::Polytope, BoxUnion> shape_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace spectile
