#pragma once

#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "spectile/core/error.hpp"
#include "spectile/core/lattice.hpp"
#include "spectile/core/rational.hpp"

namespace spectile {

struct ExplicitPoints {
  std::vector<RVec> points;
};

struct LatticePoints {
  Lattice lattice;
};

/// Union of cosets lattice + offset.
struct PeriodicPoints {
  Lattice lattice;
  std::vector<RVec> offsets;
};

/// {(n, n^2 alpha + m) : n, m integers} in the plane.
struct ParabolicCube {
  double alpha = 0;
  std::string alpha_label;  // e.g. "sqrt2" when given by name
};

/// A countable, uniformly discrete point set used as a spectrum or tiling
/// candidate. `exclude` removes finitely many points.
class PointSetSpec {
 public:
  using Variant = std::variant<ExplicitPoints, LatticePoints, PeriodicPoints, ParabolicCube>;

  PointSetSpec(Variant v, std::vector<RVec> exclude = {}) : set_(std::move(v)), exclude_(std::move(exclude)) {
    validate();
    for (const auto& e : exclude_) {
      exclude_exact_.insert(e);
      exclude_double_.push_back(to_double(e));
    }
  }

  static PointSetSpec lattice(Lattice l) { return PointSetSpec(LatticePoints{std::move(l)}); }
  static PointSetSpec periodic(Lattice l, std::vector<RVec> offsets) {
    return PointSetSpec(PeriodicPoints{std::move(l), std::move(offsets)});
  }
  static PointSetSpec explicit_points(std::vector<RVec> pts) { return PointSetSpec(ExplicitPoints{std::move(pts)}); }
  static PointSetSpec parabolic_cube(double alpha, std::string label = {}) {
    return PointSetSpec(ParabolicCube{alpha, std::move(label)});
  }

  const Variant& variant() const { return set_; }
  const std::vector<RVec>& exclude() const { return exclude_; }
  bool is_rational() const { return !std::holds_alternative<ParabolicCube>(set_); }

  std::size_t dim() const {
    return std::visit(
        [](const auto& s) -> std::size_t {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ExplicitPoints>) return s.points[0].size();
          else if constexpr (std::is_same_v<T, ParabolicCube>) return 2;
          else return s.lattice.dim();
        },
        set_);
  }

  /// Underlying period lattice for lattice and periodic sets.
  const Lattice* period_lattice() const {
    if (auto l = std::get_if<LatticePoints>(&set_)) return &l->lattice;
    if (auto p = std::get_if<PeriodicPoints>(&set_)) return &p->lattice;
    return nullptr;
  }

  /// Exact points within Euclidean distance r of `center` (rational sets).
  void for_each_exact_in_ball(const DVec& center, double r, const std::function<void(const RVec&)>& visit) const {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ParabolicCube>) {
            throw Error(ErrorCode::PreconditionFailed, "parabolic_cube points are irrational");
          } else if constexpr (std::is_same_v<T, ExplicitPoints>) {
            for (const auto& p : s.points)
              if (within(to_double(p), center, r) && !excluded(p)) visit(p);
          } else {
            const RVec zero(s.lattice.dim(), Rational(0));
            for (const RVec& off : offsets_of(s, zero)) {
              s.lattice.for_each_in_ball(center - to_double(off), r, [&](const std::vector<long>& c, const DVec&) {
                const RVec p = s.lattice.point(c) + off;
                if (!excluded(p)) visit(p);
              });
            }
          }
        },
        set_);
  }

  /// Floating points within distance r of `center` (all variants).
  std::vector<DVec> points_in_ball(const DVec& center, double r) const {
    std::vector<DVec> out;
    if (auto pc = std::get_if<ParabolicCube>(&set_)) {
      for (long n = static_cast<long>(std::ceil(center[0] - r)); n <= static_cast<long>(std::floor(center[0] + r));
           ++n) {
        const double dx = static_cast<double>(n) - center[0];
        const double dy = std::sqrt(std::max(0.0, r * r - dx * dx));
        const double base = static_cast<double>(n) * static_cast<double>(n) * pc->alpha;
        for (long m = static_cast<long>(std::ceil(center[1] - dy - base));
             m <= static_cast<long>(std::floor(center[1] + dy - base)); ++m) {
          DVec p{static_cast<double>(n), base + static_cast<double>(m)};
          if (within(p, center, r) && !excluded_double(p)) out.push_back(std::move(p));
        }
      }
      return out;
    }
    if (exclude_.empty()) {
      if (auto lp = std::get_if<LatticePoints>(&set_)) {
        lp->lattice.for_each_in_ball(center, r, [&](const std::vector<long>&, const DVec& p) { out.push_back(p); });
        return out;
      }
      if (auto pp = std::get_if<PeriodicPoints>(&set_)) {
        for (const auto& off : pp->offsets) {
          const DVec o = to_double(off);
          pp->lattice.for_each_in_ball(center - o, r,
                                       [&](const std::vector<long>&, const DVec& p) { out.push_back(p + o); });
        }
        return out;
      }
    }
    for_each_exact_in_ball(center, r, [&](const RVec& p) { out.push_back(to_double(p)); });
    return out;
  }

  /// The same set shifted by v.
  PointSetSpec translated(const RVec& v) const {
    std::vector<RVec> moved_exclude;
    for (const auto& e : exclude_) moved_exclude.push_back(e + v);
    return std::visit(
        [&](const auto& s) -> PointSetSpec {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ParabolicCube>) {
            throw Error(ErrorCode::PreconditionFailed, "parabolic_cube sets cannot be translated");
          } else if constexpr (std::is_same_v<T, ExplicitPoints>) {
            std::vector<RVec> pts;
            for (const auto& p : s.points) pts.push_back(p + v);
            return PointSetSpec(ExplicitPoints{pts}, moved_exclude);
          } else if constexpr (std::is_same_v<T, LatticePoints>) {
            return PointSetSpec(PeriodicPoints{s.lattice, {v}}, moved_exclude);
          } else {
            std::vector<RVec> offs;
            for (const auto& o : s.offsets) offs.push_back(o + v);
            return PointSetSpec(PeriodicPoints{s.lattice, offs}, moved_exclude);
          }
        },
        set_);
  }

 private:
  static bool within(const DVec& p, const DVec& c, double r) {
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - c[i]) * (p[i] - c[i]);
    return s <= r * r * (1 + 1e-12) + 1e-18;
  }

  static std::vector<RVec> offsets_of(const LatticePoints&, const RVec& zero) { return {zero}; }
  static std::vector<RVec> offsets_of(const PeriodicPoints& p, const RVec&) { return p.offsets; }

  bool excluded(const RVec& p) const { return !exclude_exact_.empty() && exclude_exact_.count(p) > 0; }
  bool excluded_double(const DVec& p) const {
    for (const auto& e : exclude_double_)
      if (norm(e - p) < 1e-9) return true;
    return false;
  }

  void validate() const {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ExplicitPoints>) {
            if (s.points.empty()) throw Error(ErrorCode::MalformedInput, "explicit point set is empty");
            const std::size_t d = s.points[0].size();
            if (d == 0) throw Error(ErrorCode::MalformedInput, "points must be nonempty vectors");
            std::set<RVec> seen;
            for (const auto& p : s.points) {
              if (p.size() != d) throw Error(ErrorCode::MalformedInput, "points differ in dimension");
              if (!seen.insert(p).second)
                throw Error(ErrorCode::MalformedInput, "explicit points are not uniformly discrete (repeated point)");
            }
          } else if constexpr (std::is_same_v<T, ParabolicCube>) {
            if (!std::isfinite(s.alpha)) throw Error(ErrorCode::MalformedInput, "alpha must be finite");
          } else {
            if (!s.lattice.full_rank())
              throw Error(ErrorCode::MalformedInput, "point-set lattice must have full rank");
            if constexpr (std::is_same_v<T, PeriodicPoints>) {
              if (s.offsets.empty()) throw Error(ErrorCode::MalformedInput, "periodic set needs offsets");
              for (std::size_t i = 0; i < s.offsets.size(); ++i) {
                if (s.offsets[i].size() != s.lattice.dim())
                  throw Error(ErrorCode::MalformedInput, "offset dimension mismatch");
                for (std::size_t j = 0; j < i; ++j)
                  if (s.lattice.contains(s.offsets[i] - s.offsets[j]))
                    throw Error(ErrorCode::MalformedInput, "periodic offsets are not distinct modulo the lattice");
              }
            }
          }
        },
        set_);
    for (const auto& e : exclude_)
      if (e.size() != dim()) throw Error(ErrorCode::MalformedInput, "excluded point dimension mismatch");
  }

  Variant set_;
  std::vector<RVec> exclude_;
  std::set<RVec> exclude_exact_;
  std::vector<DVec> exclude_double_;
};

}  // namespace spectile
