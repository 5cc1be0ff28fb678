#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "spectile/core/defaults.hpp"
#include "spectile/core/lattice.hpp"
#include "spectile/fourier/ft.hpp"
#include "spectile/spectra/point_set.hpp"

namespace spectile {

/// L* = {y : <x, y> in Z for all x in L}; basis is the inverse transpose.
inline Lattice dual_lattice(const Lattice& l) {
  if (!l.full_rank()) throw Error(ErrorCode::PreconditionFailed, "dual of a rank-deficient lattice");
  const auto inv = linalg::inverse(l.basis_matrix());
  if (!inv) throw Error(ErrorCode::PreconditionFailed, "singular lattice basis");
  // Columns of (B^{-1})^T are the rows of B^{-1}.
  return Lattice(*inv);
}

/// Cell-centred sampling grid over the box [lo, hi) with `resolution`
/// points per axis.
struct GridSpec {
  DVec lo, hi;
  std::size_t resolution = 2;
  double margin = defaults::kMargin;

  void validate(std::size_t d) const {
    if (lo.size() != d || hi.size() != d) throw Error(ErrorCode::MalformedInput, "grid dimension mismatch");
    if (resolution < 2) throw Error(ErrorCode::MalformedInput, "grid resolution must be >= 2");
    if (!(margin > 0)) throw Error(ErrorCode::MalformedInput, "grid margin must be positive");
    for (std::size_t i = 0; i < d; ++i)
      if (!(lo[i] < hi[i])) throw Error(ErrorCode::MalformedInput, "grid box is empty");
  }

  static GridSpec cube(std::size_t d, double half_width, std::size_t resolution, double margin = defaults::kMargin) {
    return {DVec(d, -half_width), DVec(d, half_width), resolution, margin};
  }

  std::vector<DVec> points() const {
    const std::size_t d = lo.size();
    std::vector<DVec> out;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      DVec p(d);
      for (std::size_t i = 0; i < d; ++i)
        p[i] = lo[i] + (static_cast<double>(idx[i]) + 0.5) * (hi[i] - lo[i]) / static_cast<double>(resolution);
      out.push_back(std::move(p));
      std::size_t k = 0;
      while (k < d && ++idx[k] == resolution) idx[k++] = 0;
      if (k == d) break;
    }
    return out;
  }
};

struct OrthogonalityReport {
  bool pass = true;
  std::vector<DVec> violations;  // differences that are not zeros of 1_R^
  std::size_t differences_checked = 0;
  double radius = 0;
  double zero_tol = 0;
};

/// Nonzero differences lambda' - lambda of the set with norm <= radius.
/// For lattice and periodic sets finitely many exclusions do not change the
/// difference set, so they are ignored here.
inline std::vector<DVec> difference_vectors(const PointSetSpec& set, double radius) {
  std::vector<DVec> out;
  const std::size_t d = set.dim();
  const DVec origin(d, 0.0);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LatticePoints>) {
          s.lattice.for_each_in_ball(origin, radius, [&](const std::vector<long>& c, const DVec& p) {
            if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) out.push_back(p);
          });
        } else if constexpr (std::is_same_v<T, PeriodicPoints>) {
          std::set<RVec> seen;
          for (const auto& a : s.offsets)
            for (const auto& b : s.offsets) {
              const RVec shift = b - a;
              s.lattice.for_each_in_ball(-to_double(shift), radius, [&](const std::vector<long>& c, const DVec&) {
                const RVec p = s.lattice.point(c) + shift;
                if (!is_zero(p) && seen.insert(p).second) out.push_back(to_double(p));
              });
            }
        } else if constexpr (std::is_same_v<T, ExplicitPoints>) {
          std::set<RVec> seen;
          std::set<RVec> removed(set.exclude().begin(), set.exclude().end());
          for (const auto& a : s.points)
            for (const auto& b : s.points) {
              if (removed.count(a) || removed.count(b)) continue;
              const RVec p = b - a;
              if (!is_zero(p) && norm(to_double(p)) <= radius && seen.insert(p).second) out.push_back(to_double(p));
            }
        } else {
          // (n + h, (n + h)^2 a + m') - (n, n^2 a + m) = (h, (2 n h + h^2) a + k):
          // only n matters, over the points of the cube [-radius, radius)^2.
          for (long n = static_cast<long>(std::ceil(-radius)); static_cast<double>(n) < radius; ++n)
            for (long h = static_cast<long>(std::ceil(-radius)); h <= static_cast<long>(std::floor(radius)); ++h) {
              const double base = static_cast<double>(2 * n * h + h * h) * s.alpha;
              const double dy = std::sqrt(std::max(0.0, radius * radius - static_cast<double>(h * h)));
              for (long k = static_cast<long>(std::ceil(-dy - base)); k <= static_cast<long>(std::floor(dy - base));
                   ++k) {
                if (h == 0 && k == 0) continue;
                out.push_back({static_cast<double>(h), base + static_cast<double>(k)});
              }
            }
        }
      },
      set.variant());
  return out;
}

/// Lambda - Lambda within `radius` must lie in the zero set of 1_R^.
inline OrthogonalityReport orthogonality_check(const Region& region, const PointSetSpec& set, double radius,
                                               double zero_tol) {
  if (set.dim() != region.dim()) throw Error(ErrorCode::MalformedInput, "point set and region dimensions differ");
  OrthogonalityReport report;
  report.radius = radius;
  report.zero_tol = zero_tol;
  const auto diffs = difference_vectors(set, radius);
  if (diffs.empty()) throw Error(ErrorCode::WindowEmpty, "no nonzero differences within the radius");
  for (const auto& t : diffs) {
    ++report.differences_checked;
    if (!is_ft_zero(region, t, zero_tol)) {
      report.pass = false;
      report.violations.push_back(t);
    }
  }
  return report;
}

struct SpectrumReport {
  double residual = 0;   // max over grid of |(f * delta_Lambda)(x) - 1|
  DVec worst_point;      // grid point attaining the residual
  double truncation_radius = 0;
  std::size_t min_terms = 0;  // fewest points of Lambda entering a sum
  double tail_estimate = 0;   // heuristic size of the omitted tail
  std::size_t grid_points = 0;
  std::vector<std::string> warnings;
  std::string note = "finite-grid, truncated sums; corroborates or refutes, does not certify";
};

/// Evaluates sum_lambda f(x - lambda) with f = |1_R^|^2 / m(R)^2 on a grid,
/// truncating to |x - lambda| <= truncation.
inline SpectrumReport completeness_residual(const Region& region, const PointSetSpec& set, const GridSpec& grid,
                                            double truncation) {
  const std::size_t d = region.dim();
  if (set.dim() != d) throw Error(ErrorCode::MalformedInput, "point set and region dimensions differ");
  grid.validate(d);
  if (!(truncation > 0)) throw Error(ErrorCode::MalformedInput, "truncation radius must be positive");
  const double m = to_double(region.measure());
  const double norm2 = 1.0 / (m * m);

  SpectrumReport report;
  report.truncation_radius = truncation;
  report.min_terms = std::numeric_limits<std::size_t>::max();
  for (const auto& x : grid.points()) {
    double sum = 0, shell = 0;
    const auto pts = set.points_in_ball(x, truncation);
    for (const auto& lam : pts) {
      const DVec y = x - lam;
      const double f = std::norm(ft_indicator(region, y).value) * norm2;
      sum += f;
      if (norm(y) > 0.5 * truncation) shell += f;
    }
    report.min_terms = std::min(report.min_terms, pts.size());
    report.tail_estimate = std::max(report.tail_estimate, shell);
    const double r = std::abs(sum - 1.0);
    if (report.worst_point.empty() || r > report.residual) {
      report.residual = r;
      report.worst_point = x;
    }
    ++report.grid_points;
  }
  if (report.min_terms < 1000)
    report.warnings.push_back("fewer than 1000 points of the set entered some truncated sum");
  return report;
}

struct LatticeTilingReport {
  bool pass = false;
  bool volume_matches = false;
  Rational measure;
  Rational abs_determinant;
  std::size_t dual_vectors_checked = 0;
  double max_abs_ft = 0;
  std::vector<DVec> non_zeros;  // dual vectors where 1_R^ does not vanish
  double zero_tol = 0;
};

/// R tiles with lattice L iff m(R) = |det L| and 1_R^ vanishes on L* \ {0};
/// the zero condition is checked on the n_dual shortest dual vectors.
inline LatticeTilingReport lattice_tiling_check(const Region& region, const Lattice& l, std::size_t n_dual,
                                                double zero_tol) {
  if (n_dual < 1) throw Error(ErrorCode::MalformedInput, "n_dual must be >= 1");
  if (l.dim() != region.dim()) throw Error(ErrorCode::MalformedInput, "lattice and region dimensions differ");
  LatticeTilingReport report;
  report.zero_tol = zero_tol;
  report.measure = region.measure();
  report.abs_determinant = abs(l.determinant());
  report.volume_matches = report.measure == report.abs_determinant;
  for (const auto& v : dual_lattice(l).shortest_nonzero(n_dual)) {
    const DVec t = to_double(v);
    const auto ft = ft_indicator(region, t);
    report.max_abs_ft = std::max(report.max_abs_ft, std::abs(ft.value));
    ++report.dual_vectors_checked;
    if (std::abs(ft.value) > zero_tol + ft.abs_error_bound) report.non_zeros.push_back(t);
  }
  report.pass = report.volume_matches && report.non_zeros.empty();
  return report;
}

}  // namespace spectile
