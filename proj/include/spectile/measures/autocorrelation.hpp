#pragma once

#include <algorithm>
#include <map>
#include <string>

#include "spectile/core/defaults.hpp"
#include "spectile/measures/measure.hpp"

namespace spectile {

enum class WindowShape { Cube, Ball };

inline WindowShape parse_shape(const std::string& s) {
  if (s == "cube") return WindowShape::Cube;
  if (s == "ball") return WindowShape::Ball;
  throw Error(ErrorCode::MalformedInput, "shape must be cube or ball");
}

inline const char* to_string(WindowShape s) { return s == WindowShape::Cube ? "cube" : "ball"; }

/// nu_r = |L_r|^-1 delta_L * delta_{-L_r}, with L_r = L & [-r, r)^d or
/// L & {|x| <= r}, restricted to |t| <= reporting_radius.
struct Autocorrelation {
  Atoms atoms;  // sorted lexicographically by position
  std::size_t window_points = 0;
  double window = 0;
  WindowShape shape = WindowShape::Cube;
  double reporting_radius = 0;

  MeasureSpec measure() const { return MeasureSpec(atoms.points.empty() ? 0 : atoms.points[0].size(), {atoms}); }
};

namespace detail {

inline bool in_window(const DVec& p, double r, WindowShape shape) {
  if (shape == WindowShape::Ball) return dot(p, p) <= r * r;
  return std::all_of(p.begin(), p.end(), [&](double x) { return x >= -r && x < r; });
}

inline bool in_window(const RVec& p, const Rational& r, WindowShape shape) {
  if (shape == WindowShape::Ball) return dot(p, p) <= r * r;
  return std::all_of(p.begin(), p.end(), [&](const Rational& x) { return x >= -r && x < r; });
}

inline Autocorrelation finish(std::map<RVec, Integer> counts, std::size_t n, double rho) {
  Autocorrelation out;
  out.window_points = n;
  out.atoms.support_radius = rho;
  for (const auto& [p, c] : counts) {
    if (to_double(dot(p, p)) > rho * rho * (1 + 1e-12)) continue;
    out.atoms.exact.push_back(p);
    out.atoms.points.push_back(to_double(p));
    out.atoms.weights.push_back(to_double(Rational(c) / static_cast<long>(n)));
  }
  return out;
}

/// Lattice and periodic sets: the weight of t is sum_i c_i / |L_r| over the
/// cosets i with t + o_i in the set, c_i counting window points in coset i.
inline Autocorrelation periodic_autocorrelation(const Lattice& l, const std::vector<RVec>& offsets, double r,
                                                WindowShape shape, double rho) {
  const std::size_t d = l.dim();
  const Rational rq = from_double(r);
  const double reach = shape == WindowShape::Cube ? r * std::sqrt(static_cast<double>(d)) : r;
  std::vector<std::size_t> per_coset(offsets.size(), 0);
  for (std::size_t i = 0; i < offsets.size(); ++i)
    l.for_each_in_ball(-to_double(offsets[i]), reach + 1e-9, [&](const std::vector<long>& c, const DVec&) {
      if (in_window(l.point(c) + offsets[i], rq, shape)) ++per_coset[i];
    });
  std::size_t n = 0;
  for (auto c : per_coset) n += c;
  if (n == 0) throw Error(ErrorCode::WindowEmpty, "window contains no points");
  std::map<RVec, Integer> counts;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (per_coset[i] == 0) continue;
    for (const auto& oj : offsets) {
      const RVec shift = oj - offsets[i];
      l.for_each_in_ball(-to_double(shift), rho + 1e-9, [&](const std::vector<long>& c, const DVec&) {
        counts[l.point(c) + shift] += per_coset[i];
      });
    }
  }
  return finish(std::move(counts), n, rho);
}

}  // namespace detail

inline Autocorrelation autocorrelation_window(const PointSetSpec& set, double r, WindowShape shape,
                                              double reporting_radius = defaults::kReportingRadius) {
  if (!(r > 0) || !(reporting_radius > 0))
    throw Error(ErrorCode::MalformedInput, "window and reporting radius must be positive");
  const std::size_t d = set.dim();
  const double rho = reporting_radius;
  Autocorrelation out;

  if (auto pc = std::get_if<ParabolicCube>(&set.variant())) {
    // Differences from (n, n^2 a + m) are (h, (2nh + h^2) a + k) with k
    // ranging over Z independently of m, so each n contributes its window
    // count to a whole comb of atoms.
    const auto& ex = set.exclude();
    if (!ex.empty()) throw Error(ErrorCode::PreconditionFailed, "parabolic_cube autocorrelation with exclusions");
    std::vector<std::pair<DVec, long>> raw;
    std::size_t total = 0;
    const long lo = static_cast<long>(std::ceil(-r));
    const long hi = shape == WindowShape::Cube ? static_cast<long>(std::ceil(r)) - 1 : static_cast<long>(std::floor(r));
    const long h_max = static_cast<long>(std::floor(rho));
    for (long n = lo; n <= hi; ++n) {
      const double base = static_cast<double>(n) * static_cast<double>(n) * pc->alpha;
      const double half = shape == WindowShape::Cube ? r : std::sqrt(std::max(0.0, r * r - double(n) * double(n)));
      long count = 0;
      for (long m = static_cast<long>(std::ceil(-half - base)) - 1; m <= static_cast<long>(std::floor(half - base)) + 1;
           ++m)
        if (detail::in_window(DVec{double(n), base + double(m)}, r, shape)) ++count;
      if (count == 0) continue;
      total += static_cast<std::size_t>(count);
      for (long h = -h_max; h <= h_max; ++h) {
        const double y0 = static_cast<double>(2 * n * h + h * h) * pc->alpha;
        const double dy = std::sqrt(std::max(0.0, rho * rho - double(h) * double(h)));
        for (long k = static_cast<long>(std::ceil(-dy - y0)); k <= static_cast<long>(std::floor(dy - y0)); ++k) {
          // Integer part first keeps h = 0 atoms exactly on the integers.
          const double y = h == 0 ? static_cast<double>(k) : y0 + static_cast<double>(k);
          raw.push_back({DVec{double(h), y}, count});
        }
      }
    }
    if (total == 0) throw Error(ErrorCode::WindowEmpty, "window contains no points");
    std::sort(raw.begin(), raw.end());
    out.atoms.support_radius = rho;
    for (std::size_t i = 0; i < raw.size();) {
      long c = 0;
      std::size_t j = i;
      while (j < raw.size() && raw[j].first[0] == raw[i].first[0] &&
             raw[j].first[1] - raw[i].first[1] <= defaults::kSnap) {
        c += raw[j].second;
        ++j;
      }
      out.atoms.points.push_back(raw[i].first);
      out.atoms.weights.push_back(static_cast<double>(c) / static_cast<double>(total));
      i = j;
    }
    out.window_points = total;
  } else if (set.exclude().empty() && set.period_lattice()) {
    std::vector<RVec> offsets{RVec(d, Rational(0))};
    if (auto pp = std::get_if<PeriodicPoints>(&set.variant())) offsets = pp->offsets;
    out = detail::periodic_autocorrelation(*set.period_lattice(), offsets, r, shape, rho);
  } else {
    const Rational rq = from_double(r);
    const double reach = shape == WindowShape::Cube ? r * std::sqrt(static_cast<double>(d)) : r;
    std::vector<RVec> window;
    set.for_each_exact_in_ball(DVec(d, 0.0), reach + 1e-9, [&](const RVec& p) {
      if (detail::in_window(p, rq, shape)) window.push_back(p);
    });
    if (window.empty()) throw Error(ErrorCode::WindowEmpty, "window contains no points");
    std::map<RVec, Integer> counts;
    for (const auto& lam : window)
      set.for_each_exact_in_ball(to_double(lam), rho + 1e-9, [&](const RVec& p) { counts[p - lam] += 1; });
    out = detail::finish(std::move(counts), window.size(), rho);
  }
  out.window = r;
  out.shape = shape;
  out.reporting_radius = rho;
  return out;
}

/// Largest weight difference between two lexicographically sorted atom
/// lists, matching positions within `snap` (unmatched atoms count in full).
inline double max_weight_change(const Atoms& a, const Atoms& b, double snap = defaults::kSnap) {
  double worst = 0;
  std::vector<bool> used(b.points.size(), false);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    double other = 0;
    auto it = std::lower_bound(b.points.begin(), b.points.end(), a.points[i][0] - snap,
                               [](const DVec& p, double x) { return p[0] < x; });
    for (auto j = static_cast<std::size_t>(it - b.points.begin());
         j < b.points.size() && b.points[j][0] <= a.points[i][0] + snap; ++j)
      if (!used[j] && norm(a.points[i] - b.points[j]) <= snap) {
        used[j] = true;
        other = b.weights[j];
        break;
      }
    worst = std::max(worst, std::abs(a.weights[i] - other));
  }
  for (std::size_t j = 0; j < b.points.size(); ++j)
    if (!used[j]) worst = std::max(worst, b.weights[j]);
  return worst;
}

}  // namespace spectile
