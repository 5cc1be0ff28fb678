#pragma once

#include <deque>
#include <optional>
#include <random>

#include "spectile/core/defaults.hpp"
#include "spectile/fourier/region.hpp"

namespace spectile {

/// A witness S that R is not spectral: m(S) > 0, m(S & R) = 0, and every
/// translate of R meeting S also meets R (checked on random translates).
struct NonSpectralityCertificate {
  BoxUnion witness;
  Rational witness_measure;
  Rational overlap_with_region;
  std::size_t components = 0;
  std::size_t samples = 0;
  std::size_t samples_meeting_witness = 0;
};

namespace detail {

inline double box_overlap(const BoxUnion::DoubleBox& a, const BoxUnion::DoubleBox& b, const DVec& shift) {
  double v = 1;
  for (std::size_t i = 0; i < a.lo.size() && v > 0; ++i)
    v *= std::max(0.0, std::min(a.hi[i] + shift[i], b.hi[i]) - std::max(a.lo[i] + shift[i], b.lo[i]));
  return v;
}

/// m((A + shift) & B) for box lists.
inline double union_overlap(const std::vector<BoxUnion::DoubleBox>& a, const std::vector<BoxUnion::DoubleBox>& b,
                            const DVec& shift) {
  double v = 0;
  for (const auto& x : a)
    for (const auto& y : b) v += box_overlap(x, y, shift);
  return v;
}

inline DVec sample_point(const std::vector<BoxUnion::DoubleBox>& boxes, std::discrete_distribution<std::size_t>& pick,
                         std::mt19937_64& rng) {
  const auto& b = boxes[pick(rng)];
  DVec p(b.lo.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::uniform_real_distribution<double>(b.lo[i], b.hi[i])(rng);
  return p;
}

}  // namespace detail

/// Looks for bounded components of the complement of a box union by flood
/// fill on the grid spanned by the box coordinates, padded by one cell.
inline std::optional<NonSpectralityCertificate> hole_detector(const BoxUnion& omega,
                                                              std::size_t samples = defaults::kHoleSamples,
                                                              std::uint64_t seed = 1) {
  const std::size_t d = omega.dim();
  std::vector<std::vector<Rational>> breaks(d);
  for (const auto& b : omega.boxes())
    for (std::size_t i = 0; i < d; ++i) {
      breaks[i].push_back(b.lo[i]);
      breaks[i].push_back(b.hi[i]);
    }
  std::vector<std::size_t> extent(d);  // cells per axis including one padding cell on each side
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    std::sort(breaks[i].begin(), breaks[i].end());
    breaks[i].erase(std::unique(breaks[i].begin(), breaks[i].end()), breaks[i].end());
    extent[i] = breaks[i].size() + 1;
    total *= extent[i];
  }
  auto unflatten = [&](std::size_t k) {
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) {
      idx[i] = k % extent[i];
      k /= extent[i];
    }
    return idx;
  };
  auto flatten = [&](const std::vector<std::size_t>& idx) {
    std::size_t k = 0;
    for (std::size_t i = d; i-- > 0;) k = k * extent[i] + idx[i];
    return k;
  };
  auto padding = [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < d; ++i)
      if (idx[i] == 0 || idx[i] + 1 == extent[i]) return true;
    return false;
  };
  auto cell_box = [&](const std::vector<std::size_t>& idx) {
    Box b{RVec(d), RVec(d)};
    for (std::size_t i = 0; i < d; ++i) {
      b.lo[i] = breaks[i][idx[i] - 1];
      b.hi[i] = breaks[i][idx[i]];
    }
    return b;
  };

  std::vector<char> filled(total, 0);
  for (std::size_t k = 0; k < total; ++k) {
    const auto idx = unflatten(k);
    if (padding(idx)) continue;
    const Box c = cell_box(idx);
    RVec mid(d);
    for (std::size_t i = 0; i < d; ++i) mid[i] = (c.lo[i] + c.hi[i]) / 2;
    for (const auto& b : omega.boxes()) {
      bool in = true;
      for (std::size_t i = 0; i < d && in; ++i) in = b.lo[i] < mid[i] && mid[i] < b.hi[i];
      if (in) {
        filled[k] = 1;
        break;
      }
    }
  }

  // label: 0 unvisited, 1 reached from outside, 2+ bounded component id
  std::vector<std::size_t> label(total, 0);
  auto flood = [&](std::size_t start, std::size_t id) {
    std::deque<std::size_t> queue{start};
    label[start] = id;
    while (!queue.empty()) {
      const auto idx = unflatten(queue.front());
      queue.pop_front();
      for (std::size_t i = 0; i < d; ++i)
        for (int step : {-1, 1}) {
          if ((step < 0 && idx[i] == 0) || (step > 0 && idx[i] + 1 == extent[i])) continue;
          auto n = idx;
          n[i] = static_cast<std::size_t>(static_cast<long>(n[i]) + step);
          const std::size_t k = flatten(n);
          if (filled[k] || label[k]) continue;
          label[k] = id;
          queue.push_back(k);
        }
    }
  };
  flood(0, 1);
  std::size_t next_id = 2;
  std::vector<Box> hole_cells;
  for (std::size_t k = 0; k < total; ++k) {
    if (filled[k] || label[k] == 1) continue;
    if (!label[k]) flood(k, next_id++);
    hole_cells.push_back(cell_box(unflatten(k)));
  }
  if (hole_cells.empty()) return std::nullopt;

  NonSpectralityCertificate cert{BoxUnion(hole_cells), 0, 0, next_id - 2, samples, 0};
  cert.witness_measure = cert.witness.measure();
  const RVec zero(d, Rational(0));
  for (const auto& s : cert.witness.boxes())
    for (const auto& b : omega.boxes()) cert.overlap_with_region += BoxUnion::intersection_volume(b, s, zero);
  if (cert.witness_measure <= 0 || cert.overlap_with_region != 0) return std::nullopt;

  const auto& sb = cert.witness.boxes_double();
  const auto& ob = omega.boxes_double();
  auto weights = [](const std::vector<BoxUnion::DoubleBox>& boxes) {
    std::vector<double> w;
    for (const auto& b : boxes) w.push_back(detail::box_overlap(b, b, DVec(b.lo.size(), 0.0)));
    return std::discrete_distribution<std::size_t>(w.begin(), w.end());
  };
  auto pick_s = weights(sb);
  auto pick_o = weights(ob);
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const DVec x = detail::sample_point(sb, pick_s, rng) - detail::sample_point(ob, pick_o, rng);
    if (detail::union_overlap(ob, sb, x) <= 0) continue;
    ++cert.samples_meeting_witness;
    if (detail::union_overlap(ob, ob, x) <= 0) return std::nullopt;
  }
  return cert;
}

}  // namespace spectile
