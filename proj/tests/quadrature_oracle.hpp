#pragma once

// Independent slice-by-slice quadrature of the Fourier transform of a
// convex polytope's indicator. The integrand is analytic between
// consecutive vertex coordinates, so Gauss-Kronrod on each piece converges
// to near machine precision. Shares no code with the closed-form path.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <complex>
#include <numbers>
#include <vector>

namespace spectile::oracle {

struct Plane {
  std::vector<double> a;
  double b;
};

inline std::vector<std::vector<double>> vertices_of(const std::vector<Plane>& hs, std::size_t d) {
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> idx(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == d) {
      std::vector<std::vector<double>> m(d, std::vector<double>(d + 1));
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) m[r][c] = hs[idx[r]].a[c];
        m[r][d] = hs[idx[r]].b;
      }
      for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < d; ++r)
          if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        if (std::abs(m[p][c]) < 1e-12) return;
        std::swap(m[p], m[c]);
        for (std::size_t r = 0; r < d; ++r) {
          if (r == c) continue;
          const double f = m[r][c] / m[c][c];
          for (std::size_t j = c; j <= d; ++j) m[r][j] -= f * m[c][j];
        }
      }
      std::vector<double> x(d);
      for (std::size_t r = 0; r < d; ++r) x[r] = m[r][d] / m[r][r];
      for (const auto& h : hs) {
        double s = 0;
        for (std::size_t c = 0; c < d; ++c) s += h.a[c] * x[c];
        if (s > h.b + 1e-9) return;
      }
      out.push_back(x);
      return;
    }
    for (std::size_t i = start; i < hs.size(); ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

/// Integral over {x : a.x <= b} of exp(-2 pi i <t, x>).
inline std::complex<double> ft_by_slices(const std::vector<Plane>& hs, const std::vector<double>& t) {
  using boost::math::quadrature::gauss_kronrod;
  const std::size_t d = t.size();
  const std::complex<double> minus_two_pi_i(0, -2 * std::numbers::pi);
  if (d == 1) {
    double lo = -1e300, hi = 1e300;
    for (const auto& h : hs) {
      if (h.a[0] > 1e-15) hi = std::min(hi, h.b / h.a[0]);
      if (h.a[0] < -1e-15) lo = std::max(lo, h.b / h.a[0]);
    }
    if (!(lo < hi)) return 0;
    // e^{-2 pi i t mid} (hi - lo) sin(pi t (hi - lo)) / (pi t (hi - lo))
    const double x = std::numbers::pi * t[0] * (hi - lo);
    const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return std::exp(minus_two_pi_i * t[0] * (0.5 * (lo + hi))) * (hi - lo) * sinc;
  }
  std::vector<double> cuts;
  for (const auto& v : vertices_of(hs, d)) cuts.push_back(v[0]);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             cuts.end());
  std::vector<double> rest(t.begin() + 1, t.end());
  auto slice = [&](double x0) {
    std::vector<Plane> sub;
    for (const auto& h : hs) sub.push_back({std::vector<double>(h.a.begin() + 1, h.a.end()), h.b - h.a[0] * x0});
    return std::exp(minus_two_pi_i * t[0] * x0) * ft_by_slices(sub, rest);
  };
  std::complex<double> total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += gauss_kronrod<double, 31>::integrate(slice, cuts[i], cuts[i + 1], 6, 1e-12);
  return total;
}

}  // namespace spectile::oracle
