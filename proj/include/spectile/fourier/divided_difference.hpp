#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace spectile::fourier {

using Complex = std::complex<double>;

struct DividedDifference {
  Complex value;
  double error;  // running bound on the floating error of `value`
};

/// Node sets whose spread is at most this are evaluated by a Taylor series
/// about their mean; wider sets are split by the two-point recursion.
inline constexpr double kTaylorSpread = 1.0;

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline DividedDifference exp_taylor(const std::vector<Complex>& nodes) {
  const std::size_t order = nodes.size() - 1;
  Complex center = 0;
  for (const auto& z : nodes) center += z;
  center /= static_cast<double>(nodes.size());

  // h[k] = complete homogeneous symmetric polynomial of degree k in the
  // centered nodes; exp[z_0..z_m] = e^c * sum_k h_k / (m + k)!.
  constexpr std::size_t kTerms = 30;
  std::vector<Complex> h(kTerms, Complex(0));
  h[0] = 1;
  for (const auto& z : nodes)
    for (std::size_t k = 1; k < kTerms; ++k) h[k] += (z - center) * h[k - 1];

  double inv_fact = 1;
  for (std::size_t i = 2; i <= order; ++i) inv_fact /= static_cast<double>(i);
  Complex sum = 0;
  double magnitude = 0;
  for (std::size_t k = 0; k < kTerms; ++k) {
    if (k > 0) inv_fact /= static_cast<double>(order + k);
    sum += h[k] * inv_fact;
    magnitude += std::abs(h[k]) * inv_fact;
  }
  const Complex scale = std::exp(center);
  return {scale * sum, std::abs(scale) * magnitude * kEps * static_cast<double>(order + kTerms)};
}

}  // namespace detail

/// Divided difference exp[z_0, ..., z_m] of the exponential at arbitrary
/// (possibly repeated) complex nodes, stable near coincidences.
inline DividedDifference exp_divided_difference(std::span<const Complex> nodes) {
  const std::size_t n = nodes.size();
  if (n == 0) return {0, 0};
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<DividedDifference> memo(full + 1);
  std::vector<bool> done(full + 1, false);

  auto eval = [&](auto&& self, std::size_t mask) -> DividedDifference {
    if (done[mask]) return memo[mask];
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) ids.push_back(i);
    DividedDifference out;
    double spread = 0;
    std::size_t lo = ids[0], hi = ids[0];
    for (std::size_t a = 0; a < ids.size(); ++a)
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        const double s = std::abs(nodes[ids[a]] - nodes[ids[b]]);
        if (s > spread) {
          spread = s;
          lo = ids[a];
          hi = ids[b];
        }
      }
    if (spread <= kTaylorSpread) {
      std::vector<Complex> pts;
      for (auto i : ids) pts.push_back(nodes[i]);
      out = detail::exp_taylor(pts);
    } else {
      const auto without_lo = self(self, mask & ~(std::size_t{1} << lo));
      const auto without_hi = self(self, mask & ~(std::size_t{1} << hi));
      const Complex gap = nodes[hi] - nodes[lo];
      out.value = (without_lo.value - without_hi.value) / gap;
      out.error = (without_lo.error + without_hi.error +
                   detail::kEps * (std::abs(without_lo.value) + std::abs(without_hi.value))) /
                      std::abs(gap) +
                  2 * detail::kEps * std::abs(out.value);
    }
    done[mask] = true;
    memo[mask] = out;
    return out;
  };
  return eval(eval, full);
}

}  // namespace spectile::fourier
