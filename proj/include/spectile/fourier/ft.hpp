#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "spectile/fourier/divided_difference.hpp"
#include "spectile/fourier/region.hpp"

namespace spectile {

struct FtValue {
  std::complex<double> value;
  double abs_error_bound = 0;
};

/// Closed-form Fourier transform of the indicator of R,
///   1_R^(t) = integral over R of exp(-2 pi i <t, x>) dx.
/// Polytopes: sum over simplices of d! vol(S) exp[a_0..a_d] with
/// a_j = -2 pi i <t, v_j>. Boxes: product of one-dimensional factors.
inline FtValue ft_indicator(const Region& region, const DVec& t) {
  using fourier::Complex;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const Complex minus_two_pi_i(0.0, -2.0 * std::numbers::pi);
  FtValue out;
  double magnitude = 0;

  if (region.is_polytope()) {
    std::vector<Complex> nodes;
    for (const auto& s : region.simplices()) {
      nodes.clear();
      for (const auto& v : s.vertices) nodes.push_back(minus_two_pi_i * dot(t, v));
      const auto dd = fourier::exp_divided_difference(nodes);
      out.value += s.abs_det * dd.value;
      out.abs_error_bound += s.abs_det * dd.error;
      magnitude += s.abs_det * std::abs(dd.value);
    }
  } else {
    for (const auto& b : region.box_union().boxes_double()) {
      Complex prod = 1;
      double err = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const Complex ends[2] = {minus_two_pi_i * (t[i] * b.lo[i]), minus_two_pi_i * (t[i] * b.hi[i])};
        const auto dd = fourier::exp_divided_difference(ends);
        const double len = b.hi[i] - b.lo[i];
        const Complex factor = len * dd.value;
        err = err * std::abs(factor) + std::abs(prod) * len * dd.error;
        prod *= factor;
      }
      out.value += prod;
      out.abs_error_bound += err;
      magnitude += std::abs(prod);
    }
  }
  // Rounding of vertex coordinates and of the phases themselves.
  const double phase_scale = 1.0 + 2.0 * std::numbers::pi * norm(t) * std::max(1.0, region.radius());
  out.abs_error_bound += 8 * eps * phase_scale * magnitude;
  return out;
}

/// |1_R^(t)| <= tol + error bound.
inline bool is_ft_zero(const Region& region, const DVec& t, double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::PreconditionFailed, "zero tolerance must be positive");
  const auto v = ft_indicator(region, t);
  return std::abs(v.value) <= tol + v.abs_error_bound;
}

}  // namespace spectile
