#pragma once

#include <optional>

#include "spectile/core/defaults.hpp"
#include "spectile/fourier/ft.hpp"
#include "spectile/measures/autocorrelation.hpp"
#include "spectile/measures/diffraction.hpp"

namespace spectile {

struct AutocorrPropertyReport {
  // (a) positivity
  bool positive_weights = false;
  // (b) every nonzero atom is a zero of the Fourier transform of 1_R
  std::size_t atoms_checked = 0;
  std::vector<DVec> ft_nonzero_atoms;
  // (c) unit atom at the origin, isolated
  double origin_weight = 0;
  double min_nonzero_norm = 0;
  // (d) translation-boundedness witness: largest unit-ball mass on a grid
  double unit_ball_mass_bound = 0;
  // (e) diffraction equals m(R) delta_0 on Delta(R); empty when no period was given
  std::optional<double> diffraction_origin_weight;
  std::vector<DVec> diffraction_atoms_in_delta;

  bool unit_origin(double tol) const { return std::abs(origin_weight - 1) <= tol && min_nonzero_norm > 0; }
  bool diffraction_ok(const Rational& measure, double tol) const {
    return !diffraction_origin_weight ||
           (std::abs(*diffraction_origin_weight - to_double(measure)) <= tol && diffraction_atoms_in_delta.empty());
  }
  bool pass(const Rational& measure, double tol) const {
    return positive_weights && ft_nonzero_atoms.empty() && unit_origin(tol) && std::isfinite(unit_ball_mass_bound) &&
           diffraction_ok(measure, tol);
  }
};

/// Checks an autocorrelation candidate for a spectrum of R. With a period
/// lattice the diffraction is computed and compared on Delta(R).
inline AutocorrPropertyReport autocorr_property_check(const Atoms& gamma, const Region& r,
                                                      double zero_tol = defaults::kLatticeZeroTol,
                                                      const Lattice* period = nullptr) {
  if (gamma.points.empty()) throw Error(ErrorCode::MalformedInput, "empty autocorrelation");
  const std::size_t d = r.dim();
  if (gamma.points[0].size() != d) throw Error(ErrorCode::MalformedInput, "dimension mismatch");
  AutocorrPropertyReport rep;
  rep.positive_weights = std::all_of(gamma.weights.begin(), gamma.weights.end(), [](double w) { return w > 0; });
  rep.min_nonzero_norm = std::numeric_limits<double>::infinity();
  double extent = 0;
  for (std::size_t i = 0; i < gamma.points.size(); ++i) {
    const DVec& t = gamma.points[i];
    const double len = norm(t);
    extent = std::max(extent, len);
    if (len <= defaults::kSnap) {
      rep.origin_weight += gamma.weights[i];
      continue;
    }
    rep.min_nonzero_norm = std::min(rep.min_nonzero_norm, len);
    ++rep.atoms_checked;
    if (!is_ft_zero(r, t, zero_tol)) rep.ft_nonzero_atoms.push_back(t);
  }

  const std::size_t per_axis = 10;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    DVec c(d);
    for (std::size_t i = 0; i < d; ++i)
      c[i] = -extent + 2 * extent * static_cast<double>(idx[i]) / static_cast<double>(per_axis - 1);
    double mass = 0;
    for (std::size_t i = 0; i < gamma.points.size(); ++i)
      if (norm(gamma.points[i] - c) <= 1) mass += gamma.weights[i];
    rep.unit_ball_mass_bound = std::max(rep.unit_ball_mass_bound, mass);
    std::size_t k = 0;
    while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == d) break;
  }

  if (period) {
    const LatticeAtoms hat = diffraction_periodic(fold_periodic(gamma, *period, 1e-9));
    const Atoms near = expand(hat, 2 * r.radius() + 1e-9);
    rep.diffraction_origin_weight = 0.0;
    for (std::size_t i = 0; i < near.points.size(); ++i) {
      if (is_zero(near.exact[i])) {
        rep.diffraction_origin_weight = near.weights[i];
      } else if (r.overlap_positive(near.exact[i])) {
        rep.diffraction_atoms_in_delta.push_back(near.points[i]);
      }
    }
  }
  return rep;
}

}  // namespace spectile
