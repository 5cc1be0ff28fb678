#pragma once

#include <complex>
#include <map>
#include <numbers>

#include "spectile/measures/measure.hpp"
#include "spectile/spectra/spectra.hpp"

namespace spectile {

/// Atoms of a lattice-periodic measure inside the ball |t| <= radius, sorted.
inline Atoms expand(const LatticeAtoms& m, double radius) {
  std::map<RVec, double> found;
  for (std::size_t j = 0; j < m.offsets.size(); ++j)
    m.lattice.for_each_in_ball(-to_double(m.offsets[j]), radius, [&](const std::vector<long>& c, const DVec&) {
      const RVec p = m.lattice.point(c) + m.offsets[j];
      if (!(m.exclude_origin && is_zero(p))) found[p] = m.weights[j];
    });
  Atoms out;
  out.support_radius = radius;
  for (const auto& [p, w] : found) {
    out.exact.push_back(p);
    out.points.push_back(to_double(p));
    out.weights.push_back(w);
  }
  return out;
}

namespace detail {

/// Integer points z with M^-1 z in [0,1)^d: one representative per coset of
/// the column lattice of M in Z^d.
inline std::vector<RVec> parallelepiped_points(const RMat& m) {
  const std::size_t d = m.size();
  const RMat inv = *linalg::inverse(m);
  std::vector<long> lo(d, 0), hi(d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const long v = static_cast<long>(to_double(m[i][j]));
      (v < 0 ? lo[i] : hi[i]) += v;
    }
  std::vector<RVec> out;
  RVec z(d);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == d) {
      const RVec c = linalg::multiply(inv, z);
      if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x >= 0 && x < 1; })) out.push_back(z);
      return;
    }
    for (long v = lo[i]; v <= hi[i]; ++v) {
      z[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

inline Rational frac(const Rational& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer q = numerator(x) / denominator(x);
  if (x < 0 && Rational(q) != x) q -= 1;
  return x - Rational(q);
}

}  // namespace detail

/// Rewrites finitely many exact atoms as a measure periodic under L. Every
/// translate inside the support radius must be present with the same weight.
inline LatticeAtoms fold_periodic(const Atoms& atoms, const Lattice& l, double tol = 1e-12) {
  if (!l.full_rank()) throw Error(ErrorCode::MalformedInput, "period lattice must have full rank");
  if (atoms.exact.size() != atoms.points.size() || atoms.points.empty())
    throw Error(ErrorCode::NotPeriodic, "periodic folding needs exact atom positions");
  if (!std::isfinite(atoms.support_radius)) throw Error(ErrorCode::NotPeriodic, "atom list has no support radius");
  const RMat basis = l.basis_matrix();
  std::map<RVec, std::pair<double, double>> classes;  // representative -> (min, max) weight
  std::set<RVec> present(atoms.exact.begin(), atoms.exact.end());
  for (std::size_t i = 0; i < atoms.exact.size(); ++i) {
    RVec c = *l.coordinates(atoms.exact[i]);
    for (auto& x : c) x = detail::frac(x);
    const RVec rep = linalg::multiply(basis, c);
    auto [it, fresh] = classes.try_emplace(rep, atoms.weights[i], atoms.weights[i]);
    if (!fresh) {
      it->second.first = std::min(it->second.first, atoms.weights[i]);
      it->second.second = std::max(it->second.second, atoms.weights[i]);
    }
  }
  LatticeAtoms out{l, {}, {}, false};
  const double inner = atoms.support_radius * (1 - 1e-9);
  for (const auto& [rep, range] : classes) {
    if (range.second - range.first > tol) throw Error(ErrorCode::NotPeriodic, "weights differ within a coset");
    l.for_each_in_ball(-to_double(rep), inner, [&](const std::vector<long>& c, const DVec&) {
      if (!present.count(l.point(c) + rep)) throw Error(ErrorCode::NotPeriodic, "a lattice translate of an atom is missing");
    });
    out.offsets.push_back(rep);
    out.weights.push_back(0.5 * (range.first + range.second));
  }
  return out;
}

/// Fourier transform of sum_j w_j delta_{L + o_j} by Poisson summation:
/// (1/|det L|) sum over xi in L* of sum_j w_j e^{-2 pi i <xi, o_j>} delta_xi.
/// The coefficient only depends on xi modulo the dual of L + Z{o_j}.
inline LatticeAtoms diffraction_periodic(const LatticeAtoms& g) {
  const Lattice& l = g.lattice;
  if (!l.full_rank()) throw Error(ErrorCode::NotPeriodic, "period lattice must have full rank");
  if (g.exclude_origin) throw Error(ErrorCode::NotPeriodic, "a removed origin atom breaks periodicity");
  std::vector<RVec> gens = l.generators();
  gens.insert(gens.end(), g.offsets.begin(), g.offsets.end());
  const Lattice fine = Lattice::from_generators(gens);
  const Lattice dual = dual_lattice(l);
  const Lattice coarse = dual_lattice(fine);
  const RMat dual_inv = *linalg::inverse(dual.basis_matrix());
  const RMat m = linalg::multiply(dual_inv, coarse.basis_matrix());
  const double scale = 1.0 / to_double(abs(l.determinant()));

  LatticeAtoms out{coarse, {}, {}, false};
  for (const auto& z : detail::parallelepiped_points(m)) {
    const RVec xi = linalg::multiply(dual.basis_matrix(), z);
    std::complex<double> c = 0;
    for (std::size_t j = 0; j < g.offsets.size(); ++j)
      c += g.weights[j] * std::polar(1.0, -2 * std::numbers::pi * to_double(detail::frac(dot(xi, g.offsets[j]))));
    c *= scale;
    if (std::abs(c) < 1e-12) continue;
    if (std::abs(c.imag()) > 1e-9) throw Error(ErrorCode::PreconditionFailed, "diffraction coefficient is not real");
    if (c.real() < 0) throw Error(ErrorCode::PreconditionFailed, "diffraction coefficient is negative");
    out.offsets.push_back(xi);
    out.weights.push_back(c.real());
  }
  return out;
}

}  // namespace spectile
