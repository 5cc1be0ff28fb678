#pragma once

#include <functional>

#include "spectile/belts/venkov_mcmullen.hpp"
#include "spectile/core/defaults.hpp"
#include "spectile/spectra/spectra.hpp"

namespace spectile::belts {

namespace detail {

/// Upper-triangular Hermite forms of determinant n: the sublattices of index n
/// of Z^d, each visited once.
inline void for_each_hnf(std::size_t d, long n, const std::function<bool(const std::vector<std::vector<long>>&)>& visit) {
  std::vector<std::vector<long>> h(d, std::vector<long>(d, 0));
  bool stop = false;
  std::function<void(std::size_t, long)> diag = [&](std::size_t i, long rest) {
    if (stop) return;
    if (i == d) {
      if (rest != 1) return;
      // Enumerate the entries above the diagonal, each reduced modulo the diagonal of its column.
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < c; ++r) cells.emplace_back(r, c);
      std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (stop) return;
        if (k == cells.size()) {
          stop = visit(h);
          return;
        }
        const auto [r, c] = cells[k];
        for (long v = 0; v < h[r][r] && !stop; ++v) {
          h[r][c] = v;
          fill(k + 1);
        }
        h[r][c] = 0;
      };
      fill(0);
      return;
    }
    for (long a = 1; a <= rest; ++a) {
      if (rest % a) continue;
      h[i][i] = a;
      diag(i + 1, rest / a);
    }
  };
  diag(0, n);
}

}  // namespace detail

/// Lattice of a face-to-face translational tiling. The integer span of the
/// facet-pair vectors is tried first; if its determinant is smaller than the
/// volume, its sublattices of the right index are searched. Every candidate
/// is verified by the dual-lattice Fourier criterion before it is returned.
inline Lattice construct_tiling_lattice(const Polytope& p, const VMReport& report,
                                        std::size_t n_dual = defaults::kDualVectors,
                                        double zero_tol = defaults::kLatticeZeroTol) {
  if (!report.tiles()) throw Error(ErrorCode::PreconditionFailed, "polytope does not satisfy the tiling conditions");
  std::vector<RVec> taus;
  for (const auto& t : report.symmetry.facet_pair_vectors)
    if (t) taus.push_back(*t);
  if (taus.empty()) throw Error(ErrorCode::ConstructionFailed, "no facet-pair vectors");
  const Lattice span = Lattice::from_generators(taus);
  if (!span.full_rank()) throw Error(ErrorCode::ConstructionFailed, "facet-pair vectors do not span");
  const Region region(p);
  auto verified = [&](const Lattice& l) { return lattice_tiling_check(region, l, n_dual, zero_tol).pass; };

  const Rational volume = p.volume();
  const Rational det = abs(span.determinant());
  if (det == volume) {
    if (verified(span)) return span;
    throw Error(ErrorCode::ConstructionFailed, "facet-pair lattice fails verification");
  }
  const Rational index = volume / det;
  if (det > volume || boost::multiprecision::denominator(index) != 1)
    throw Error(ErrorCode::ConstructionFailed, "facet-pair lattice determinant incompatible with volume");

  const RMat basis = span.basis_matrix();
  const std::size_t d = p.dim();
  std::optional<Lattice> found;
  detail::for_each_hnf(d, static_cast<long>(boost::multiprecision::numerator(index)), [&](const auto& h) {
    std::vector<RVec> gens(d, RVec(d, Rational(0)));
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) gens[c][r] += basis[r][k] * h[k][c];
    Lattice candidate(gens);
    if (!verified(candidate)) return false;
    found = candidate;
    return true;
  });
  if (!found) throw Error(ErrorCode::ConstructionFailed, "no sublattice of the facet-pair lattice verifies");
  return *found;
}

}  // namespace spectile::belts
