#pragma once

#include <random>
#include <vector>

#include "spectile/geometry/polytope.hpp"

namespace spectile::fixtures {

using geometry::Polytope;

inline RVec rv(std::initializer_list<long> xs) {
  RVec v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

/// [-1/2, 1/2]^d
inline Polytope unit_cube(std::size_t d) {
  std::vector<RVec> pts;
  for (std::size_t mask = 0; mask < (1u << d); ++mask) {
    RVec p;
    for (std::size_t i = 0; i < d; ++i) p.push_back((mask >> i) & 1 ? Rational(1, 2) : Rational(-1, 2));
    pts.push_back(p);
  }
  return Polytope::from_vertices(pts);
}

/// [0, 1]^d
inline Polytope corner_cube(std::size_t d) {
  std::vector<RVec> pts;
  for (std::size_t mask = 0; mask < (1u << d); ++mask) {
    RVec p;
    for (std::size_t i = 0; i < d; ++i) p.push_back(Rational((mask >> i) & 1));
    pts.push_back(p);
  }
  return Polytope::from_vertices(pts);
}

inline std::vector<RVec> hexagon_points() {
  return {rv({1, 0}), rv({0, 1}), rv({-1, 1}), rv({-1, 0}), rv({0, -1}), rv({1, -1})};
}

inline Polytope hexagon() { return Polytope::from_vertices(hexagon_points()); }

inline Polytope triangle() { return Polytope::from_vertices({rv({0, 0}), rv({1, 0}), rv({0, 1})}); }

inline Polytope prism_over(const std::vector<RVec>& base) {
  std::vector<RVec> pts;
  for (const auto& b : base) {
    RVec lo = b, hi = b;
    lo.push_back(Rational(-1, 2));
    hi.push_back(Rational(1, 2));
    pts.push_back(lo);
    pts.push_back(hi);
  }
  return Polytope::from_vertices(pts);
}

inline std::vector<RVec> octagon_points() {
  return {rv({2, 1}), rv({1, 2}), rv({-1, 2}), rv({-2, 1}), rv({-2, -1}), rv({-1, -2}), rv({1, -2}), rv({2, -1})};
}

inline Polytope octagon_prism() { return prism_over(octagon_points()); }
inline Polytope hexagonal_prism() { return prism_over(hexagon_points()); }
inline Polytope triangular_prism() { return prism_over({rv({0, 0}), rv({1, 0}), rv({0, 1})}); }

/// All permutations of (0, +-1, +-2).
inline Polytope truncated_octahedron() {
  std::vector<RVec> pts;
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& perm : perms)
    for (int s1 : {-1, 1})
      for (int s2 : {-1, 1}) {
        const long base[3] = {0, s1 * 1, s2 * 2};
        RVec p(3);
        for (int i = 0; i < 3; ++i) p[perm[i]] = Rational(base[i]);
        pts.push_back(p);
      }
  return Polytope::from_vertices(pts);
}

/// Hull of random rational points with small denominators.
inline Polytope random_polytope(std::mt19937_64& rng, std::size_t d, std::size_t n_points) {
  std::uniform_int_distribution<long> num(-12, 12);
  std::uniform_int_distribution<long> den(1, 4);
  while (true) {
    std::vector<RVec> pts;
    for (std::size_t i = 0; i < n_points; ++i) {
      RVec p;
      for (std::size_t k = 0; k < d; ++k) p.push_back(Rational(num(rng), den(rng)));
      pts.push_back(p);
    }
    try {
      return Polytope::from_vertices(pts);
    } catch (const Error&) {
    }
  }
}

inline RVec random_rational_vector(std::mt19937_64& rng, std::size_t d, long range, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  RVec v;
  for (std::size_t k = 0; k < d; ++k) {
    const long q = den(rng);
    std::uniform_int_distribution<long> num(-range * q, range * q);
    v.push_back(Rational(num(rng), q));
  }
  return v;
}

}  // namespace spectile::fixtures
