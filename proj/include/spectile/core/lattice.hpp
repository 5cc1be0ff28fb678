#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "spectile/core/error.hpp"
#include "spectile/core/linalg.hpp"
#include "spectile/core/rational.hpp"

namespace spectile {

/// A lattice given by linearly independent rational generators (the columns
/// of its basis matrix). Rank may be smaller than the ambient dimension.
class Lattice {
 public:
  Lattice() = default;

  explicit Lattice(std::vector<RVec> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw Error(ErrorCode::MalformedInput, "lattice needs at least one generator");
    dim_ = generators_[0].size();
    if (dim_ == 0) throw Error(ErrorCode::MalformedInput, "lattice generators must be nonempty vectors");
    for (const auto& g : generators_)
      if (g.size() != dim_) throw Error(ErrorCode::MalformedInput, "lattice generators differ in length");
    if (generators_.size() > dim_ || linalg::rank(generators_) != generators_.size())
      throw Error(ErrorCode::MalformedInput, "lattice generators are linearly dependent");
    precompute();
  }

  static Lattice integer(std::size_t d) {
    std::vector<RVec> gens;
    for (std::size_t i = 0; i < d; ++i) {
      RVec e(d, Rational(0));
      e[i] = 1;
      gens.push_back(e);
    }
    return Lattice(gens);
  }

  /// Lattice spanned over Z by an arbitrary finite set of rational vectors.
  static Lattice from_generators(const std::vector<RVec>& vectors) {
    if (vectors.empty()) throw Error(ErrorCode::MalformedInput, "no generators");
    Integer den = 1;
    for (const auto& v : vectors)
      for (const auto& x : v) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
    std::vector<std::vector<Integer>> cols;
    for (const auto& v : vectors) {
      std::vector<Integer> c;
      for (const auto& x : v) c.push_back(boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x)));
      cols.push_back(c);
    }
    std::vector<RVec> basis;
    for (const auto& c : linalg::integer_lattice_basis(cols)) {
      RVec g;
      for (const auto& x : c) g.push_back(Rational(x) / Rational(den));
      basis.push_back(g);
    }
    if (basis.empty()) throw Error(ErrorCode::MalformedInput, "generators span the zero lattice");
    return Lattice(basis);
  }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return generators_.size(); }
  bool full_rank() const { return rank() == dim_; }
  const std::vector<RVec>& generators() const { return generators_; }

  /// d x k matrix whose columns are the generators.
  RMat basis_matrix() const { return linalg::transpose(generators_); }

  Rational determinant() const {
    if (!full_rank()) throw Error(ErrorCode::PreconditionFailed, "determinant of a rank-deficient lattice");
    return linalg::determinant(basis_matrix());
  }

  RVec point(const std::vector<long>& coeffs) const {
    RVec p(dim_, Rational(0));
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      if (coeffs[j] != 0)
        for (std::size_t i = 0; i < dim_; ++i) p[i] += generators_[j][i] * coeffs[j];
    return p;
  }

  DVec point_double(const std::vector<long>& coeffs) const {
    DVec p(dim_, 0.0);
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      for (std::size_t i = 0; i < dim_; ++i) p[i] += basis_double_[j][i] * static_cast<double>(coeffs[j]);
    return p;
  }

  /// Coefficients c with B c = v, if v lies in the span.
  std::optional<RVec> coordinates(const RVec& v) const {
    const RMat gram = linalg::multiply(generators_, linalg::transpose(generators_));
    const RVec rhs = linalg::multiply(generators_, v);
    auto c = linalg::solve(gram, rhs);
    if (!c) return std::nullopt;
    if (point_rational(*c) != v) return std::nullopt;
    return c;
  }

  bool contains(const RVec& v) const {
    const auto c = coordinates(v);
    if (!c) return false;
    for (const auto& x : *c)
      if (boost::multiprecision::denominator(x) != 1) return false;
    return true;
  }

  /// Calls `visit(coeffs)` for every lattice point within `radius` of `center`.
  void for_each_in_ball(const DVec& center, double radius,
                        const std::function<void(const std::vector<long>&, const DVec&)>& visit) const {
    const std::size_t k = rank();
    std::vector<double> mid(k), half(k);
    for (std::size_t j = 0; j < k; ++j) {
      mid[j] = dot(pinv_[j], center);
      half[j] = radius * norm(pinv_[j]) + 1e-9;
    }
    std::vector<long> lo(k), hi(k), c(k);
    for (std::size_t j = 0; j < k; ++j) {
      lo[j] = static_cast<long>(std::ceil(mid[j] - half[j]));
      hi[j] = static_cast<long>(std::floor(mid[j] + half[j]));
      if (lo[j] > hi[j]) return;
    }
    const double r2 = radius * radius * (1 + 1e-12) + 1e-18;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (j == k) {
        const DVec p = point_double(c);
        const DVec diff = p - center;
        if (dot(diff, diff) <= r2) visit(c, p);
        return;
      }
      for (long v = lo[j]; v <= hi[j]; ++v) {
        c[j] = v;
        rec(j + 1);
      }
    };
    rec(0);
  }

  /// The n shortest nonzero lattice vectors, ordered by length then
  /// lexicographically by coefficients.
  std::vector<RVec> shortest_nonzero(std::size_t n) const {
    double shortest = 0;
    for (const auto& g : basis_double_) shortest = std::max(shortest, norm(g));
    double radius = shortest;
    while (true) {
      std::vector<std::pair<double, std::vector<long>>> found;
      for_each_in_ball(DVec(dim_, 0.0), radius, [&](const std::vector<long>& c, const DVec& p) {
        bool zero = true;
        for (long x : c) zero = zero && x == 0;
        if (!zero) found.emplace_back(norm(p), c);
      });
      if (found.size() >= n) {
        std::sort(found.begin(), found.end());
        std::vector<RVec> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(point(found[i].second));
        return out;
      }
      radius *= 1.5;
    }
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    if (a.dim_ != b.dim_ || a.rank() != b.rank()) return false;
    for (const auto& g : b.generators_)
      if (!a.contains(g)) return false;
    for (const auto& g : a.generators_)
      if (!b.contains(g)) return false;
    return true;
  }

 private:
  RVec point_rational(const RVec& c) const {
    RVec p(dim_, Rational(0));
    for (std::size_t j = 0; j < c.size(); ++j)
      for (std::size_t i = 0; i < dim_; ++i) p[i] += generators_[j][i] * c[j];
    return p;
  }

  void precompute() {
    basis_double_.clear();
    for (const auto& g : generators_) basis_double_.push_back(to_double(g));
    // Pseudo-inverse rows (B^T B)^{-1} B^T, exact then rounded.
    const RMat gram = linalg::multiply(generators_, linalg::transpose(generators_));
    const RMat pinv = linalg::multiply(*linalg::inverse(gram), generators_);
    pinv_.clear();
    for (const auto& row : pinv) pinv_.push_back(to_double(row));
  }

  std::vector<RVec> generators_;
  std::size_t dim_ = 0;
  std::vector<DVec> basis_double_;
  std::vector<DVec> pinv_;
};

}  // namespace spectile
