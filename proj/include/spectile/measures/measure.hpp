#pragma once

#include <cmath>
#include <limits>
#include <variant>
#include <vector>

#include "spectile/spectra/point_set.hpp"

namespace spectile {

/// Finitely many point masses. `exact` is either empty or parallel to
/// `points`. The list is complete only within `support_radius` of the origin.
struct Atoms {
  std::vector<DVec> points;
  std::vector<RVec> exact;
  std::vector<double> weights;
  double support_radius = std::numeric_limits<double>::infinity();
};

/// sum_j w_j * delta_{L + o_j}, optionally without the atom at the origin.
/// The lattice may have rank below the ambient dimension.
struct LatticeAtoms {
  Lattice lattice;
  std::vector<RVec> offsets;
  std::vector<double> weights;
  bool exclude_origin = false;
};

/// density * (delta_P x Lebesgue): P lives on the coordinates `point_axes`,
/// Lebesgue measure on the remaining ones.
struct ProductLebesgue {
  std::vector<std::size_t> point_axes;
  PointSetSpec point_set;
  double density = 1;
};

struct Uniform {
  double density = 1;
};

using MeasureComponent = std::variant<Atoms, LatticeAtoms, ProductLebesgue, Uniform>;

/// Positive, locally finite measure given as a sum of components.
class MeasureSpec {
 public:
  MeasureSpec(std::size_t dim, std::vector<MeasureComponent> components)
      : dim_(dim), components_(std::move(components)) {
    for (const auto& c : components_) std::visit([&](const auto& x) { validate(x); }, c);
  }

  std::size_t dim() const { return dim_; }
  const std::vector<MeasureComponent>& components() const { return components_; }

 private:
  static void positive(double w, const char* what) {
    if (!(w > 0) || !std::isfinite(w)) throw Error(ErrorCode::MalformedInput, std::string(what) + " must be positive");
  }

  void validate(const Atoms& a) const {
    if (a.points.size() != a.weights.size()) throw Error(ErrorCode::MalformedInput, "atoms: points/weights length");
    if (!a.exact.empty() && a.exact.size() != a.points.size())
      throw Error(ErrorCode::MalformedInput, "atoms: exact/points length");
    for (const auto& p : a.points)
      if (p.size() != dim_) throw Error(ErrorCode::MalformedInput, "atoms: point dimension");
    for (double w : a.weights) positive(w, "atom weights");
    if (!(a.support_radius > 0)) throw Error(ErrorCode::MalformedInput, "atoms: support_radius must be positive");
  }

  void validate(const LatticeAtoms& a) const {
    if (a.lattice.dim() != dim_) throw Error(ErrorCode::MalformedInput, "lattice_atoms: lattice dimension");
    if (a.offsets.empty() || a.offsets.size() != a.weights.size())
      throw Error(ErrorCode::MalformedInput, "lattice_atoms: offsets/weights length");
    for (std::size_t i = 0; i < a.offsets.size(); ++i) {
      if (a.offsets[i].size() != dim_) throw Error(ErrorCode::MalformedInput, "lattice_atoms: offset dimension");
      for (std::size_t j = 0; j < i; ++j)
        if (a.lattice.contains(a.offsets[i] - a.offsets[j]))
          throw Error(ErrorCode::MalformedInput, "lattice_atoms: offsets not distinct modulo the lattice");
    }
    for (double w : a.weights) positive(w, "lattice_atoms weights");
  }

  void validate(const ProductLebesgue& p) const {
    if (p.point_axes.empty() || p.point_axes.size() >= dim_)
      throw Error(ErrorCode::MalformedInput, "product_lebesgue: need 1 <= |point_axes| < dim");
    std::vector<bool> seen(dim_, false);
    for (auto a : p.point_axes) {
      if (a >= dim_ || seen[a]) throw Error(ErrorCode::MalformedInput, "product_lebesgue: bad point_axes");
      seen[a] = true;
    }
    if (p.point_set.dim() != p.point_axes.size())
      throw Error(ErrorCode::MalformedInput, "product_lebesgue: point_set dimension must equal |point_axes|");
    positive(p.density, "product_lebesgue density");
  }

  void validate(const Uniform& u) const { positive(u.density, "uniform density"); }

  std::size_t dim_;
  std::vector<MeasureComponent> components_;
};

namespace detail {

/// Complement of `axes` in {0, ..., d-1}.
inline std::vector<std::size_t> other_axes(const std::vector<std::size_t>& axes, std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d; ++i)
    if (std::find(axes.begin(), axes.end(), i) == axes.end()) out.push_back(i);
  return out;
}

template <class V>
V pick(const V& x, const std::vector<std::size_t>& axes) {
  V out;
  for (auto a : axes) out.push_back(x[a]);
  return out;
}

}  // namespace detail

}  // namespace spectile
