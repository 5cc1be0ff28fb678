#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectile/belts/belt.hpp"

namespace spectile::belts {

struct VMReport {
  std::optional<RVec> center;  // body center, condition (ii)
  bool facets_symmetric = false;  // condition (iii)
  geometry::SymmetryReport symmetry;
  std::vector<Belt> belts;  // empty when (iii) fails
  bool belts_ok = false;    // condition (iv): every belt has 4 or 6 facets
  std::vector<std::string> failed_conditions;

  bool symmetric() const { return center.has_value(); }
  bool tiles() const { return failed_conditions.empty(); }
};

/// Decides whether a convex polytope tiles by translations. Condition (i),
/// being a polytope, holds by construction.
inline VMReport vm_check(const Polytope& p) {
  VMReport r;
  r.symmetry = geometry::facet_symmetry(p);
  r.center = r.symmetry.body_center;
  r.facets_symmetric = r.symmetry.all_facets_symmetric();
  if (r.facets_symmetric) {
    r.belts = all_belts(p);
    r.belts_ok = std::all_of(r.belts.begin(), r.belts.end(),
                             [](const Belt& b) { return b.length() == 4 || b.length() == 6; });
  }
  if (!r.center) r.failed_conditions.push_back("ii");
  if (!r.facets_symmetric) r.failed_conditions.push_back("iii");
  if (r.facets_symmetric && !r.belts_ok) r.failed_conditions.push_back("iv");
  return r;
}

}  // namespace spectile::belts
