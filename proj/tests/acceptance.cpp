#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "measure_fixtures.hpp"
#include "quadrature_oracle.hpp"
#include "spectile/belts/tiling_lattice.hpp"
#include "spectile/measures/autocorrelation.hpp"
#include "spectile/measures/diffraction.hpp"
#include "spectile/measures/holes.hpp"
#include "spectile/spectra/spectra.hpp"

using namespace spectile;
using namespace spectile::belts;
using namespace spectile::fixtures;

namespace {

/// Collects failed checks for one criterion.
struct Checks {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::multiset<std::size_t> belt_lengths(const std::vector<Belt>& belts) {
  std::multiset<std::size_t> out;
  for (const auto& b : belts) out.insert(b.length());
  return out;
}

double weight_at(const Atoms& a, const RVec& x) {
  for (std::size_t i = 0; i < a.exact.size(); ++i)
    if (a.exact[i] == x) return a.weights[i];
  return 0;
}

double line_mass(const Atoms& a, double h, double y_max) {
  double m = 0;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if (a.points[i][0] == h && std::abs(a.points[i][1]) <= y_max) m += a.weights[i];
  return m;
}

DVec random_t(std::mt19937_64& rng, std::size_t d, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  DVec t(d);
  for (auto& x : t) x = u(rng);
  return t;
}

Rational support(const std::vector<RVec>& pts, const RVec& u) {
  Rational best = dot(pts[0], u);
  for (const auto& p : pts) best = std::max(best, dot(p, u));
  return best;
}

// --- criteria ----------------------------------------------------------------

void venkov_mcmullen(Checks& c) {
  for (std::size_t d = 2; d <= 4; ++d) c.expect(vm_check(unit_cube(d)).tiles(), "cube d=" + std::to_string(d));
  const auto hex = vm_check(hexagon());
  c.expect(hex.tiles() && belt_lengths(hex.belts) == std::multiset<std::size_t>{6}, "hexagon");
  const auto oct = vm_check(octagon_prism());
  c.expect(oct.failed_conditions == std::vector<std::string>{"iv"} && belt_lengths(oct.belts).count(8) == 1,
           "octagon prism");
  const auto tri = vm_check(triangular_prism());
  const auto& f = tri.failed_conditions;
  c.expect(!tri.tiles() && (std::count(f.begin(), f.end(), "ii") || std::count(f.begin(), f.end(), "iii")),
           "triangular prism");
  const auto to = vm_check(truncated_octahedron());
  bool four_or_six = !to.belts.empty();
  for (const auto& b : to.belts) four_or_six = four_or_six && (b.length() == 4 || b.length() == 6);
  c.expect(to.tiles() && four_or_six, "truncated octahedron");
}

void lattice_and_spectrum(Checks& c) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const Region cube(unit_cube(d));
    const auto z = Lattice::integer(d);
    c.expect(orthogonality_check(cube, PointSetSpec::lattice(z), 5, 1e-8).pass, "orthogonality d=" + std::to_string(d));
    c.expect(lattice_tiling_check(cube, z, 100, 1e-8).pass, "cube tiling d=" + std::to_string(d));
  }
  for (const auto& [name, p] : std::vector<std::pair<std::string, Polytope>>{
           {"hexagon", hexagon()}, {"truncated octahedron", truncated_octahedron()}}) {
    const Lattice l = construct_tiling_lattice(p, vm_check(p));
    c.expect(abs(l.determinant()) == p.volume(), name + " determinant");
    const auto check = lattice_tiling_check(Region(p), l, 100, 1e-8);
    c.expect(check.pass && check.max_abs_ft <= 1e-8, name + " dual zeros");
  }
}

void completeness(Checks& c) {
  const Region interval(unit_cube(1));
  const auto z = PointSetSpec::lattice(Lattice::integer(1));
  const GridSpec interval_grid{{-0.5}, {0.5}, 101};
  c.expect(completeness_residual(interval, z, interval_grid, 500).residual <= 1e-2, "interval with Z");

  const Region omega(two_intervals_boxes());
  const auto spectrum = two_interval_spectrum();
  const GridSpec omega_grid{{0.0}, {1.5}, 101};
  c.expect(completeness_residual(omega, spectrum, omega_grid, 500).residual <= 1e-2, "two intervals");

  // Removing the point at 0 leaves a deficit of f(0) = 1 at the origin.
  const GridSpec near_zero{{-0.05}, {0.05}, 11};
  const PointSetSpec punctured_z(z.variant(), {q(0)});
  c.expect(completeness_residual(interval, punctured_z, near_zero, 500).residual > 0.5, "Z without 0");
  const PointSetSpec punctured_spectrum(spectrum.variant(), {q(0)});
  c.expect(completeness_residual(omega, punctured_spectrum, near_zero, 500).residual > 0.5, "spectrum without 0");
}

void two_interval_reproduction(Checks& c) {
  const auto a4 = autocorrelation_window(two_interval_spectrum(), 4, WindowShape::Cube, 10);
  const auto a8 = autocorrelation_window(two_interval_spectrum(), 8, WindowShape::Cube, 10);
  c.expect(a4.atoms.exact == a8.atoms.exact && max_weight_change(a4.atoms, a8.atoms) == 0.0, "window 4 vs 8");
  for (long k = -20; k <= 20; ++k) {
    c.expect(std::abs(weight_at(a4.atoms, q(k, 2)) - cos2_weight(k)) <= 1e-12, "weight at k=" + std::to_string(k));
  }
  for (const auto& x : a4.atoms.exact) {
    const Rational twice = x[0] * 2;
    c.expect(boost::multiprecision::denominator(twice) == 1, "atom off (1/2)Z");
  }
  const auto gamma = fold_periodic(a8.atoms, Lattice({q(2)}));
  const auto hat = expand(diffraction_periodic(gamma), 10);
  const auto again = expand(gamma, 10);
  c.expect(hat.exact == again.exact, "diffraction support");
  for (std::size_t i = 0; i < hat.exact.size() && hat.exact == again.exact; ++i)
    c.expect(std::abs(hat.weights[i] - again.weights[i]) <= 1e-10, "diffraction weight");
}

void parabolic_convergence(Checks& c) {
  const auto a = autocorrelation_window(PointSetSpec::parabolic_cube(std::sqrt(2.0)), 500, WindowShape::Cube, 3);
  for (std::size_t i = 0; i < a.atoms.points.size(); ++i) {
    const auto& p = a.atoms.points[i];
    if (p[0] != 0) continue;
    c.expect(p[1] == std::round(p[1]) && a.atoms.weights[i] == 1.0, "h=0 atom off {0} x Z");
  }
  c.expect(line_mass(a.atoms, 0, 3) == 7.0, "h=0 atoms");
  c.expect(std::abs(line_mass(a.atoms, 1, 1) - 2.0) <= 0.05, "h=1 mass");
  c.expect(std::abs(line_mass(a.atoms, 2, 1) - 2.0) <= 0.05, "h=2 mass");
}

void weak_tilings(Checks& c) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto r = weak_tiling_verify(Region(unit_cube(d)), punctured_lattice(d),
                                      GridSpec::cube(d, 2.0, d == 3 ? 16 : 50));
    c.expect(r.max_residual() <= 1e-12 && r.support_violations.empty() && r.points_checked > 0,
             "punctured lattice d=" + std::to_string(d));
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5; ++i) {
    const Polytope p = random_polytope(rng, 2 + i % 2, 12);
    const auto mu = single(p.dim(), Uniform{1.0 / to_double(p.volume())});
    const auto r = weak_tiling_verify(Region(p), mu, GridSpec::cube(p.dim(), 3.0, p.dim() == 2 ? 30 : 10),
                                      WeakTilingTarget::WholeSpace);
    c.expect(r.max_residual() <= 1e-12, "uniform polytope " + std::to_string(i));
  }
  const auto r = weak_tiling_verify(Region(unit_cube(2)), parabolic_weak_tiling(), GridSpec::cube(2, 2.5, 50));
  c.expect(r.max_residual() <= 1e-6 && r.support_violations.empty(), "parabolic diffraction");
}

void holes(Checks& c) {
  const auto cert = hole_detector(ring_polyomino());
  c.expect(cert && !cert->witness.boxes().empty() && cert->witness_measure > 0, "ring polyomino");
  c.expect(!hole_detector(BoxUnion({{rv({0, 0}), rv({5, 3})}})), "solid rectangle");
}

void properties(Checks& c) {
  std::mt19937_64 rng(2025);
  const std::vector<Region> symmetric{Region(hexagon()), Region(truncated_octahedron()), Region(octagon_prism()),
                                      Region(unit_cube(3))};
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 1 + static_cast<std::size_t>(i % 3);
    const auto p = random_polytope(rng, d, 5 + static_cast<std::size_t>(i % 4));
    const Region r(p);
    const DVec t = random_t(rng, d, 1.5);
    const auto v = ft_indicator(r, t);
    c.expect(std::abs(ft_indicator(r, -t).value - std::conj(v.value)) <= 1e-12, "conjugate symmetry");
    std::vector<oracle::Plane> planes;
    for (const auto& h : p.halfspaces()) planes.push_back({to_double(h.normal), to_double(h.offset)});
    c.expect(std::abs(v.value - oracle::ft_by_slices(planes, t)) <= 1e-9 + v.abs_error_bound, "quadrature oracle");
    const auto& s = symmetric[static_cast<std::size_t>(i) % symmetric.size()];
    c.expect(std::abs(ft_indicator(s, random_t(rng, s.dim(), 2)).value.imag()) <= 1e-10, "real for symmetric");
  }

  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
    const auto p = random_polytope(rng, d, 4 + static_cast<std::size_t>(trial % 8));
    const auto body = geometry::difference_body(p);
    std::vector<RVec> diffs;
    for (const auto& a : p.vertices())
      for (const auto& b : p.vertices()) diffs.push_back(a - b);
    for (const auto& v : body.vertices())
      c.expect(std::find(diffs.begin(), diffs.end(), v) != diffs.end(), "difference body vertex");
    for (const auto& x : diffs) c.expect(body.contains(x), "difference in body");
    for (const auto& h : body.halfspaces())
      c.expect(h.offset == support(p.vertices(), h.normal) + support(p.vertices(), -h.normal), "support function");
  }

  for (const auto& p : {unit_cube(2), unit_cube(3), hexagon(), hexagonal_prism(), octagon_prism(),
                        truncated_octahedron()}) {
    const auto index = belts::detail::subfacet_index(p);
    for (const auto& b : all_belts(p)) {
      for (auto s : b.connecting) {
        const Belt again = belt_of(p, s);
        c.expect(again.facets == b.facets && again.connecting == b.connecting && again.generator == b.generator,
                 "belt start");
      }
      const std::vector<std::size_t> reversed(b.facets.rbegin(), b.facets.rend());
      const Belt back = belts::detail::canonical(p, reversed, index);
      c.expect(back.facets == b.facets && back.generator == b.generator, "belt direction");
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<void(Checks&)> run;
  };
  const std::vector<Criterion> criteria{
      {"venkov-mcmullen suite", 5, venkov_mcmullen},
      {"lattice and spectrum suite", 10, lattice_and_spectrum},
      {"completeness residual", 30, completeness},
      {"two-interval exact reproduction", 1, two_interval_reproduction},
      {"parabolic convergence", 60, parabolic_convergence},
      {"weak tiling suite", 30, weak_tilings},
      {"hole detector", 5, holes},
      {"property suites", 0, properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& cr = criteria[i];
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(checks);
    } catch (const std::exception& e) {
      checks.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget_seconds > 0 && secs > cr.budget_seconds)
      checks.failures.push_back("over time budget of " + std::to_string(cr.budget_seconds) + " s");
    const bool ok = checks.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s criterion %zu (%s): %.3f s", ok ? "PASS" : "FAIL", i + 1, cr.name.c_str(), secs);
    if (!ok) {
      std::printf(" [%zu failed: %s", checks.failures.size(), checks.failures[0].c_str());
      std::printf("]");
    }
    std::printf("\n");
  }
  return failed == 0 ? 0 : 1;
}
