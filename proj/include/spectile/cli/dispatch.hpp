#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spectile/belts/tiling_lattice.hpp"
#include "spectile/io/json.hpp"
#include "spectile/measures/holes.hpp"
#include "spectile/measures/properties.hpp"
#include "spectile/measures/weak_tiling.hpp"

namespace spectile::cli {

using io::json;

/// Exit codes: the property holds, it fails, or the input is unusable.
enum Exit { kHolds = 0, kFails = 1, kInputError = 2 };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<double> tol, zero_tol, window, margin, radius;
  std::optional<std::size_t> grid;
  std::optional<double> truncation;
  std::string shape = "cube";
  std::string format = "json";
  std::string out;
  std::string region;   // autocorr: region for the property check
  std::string lattice;  // tile-lattice: check this lattice instead of constructing one
  std::vector<std::string> at;  // ft: frequency
  std::size_t dual_vectors = defaults::kDualVectors;
};

namespace detail {

inline json belt_json(const geometry::Polytope& p, const belts::Belt& b) {
  json gen = json::array();
  for (auto v : p.face_lattice().subfacets()[b.generator].vertices) gen.push_back(io::to_json(p.vertices()[v]));
  return {{"length", b.length()}, {"generator", gen}, {"facets", b.facets}, {"orientation", b.orientation}};
}

inline json vm_json(const geometry::Polytope& p, const belts::VMReport& r) {
  json belts = json::array();
  for (const auto& b : r.belts) belts.push_back(belt_json(p, b));
  return {{"symmetric", r.symmetric()},
          {"center", r.center ? io::to_json(*r.center) : json(nullptr)},
          {"facets_symmetric", r.facets_symmetric},
          {"belts", belts},
          {"verdict", r.tiles() ? "tiles" : "fails"},
          {"failed_conditions", r.failed_conditions}};
}

inline json lattice_check_json(const LatticeTilingReport& r) {
  return {{"pass", r.pass},
          {"volume_matches", r.volume_matches},
          {"measure", io::to_json(r.measure)},
          {"abs_determinant", io::to_json(r.abs_determinant)},
          {"dual_vectors_checked", r.dual_vectors_checked},
          {"max_abs_ft", r.max_abs_ft},
          {"non_zeros", r.non_zeros},
          {"zero_tol", r.zero_tol}};
}

inline double diameter(const Region& r) {
  const auto [lo, hi] = r.bounds();
  return norm(hi - lo);
}

inline DVec parse_point(const std::vector<std::string>& parts, std::size_t dim, const char* flag) {
  std::vector<std::string> items;
  for (const auto& p : parts) {
    std::stringstream s(p);
    std::string item;
    while (std::getline(s, item, ','))
      if (!item.empty()) items.push_back(item);
  }
  if (items.size() != dim)
    throw Error(ErrorCode::MalformedInput, std::string("field '") + flag + "': expected " + std::to_string(dim) + " coordinates");
  DVec x;
  for (const auto& it : items) x.push_back(to_double(parse_rational(it)));
  return x;
}

class Runner {
 public:
  explicit Runner(const RunConfig& c) : c_(c) {}

  /// Fills `report` (and `csv` when asked for) and returns the exit code.
  int run(json& report, std::string& csv) {
    report = {{"schema_version", 1}, {"command", c_.command}};
    params_ = json::object();
    int code = kHolds;
    if (c_.command == "analyze") code = analyze(report);
    else if (c_.command == "tile-lattice") code = tile_lattice(report);
    else if (c_.command == "spectrum-check") code = spectrum_check(report);
    else if (c_.command == "weak-tile-verify") code = weak_tile(report);
    else if (c_.command == "autocorr") code = autocorr(report, csv);
    else if (c_.command == "diffraction") code = diffraction(report, csv);
    else if (c_.command == "holes") code = holes(report);
    else if (c_.command == "ft") code = ft(report);
    report["parameters"] = params_;
    report["defaults"] = {{"lattice_zero_tol", defaults::kLatticeZeroTol},
                          {"generic_zero_tol", defaults::kGenericZeroTol},
                          {"residual_tol", defaults::kResidualTol},
                          {"weak_tiling_tol", defaults::kWeakTilingTol},
                          {"margin_fraction_of_diameter", defaults::kMargin},
                          {"truncation_radius", defaults::kTruncationRadius},
                          {"reporting_radius", defaults::kReportingRadius},
                          {"orthogonality_radius", defaults::kOrthogonalityRadius},
                          {"dual_vectors", defaults::kDualVectors},
                          {"snap", defaults::kSnap},
                          {"hole_samples", defaults::kHoleSamples}};
    return code;
  }

 private:
  void need_inputs(std::size_t n, const char* what) const {
    if (c_.inputs.size() != n) throw Error(ErrorCode::MalformedInput, std::string("field 'inputs': expected ") + what);
  }
  double param(const char* name, const std::optional<double>& v, double fallback) {
    const double x = v.value_or(fallback);
    if (!(x > 0)) throw Error(ErrorCode::MalformedInput, std::string("field '--") + name + "': must be positive");
    params_[name] = x;
    return x;
  }
  std::size_t grid(std::size_t fallback) {
    const std::size_t g = c_.grid.value_or(fallback);
    if (g < 2) throw Error(ErrorCode::MalformedInput, "field '--grid': resolution must be >= 2");
    params_["grid"] = g;
    return g;
  }
  void no_csv() const {
    if (c_.format != "json") throw Error(ErrorCode::MalformedInput, "field '--format': csv is only available for atom lists");
  }

  int analyze(json& report) {
    need_inputs(1, "one polytope file");
    no_csv();
    const auto p = io::parse_polytope(io::read_file(c_.inputs[0]));
    const auto vm = belts::vm_check(p);
    report.update(vm_json(p, vm));
    report["dim"] = p.dim();
    report["num_vertices"] = p.vertices().size();
    report["num_facets"] = p.num_facets();
    report["volume"] = io::to_json(p.volume());
    return vm.tiles() ? kHolds : kFails;
  }

  int tile_lattice(json& report) {
    need_inputs(1, "one polytope file");
    no_csv();
    const auto p = io::parse_polytope(io::read_file(c_.inputs[0]));
    const double zt = param("zero_tol", c_.zero_tol, defaults::kLatticeZeroTol);
    params_["dual_vectors"] = c_.dual_vectors;
    report["volume"] = io::to_json(p.volume());
    std::optional<Lattice> l;
    if (!c_.lattice.empty()) {
      const auto j = io::read_file(c_.lattice);
      l = io::parse_lattice(j.contains("basis") ? j["basis"] : j, "basis");
    } else {
      const auto vm = belts::vm_check(p);
      report["vm"] = vm_json(p, vm);
      if (!vm.tiles()) {
        report["verdict"] = "fails";
        return kFails;
      }
      try {
        l = belts::construct_tiling_lattice(p, vm, c_.dual_vectors, zt);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ConstructionFailed) throw;
        report["verdict"] = "construction_failed";
        report["diagnostic"] = e.what();
        return kFails;
      }
    }
    const auto check = lattice_tiling_check(Region(p), *l, c_.dual_vectors, zt);
    report["lattice"] = io::to_json(*l);
    report["check"] = lattice_check_json(check);
    report["verdict"] = check.pass ? "tiles" : "fails";
    return check.pass ? kHolds : kFails;
  }

  int spectrum_check(json& report) {
    need_inputs(2, "a region file and a point-set file");
    no_csv();
    const Region r = io::parse_region(io::read_file(c_.inputs[0]));
    const PointSetSpec s = io::parse_point_set(io::read_file(c_.inputs[1]));
    if (s.dim() != r.dim()) throw Error(ErrorCode::MalformedInput, "field 'point set': dimension differs from region");
    const double zt = param("zero_tol", c_.zero_tol, defaults::kLatticeZeroTol);
    const double tol = param("tol", c_.tol, defaults::kResidualTol);
    const double rad = param("radius", c_.radius, defaults::kOrthogonalityRadius);
    // The number of terms grows like R^d, so the default shrinks with dimension.
    const double trunc = param("truncation", c_.truncation,
                               r.dim() == 1 ? defaults::kTruncationRadius : r.dim() == 2 ? 50.0 : 12.0);
    const std::size_t res = grid(r.dim() == 1 ? 101 : 11);
    const auto orth = orthogonality_check(r, s, rad, zt);
    const auto [lo, hi] = r.bounds();
    const GridSpec g{lo, hi, res, defaults::kMargin};
    const auto comp = completeness_residual(r, s, g, trunc);
    report["orthogonality"] = {{"pass", orth.pass},
                               {"radius", orth.radius},
                               {"differences_checked", orth.differences_checked},
                               {"violations", orth.violations}};
    report["completeness"] = {{"residual", comp.residual},
                              {"worst_point", comp.worst_point},
                              {"truncation_radius", comp.truncation_radius},
                              {"min_terms", comp.min_terms},
                              {"tail_estimate", comp.tail_estimate},
                              {"grid_points", comp.grid_points},
                              {"warnings", comp.warnings}};
    const bool ok = orth.pass && comp.residual <= tol;
    report["verdict"] = ok ? "spectrum" : "fails";
    return ok ? kHolds : kFails;
  }

  int weak_tile(json& report) {
    need_inputs(2, "a region file and a measure file");
    no_csv();
    const Region r = io::parse_region(io::read_file(c_.inputs[0]));
    const MeasureSpec mu = io::parse_measure(io::read_file(c_.inputs[1]), r.dim());
    const double diam = diameter(r);
    const double tol = param("tol", c_.tol, defaults::kWeakTilingTol);
    const double w = param("window", c_.window, 2 * r.radius() + diam);
    const double margin = param("margin", c_.margin, defaults::kMargin * diam);
    const std::size_t res = grid(r.dim() <= 2 ? 50 : 16);
    const auto rep = weak_tiling_verify(r, mu, GridSpec::cube(r.dim(), w, res, margin));
    report["max_residual_inside"] = rep.max_residual_inside;
    report["max_residual_outside"] = rep.max_residual_outside;
    report["worst_inside"] = rep.worst_inside;
    report["worst_outside"] = rep.worst_outside;
    report["points_checked"] = rep.points_checked;
    report["points_skipped"] = rep.points_skipped;
    report["support_violations"] = rep.support_violations;
    const bool ok = rep.pass(tol);
    report["verdict"] = ok ? "weak_tiling" : "fails";
    return ok ? kHolds : kFails;
  }

  int autocorr(json& report, std::string& csv) {
    need_inputs(1, "one point-set file");
    const PointSetSpec s = io::parse_point_set(io::read_file(c_.inputs[0]));
    const double w = param("window", c_.window, 8);
    const double rho = param("radius", c_.radius, defaults::kReportingRadius);
    const auto shape = parse_shape(c_.shape);
    params_["shape"] = c_.shape;
    const auto a = autocorrelation_window(s, w, shape, rho);
    report["window_points"] = a.window_points;
    report["atoms"] = io::atoms_to_json(a.atoms);
    int code = kHolds;
    if (!c_.region.empty()) {
      const Region r = io::parse_region(io::read_file(c_.region));
      if (r.dim() != s.dim()) throw Error(ErrorCode::MalformedInput, "field '--region': dimension differs from point set");
      const double zt = param("zero_tol", c_.zero_tol, defaults::kLatticeZeroTol);
      const double tol = param("tol", c_.tol, 1e-9);
      const auto rep = autocorr_property_check(a.atoms, r, zt, s.exclude().empty() ? s.period_lattice() : nullptr);
      json props{{"positive_weights", rep.positive_weights},
                 {"atoms_checked", rep.atoms_checked},
                 {"ft_nonzero_atoms", rep.ft_nonzero_atoms},
                 {"origin_weight", rep.origin_weight},
                 {"min_nonzero_norm", rep.min_nonzero_norm},
                 {"unit_ball_mass_bound", rep.unit_ball_mass_bound},
                 {"diffraction_origin_weight",
                  rep.diffraction_origin_weight ? json(*rep.diffraction_origin_weight) : json(nullptr)},
                 {"diffraction_atoms_in_delta", rep.diffraction_atoms_in_delta},
                 {"pass", rep.pass(r.measure(), tol)}};
      report["properties"] = props;
      code = rep.pass(r.measure(), tol) ? kHolds : kFails;
    }
    if (c_.format == "csv") csv = io::atoms_to_csv(a.atoms);
    return code;
  }

  int diffraction(json& report, std::string& csv) {
    need_inputs(1, "one measure file");
    const json j = io::read_file(c_.inputs[0]);
    const auto& comps = io::detail::require(j, "components", "");
    if (!comps.is_array() || comps.size() != 1)
      throw Error(ErrorCode::MalformedInput, "field 'components': expected exactly one periodic component");
    const std::size_t dim = j.contains("dim") ? j["dim"].get<std::size_t>() : [&] {
      const auto& c = comps[0];
      return c.contains("offsets") ? c["offsets"][0].size() : c.at("points")[0].size();
    }();
    const MeasureSpec mu = io::parse_measure(j, dim);
    LatticeAtoms periodic;
    if (auto la = std::get_if<LatticeAtoms>(&mu.components()[0])) {
      periodic = *la;
    } else if (auto at = std::get_if<Atoms>(&mu.components()[0])) {
      if (!j.contains("period")) throw Error(ErrorCode::MalformedInput, "field 'period': atoms need a period lattice");
      periodic = fold_periodic(*at, io::parse_lattice(j["period"], "period"), 1e-9);
    } else {
      throw Error(ErrorCode::NotPeriodic, "only atomic periodic measures have a computable diffraction");
    }
    const double rho = param("radius", c_.radius, defaults::kReportingRadius);
    const auto hat = diffraction_periodic(periodic);
    const Atoms atoms = expand(hat, rho);
    json offsets = json::array();
    for (const auto& o : hat.offsets) offsets.push_back(io::to_json(o));
    report["lattice"] = io::to_json(hat.lattice);
    report["offsets"] = offsets;
    report["weights"] = hat.weights;
    report["atoms"] = io::atoms_to_json(atoms);
    if (c_.format == "csv") csv = io::atoms_to_csv(atoms);
    return kHolds;
  }

  int holes(json& report) {
    need_inputs(1, "one box-union region file");
    no_csv();
    const Region r = io::parse_region(io::read_file(c_.inputs[0]));
    if (r.is_polytope()) throw Error(ErrorCode::MalformedInput, "field 'boxes': holes needs a box union");
    params_["samples"] = defaults::kHoleSamples;
    const auto cert = hole_detector(r.box_union());
    if (!cert) {
      report["certificate"] = nullptr;
      report["verdict"] = "no_certificate";
      return kFails;
    }
    json boxes = json::array();
    for (const auto& b : cert->witness.boxes()) boxes.push_back({{"lo", io::to_json(b.lo)}, {"hi", io::to_json(b.hi)}});
    report["certificate"] = {{"witness", {{"boxes", boxes}}},
                             {"witness_measure", io::to_json(cert->witness_measure)},
                             {"overlap_with_region", io::to_json(cert->overlap_with_region)},
                             {"components", cert->components},
                             {"samples", cert->samples},
                             {"samples_meeting_witness", cert->samples_meeting_witness}};
    report["verdict"] = "not_spectral";
    return kHolds;
  }

  int ft(json& report) {
    need_inputs(1, "one region file");
    no_csv();
    const Region r = io::parse_region(io::read_file(c_.inputs[0]));
    if (c_.at.empty()) throw Error(ErrorCode::MalformedInput, "field '--at': frequency required");
    const DVec t = parse_point(c_.at, r.dim(), "--at");
    const double zt = param("zero_tol", c_.zero_tol, defaults::kLatticeZeroTol);
    const auto v = ft_indicator(r, t);
    report["t"] = t;
    report["value"] = {v.value.real(), v.value.imag()};
    report["abs"] = std::abs(v.value);
    report["abs_error_bound"] = v.abs_error_bound;
    report["is_zero"] = is_ft_zero(r, t, zt);
    report["measure"] = io::to_json(r.measure());
    return kHolds;
  }

  const RunConfig& c_;
  json params_;
};

}  // namespace detail

/// Runs one command; errors become exit code 2 with a one-line diagnostic.
inline int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  json report;
  std::string csv;
  int code = kHolds;
  try {
    code = detail::Runner(config).run(report, csv);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "error: MalformedInput: " << e.what() << "\n";
    return kInputError;
  }
  const std::string text = csv.empty() ? report.dump(2) + "\n" : csv;
  if (config.out.empty()) {
    out << text;
  } else {
    std::ofstream f(config.out);
    if (!f) {
      err << "error: MalformedInput: field '--out': cannot write '" << config.out << "'\n";
      return kInputError;
    }
    f << text;
  }
  return code;
}

/// Parses argv and dispatches.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Spectral sets, translational tilings and weak tilings of convex polytopes and box unions."};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--tol", c.tol, "Acceptance tolerance for residuals");
  app.add_option("--zero-tol", c.zero_tol, "Tolerance for Fourier zeros");
  app.add_option("--grid", c.grid, "Grid resolution per axis");
  app.add_option("--window", c.window, "Window half-width");
  app.add_option("--margin", c.margin, "Distance kept from discontinuities");
  app.add_option("--truncation", c.truncation, "Truncation radius for completeness sums");
  app.add_option("--radius", c.radius, "Reporting or orthogonality radius");
  app.add_option("--shape", c.shape, "Averaging window shape")->check(CLI::IsMember({"cube", "ball"}));
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out, "Output path (default stdout)");
  app.add_option("--dual-vectors", c.dual_vectors, "Dual lattice vectors checked for lattice tilings");

  const std::vector<std::pair<const char*, const char*>> commands{
      {"analyze", "Venkov-McMullen conditions and belts of a polytope"},
      {"tile-lattice", "Construct and verify a tiling lattice"},
      {"spectrum-check", "Orthogonality and completeness of a candidate spectrum"},
      {"weak-tile-verify", "Grid check of 1_R * mu = 1 on the complement of R"},
      {"autocorr", "Autocorrelation of a point set over a finite window"},
      {"diffraction", "Fourier transform of a periodic atomic measure"},
      {"holes", "Non-spectrality certificate from a hole in a box union"},
      {"ft", "Fourier transform of the indicator of a region"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("inputs", c.inputs, "Input JSON files")->required();
    if (std::string(name) == "autocorr") sub->add_option("--region", c.region, "Region for the property check");
    if (std::string(name) == "tile-lattice") sub->add_option("--lattice", c.lattice, "Lattice to check instead of constructing one");
    if (std::string(name) == "ft") sub->add_option("--at", c.at, "Frequency, comma separated")->required();
    sub->callback([&c, name = std::string(name)] { c.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }
  return dispatch(c, out, err);
}

}  // namespace spectile::cli
