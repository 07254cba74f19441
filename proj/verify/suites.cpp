#include "suites.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "eqindex/clifford.hpp"
#include "eqindex/symbols.hpp"
#include "oracle.hpp"

namespace eqindex {

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

PlaneParams plane_params(const SuiteOptions& o) {
  PlaneParams p;
  if (o.resolution) p.radial_points = *o.resolution;
  return p;
}

std::vector<IndexReport> stability_reports(const SuiteOptions& o) {
  StabilityOptions s;
  s.seed = o.seed;
  std::vector<IndexReport> out;
  out.push_back(stability_suite(build_shift_model(20), s, o.policy));
  out.push_back(stability_suite(build_toeplitz_model({{1, 1.0}}, 64), s, o.policy));
  out.push_back(stability_suite(build_circle_model(sine_potential(), 32), s, o.policy));
  out.push_back(stability_suite(build_shift_model(20, true), s, o.policy));
  out.push_back(stability_suite(build_product_model(build_shift_model(20), 4), s, o.policy));
  return out;
}

std::vector<IndexReport> homotopy_reports(const SuiteOptions& o) {
  std::vector<IndexReport> out;
  out.push_back(homotopy_suite(
      "s sin t", [](double s) { return build_circle_model(sine_potential(s), 32); }, 10, o.policy));
  out.push_back(homotopy_suite(
      "2 + s z", [](double s) { return build_toeplitz_model({{0, 2.0}, {1, s}}, 64); }, 10, o.policy));
  out.push_back(homotopy_suite(
      "constant shift", [](double) { return build_shift_model(20); }, 4, o.policy));
  return out;
}

std::vector<IndexReport> gluing_reports(const SuiteOptions& o) {
  const auto [lo, hi] = o.window.value_or(std::make_pair(-4, 4));
  std::vector<IndexReport> out;
  for (Warp w : {Warp::reciprocal, Warp::smooth}) {
    GlueParams g;
    g.plane = plane_params(o);
    g.warp = w;
    out.push_back(gluing_check(g, lo, hi, o.policy));
  }
  return out;
}

std::vector<IndexReport> convergence_reports(const SuiteOptions& o) {
  const auto [lo, hi] = o.window.value_or(std::make_pair(0, 0));
  const int top = o.resolution.value_or(400);
  std::vector<IndexReport> out;
  const PlaneParams base = plane_params(o);
  auto plane = convergence_study(
      [&](int n) {
        PlaneParams p = base;
        p.radial_points = n;
        return build_plane_window_model(lo, hi, p);
      },
      {top / 4, top / 2, top}, o.policy);
  out.push_back(plane.report("convergence plane n_r", o.policy));
  auto circle = convergence_study([](int k) { return build_circle_model(sine_potential(), k); }, {16, 32, 64},
                                  o.policy);
  out.push_back(circle.report("convergence circle K", o.policy));
  auto shift = convergence_study([](int n) { return build_shift_model(n); }, {8, 16, 32}, o.policy);
  out.push_back(shift.report("convergence shift N", o.policy));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"acceptance", "stability", "homotopy", "gluing", "convergence",
                                              "symbols"};
  return names;
}

IndexReport symbols_report(std::uint64_t seed) {
  IndexReport rep;
  rep.title = "symbols";
  rep.seed = seed;
  auto check = [&rep](const std::string& name, bool ok, const std::string& detail) {
    rep.checks.push_back({name, ok, detail});
  };

  const auto points3 = box_samples(3, 8, 2.0, seed);
  const auto dirs3 = sphere_samples(3, 64, seed);

  {
    const auto lap = laplacian_coefficients(3);
    double dev = 0.0;
    for (const auto& x : points3)
      for (const auto& xi : dirs3) dev = std::max(dev, std::abs(leading_symbol(lap, x, xi)(0, 0) - xi.squaredNorm()));
    check("Laplacian leading symbol |xi|^2", dev <= 1e-12, "max deviation " + sci(dev));
  }
  {
    const auto lap = laplacian_coefficients(3, 1.0);
    const auto lim = symbol_limit_check(lap, points3[1], dirs3[6], {10.0, 100.0, 1000.0});
    bool decreasing = lim.deviations[1] < lim.deviations[0] && lim.deviations[2] < lim.deviations[1];
    check("oscillatory limit tends to the leading symbol", decreasing && lim.deviations[2] < 1e-2,
          "deviations " + sci(lim.deviations[0]) + ", " + sci(lim.deviations[1]) + ", " + sci(lim.deviations[2]));
  }
  {
    const auto pauli = make_pauli_action();
    const auto d = dirac_coefficients(pauli);
    double dev = 0.0;
    for (const auto& x : points3)
      for (const auto& xi : dirs3)
        dev = std::max(dev, (leading_symbol(d, x, xi) - oracle::pauli_contraction(xi)).norm());
    check("Dirac leading symbol i c(xi)", dev <= 1e-12, "max deviation " + sci(dev));
  }
  {
    double worst = 0.0;
    bool graded_ok = true;
    for (const auto& action : {make_pauli_action(), make_plane_action(), make_exterior_action(3)}) {
      const auto diag = verify_clifford(action);
      worst = std::max(worst, diag.max_relation_deviation);
      graded_ok = graded_ok && diag.passed;
    }
    check("Clifford relations c(v)^2 = -|v|^2", graded_ok, "max deviation " + sci(worst));
  }
  const auto points2 = box_samples(2, 16, 3.0, seed);
  {
    const TamingField field = rotation_taming_field();
    const auto r = ellipticity_check(dirac_coefficients(make_plane_action(), &field), points2, 64, seed);
    check("plane Dirac elliptic", r.invertible, "min singular value " + sci(r.min_singular_value));
  }
  {
    const auto op = torus_dx_coefficients();
    const auto full = ellipticity_check(op, points2, 64, seed);
    const auto trans = transversal_ellipticity_check(op, torus_y_orbits(), points2, 64, seed);
    check("-i d/dx on the torus not elliptic", !full.invertible, "min singular value " + sci(full.min_singular_value));
    check("-i d/dx on the torus transversally elliptic", trans.invertible,
          "min singular value " + sci(trans.min_singular_value));
  }
  {
    const TamingField field = rotation_taming_field();
    const double defect = taming_equivariance_defect(field, points2);
    check("rotation field equivariant", defect <= 1e-12, "defect " + sci(defect));
    const auto r = deformed_symbol_check(make_plane_action(), field, rotation_orbits(), points2, 32, seed);
    bool only_origin = true;
    for (const auto& x : r.degenerate_points) only_origin = only_origin && x.norm() <= 1e-12;
    check("c(xi + v) invertible off the origin fiber", r.passed && only_origin && !r.degenerate_points.empty(),
          "min relative singular value " + sci(r.min_singular_value_off_locus) + ", " +
              std::to_string(r.degenerate_points.size()) + " degenerate samples at the origin");
  }
  return rep;
}

std::vector<IndexReport> run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "acceptance") return acceptance_reports(options);
  if (name == "stability") return stability_reports(options);
  if (name == "homotopy") return homotopy_reports(options);
  if (name == "gluing") return gluing_reports(options);
  if (name == "convergence") return convergence_reports(options);
  if (name == "symbols") return {symbols_report(options.seed)};
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace eqindex
