#include <functional>
#include <sstream>

#include "oracle.hpp"
#include "suites.hpp"

namespace eqindex {

namespace {

using CriterionBody = std::function<IndexReport()>;

IndexReport run_criterion(int number, const std::string& summary, const CriterionBody& body) {
  IndexReport rep;
  try {
    rep = body();
  } catch (const std::exception& e) {
    rep = IndexReport{};
    rep.checks.push_back({"error", false, e.what()});
  }
  rep.title = "criterion " + std::to_string(number) + ": " + summary;
  return rep;
}

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  return os.str();
}

IndexReport shift_index(const RankPolicy& policy) {
  const auto model = build_shift_model(20);
  const FredholmResult fr = fredholm_analysis(model.dense(), policy);
  IndexReport rep = make_report("", model.metadata(), equivariant_analysis(model, policy), policy);
  rep.checks.push_back({"index 2", fredholm_index(model, policy) == 2 && fr.index == 2,
                        "ker " + std::to_string(fr.kernel_dim) + ", coker " + std::to_string(fr.cokernel_dim)});
  std::ostringstream os;
  os << fr.kernel.gap_ratio;
  rep.checks.push_back({"kernel gap ratio >= 1e10", fr.kernel.gap_ratio >= 1e10, os.str()});
  return rep;
}

IndexReport z2_shift(const RankPolicy& policy) {
  const auto model = build_shift_model(20, true);
  const EquivariantResult r = equivariant_index(model, policy);
  IndexReport rep = make_report("", model.metadata(), r, policy);
  const CharacterElement expected(GroupDesc::cyclic(2), {{0, 1}, {1, 1}});
  bool trivial_coker = true;
  for (const auto& l : r.labels) trivial_coker = trivial_coker && l.cokernel == 0;
  rep.checks.push_back({"Ind = V0 + V1", r.character() == expected, ""});
  rep.checks.push_back({"trivial cokernel", trivial_coker, ""});
  return rep;
}

IndexReport toeplitz_winding(const RankPolicy& policy) {
  IndexReport rep;
  rep.policy = policy;
  for (int k = 1; k <= 3; ++k) {
    for (int sign : {-1, 1}) {
      const FourierCoefficients symbol{{sign * k, 1.0}};
      const int expected = -sign * k;
      const int computed = fredholm_index(build_toeplitz_model(symbol, 64), policy);
      const int reference = oracle::toeplitz_index_by_localization(symbol, 64);
      const std::string name = (sign < 0 ? "conj(z)^" : "z^") + std::to_string(k);
      rep.checks.push_back({name, computed == expected && reference == expected,
                            "index " + std::to_string(computed) + ", oracle " + std::to_string(reference)});
    }
  }
  return rep;
}

IndexReport circle_operator(const RankPolicy& policy) {
  const auto model = build_circle_model(sine_potential(), 32);
  const MatrixXcd a = model.dense();
  const FredholmResult fr = fredholm_analysis(a, policy);
  IndexReport rep = make_report("", model.metadata(), equivariant_analysis(model, policy), policy);
  rep.checks.push_back({"index 0, kernel 1", fr.confident && fr.index == 0 && fr.kernel_dim == 1,
                        "ker " + std::to_string(fr.kernel_dim) + ", coker " + std::to_string(fr.cokernel_dim)});
  const double residual = oracle::relative_residual(a, oracle::circle_kernel_coefficients(32));
  const auto dense = oracle::dense_nullities(a);
  std::ostringstream os;
  os << "residual of e^{i cos t} " << residual << ", eigensolve ker " << dense.kernel;
  rep.checks.push_back({"analytic kernel", residual < 1e-12 && dense.kernel == 1, os.str()});
  return rep;
}

IndexReport derham_circle(const RankPolicy& policy) {
  const auto model = build_derham_circle_model(32, false);
  const MatrixXcd d = graded_dirac_matrix(model);
  const RankDecision full = numeric_kernel<double>(d, policy);
  const int index = fredholm_index(model, policy);
  // One vertex and one edge.
  const int euler_characteristic = 1 - 1;
  IndexReport rep = make_report("", model.metadata(), equivariant_analysis(model, policy), policy);
  rep.checks.push_back({"dim Ker(d + d*) = 2", full.confident && full.kernel_dim == 2 &&
                                                   oracle::dense_nullities(d).kernel == 2,
                        "ker " + std::to_string(full.kernel_dim)});
  rep.checks.push_back({"Ind(D+) = Euler characteristic", index == euler_characteristic,
                        "index " + std::to_string(index)});
  return rep;
}

IndexReport product_model(const RankPolicy& policy) {
  const auto model = build_product_model(build_shift_model(20), 4);
  const EquivariantResult r = equivariant_index(model, policy);
  IndexReport rep = make_report("", model.metadata(), r, policy);
  const WindowedCharacter w = r.windowed();
  bool all_two = w.lo() == -4 && w.hi() == 4;
  for (int m = -4; m <= 4; ++m) all_two = all_two && w.multiplicity(IrrepLabel{m}) == 2;
  rep.checks.push_back({"multiplicity 2 at each of 9 weights", all_two && r.labels.size() == 9, ""});
  return rep;
}

EquivariantResult plane_result(Rescaling f, const RankPolicy& policy, IsotypicBlockOperator* keep = nullptr) {
  PlaneParams p;
  p.radial_points = 400;
  p.radius = 8.0;
  p.rescaling = f;
  auto model = build_plane_window_model(-8, 8, p);
  EquivariantResult r = equivariant_index(model, policy);
  if (keep) *keep = std::move(model);
  return r;
}

IndexReport plane_index(const RankPolicy& policy) {
  IsotypicBlockOperator model = trivial_model(MatrixXcd(), "");
  const EquivariantResult r = plane_result(Rescaling::one, policy, &model);
  IndexReport rep = make_report("", model.metadata(), r, policy);
  const int offset = model.label_offset().value_or(0);
  bool kernels = true;
  bool cokernels = true;
  for (const auto& l : r.labels) {
    kernels = kernels && l.kernel == 0;
    cokernels = cokernels && l.cokernel == (l.label.value >= offset ? 1 : 0);
  }
  rep.checks.push_back({"kernel multiplicities 0", kernels, ""});
  rep.checks.push_back({"cokernel 1 exactly for weights >= " + std::to_string(offset), cokernels, ""});

  bool oracle_ok = true;
  double worst_residual = 0.0;
  for (int m = -8; m <= 8; ++m) {
    const MatrixXcd& a = model.block(IrrepLabel{m}, IrrepLabel{m + offset});
    const auto dense = oracle::dense_nullities(a);
    const int expected = m + offset >= offset ? 1 : 0;
    oracle_ok = oracle_ok && dense.kernel == 0 && dense.cokernel == expected;
    if (m >= 0) {
      const double res = oracle::relative_residual(a.adjoint(), oracle::plane_cokernel_profile(m, 400, 8.0, false));
      worst_residual = std::max(worst_residual, res);
    }
  }
  std::ostringstream os;
  os << "closed-form cokernel residual " << worst_residual;
  rep.checks.push_back({"closed form and eigensolve agree", oracle_ok && worst_residual < 1e-12, os.str()});
  rep.checks.push_back({"finite multiplicity at every label", r.confident && r.labels.size() == 17, ""});
  return rep;
}

IndexReport f_independence(const RankPolicy& policy) {
  const EquivariantResult one = plane_result(Rescaling::one, policy);
  const EquivariantResult quad = plane_result(Rescaling::quad, policy);
  IndexReport rep = make_report("", {{"f", "one vs quad"}}, quad, policy);
  bool same = one.labels.size() == quad.labels.size();
  for (std::size_t k = 0; same && k < one.labels.size(); ++k)
    same = one.labels[k].kernel == quad.labels[k].kernel && one.labels[k].cokernel == quad.labels[k].cokernel;
  rep.checks.push_back({"identical windowed characters", same && one.windowed() == quad.windowed(), ""});
  return rep;
}

IndexReport compact_consistency(const RankPolicy& policy) {
  const auto plain = equivariant_index(build_derham_circle_model(32, false), policy);
  const auto deformed = equivariant_index(build_derham_circle_model(32, true), policy);
  IndexReport rep = make_report("", build_derham_circle_model(32, true).metadata(), deformed, policy);
  rep.checks.push_back({"Ind(D, v) = Ind(D)", plain.windowed() == deformed.windowed(),
                        "total " + std::to_string(plain.total_index()) + " vs " +
                            std::to_string(deformed.total_index())});
  return rep;
}

IndexReport stability(const SuiteOptions& o) {
  StabilityOptions s;
  s.seed = o.seed;
  IndexReport rep;
  rep.seed = o.seed;
  rep.policy = o.policy;
  const std::vector<std::pair<std::string, IsotypicBlockOperator>> models{
      {"shift", build_shift_model(20)},
      {"Toeplitz z", build_toeplitz_model({{1, 1.0}}, 64)},
      {"circle sin t", build_circle_model(sine_potential(), 32)}};
  for (const auto& [name, model] : models) {
    const IndexReport r = stability_suite(model, s, o.policy);
    std::ostringstream os;
    os << r.checks.back().detail << ", index " << (r.index ? std::to_string(*r.index) : "?");
    rep.checks.push_back({name, r.passed(), os.str()});
  }
  return rep;
}

IndexReport gluing(const SuiteOptions& o) {
  const std::vector<int> resolutions{100, 200, 400};
  const auto study = convergence_study(
      [](int n) {
        PlaneParams p;
        p.radial_points = n;
        return build_plane_window_model(-4, 4, p);
      },
      resolutions, o.policy);
  if (!study.accepted_resolution) {
    IndexReport rep = study.report("", o.policy);
    rep.checks.push_back({"converged resolution", false, "no plateau over n_r " + join(resolutions)});
    return rep;
  }
  GlueParams g;
  g.plane.radial_points = *study.accepted_resolution;
  IndexReport rep = gluing_check(g, -4, 4, o.policy);
  rep.metadata["resolution"] = std::to_string(*study.accepted_resolution);
  rep.checks.insert(rep.checks.begin(), CheckEntry{"converged resolution", true,
                                         "n_r = " + std::to_string(*study.accepted_resolution) + " (from " +
                                             join(resolutions) + ")"});
  return rep;
}

}  // namespace

std::vector<IndexReport> acceptance_reports(const SuiteOptions& o) {
  const RankPolicy& p = o.policy;
  std::vector<IndexReport> out;
  out.push_back(run_criterion(1, "shift operator index 2", [&] { return shift_index(p); }));
  out.push_back(run_criterion(2, "Z2 shift kernel V0 + V1", [&] { return z2_shift(p); }));
  out.push_back(run_criterion(3, "Toeplitz index = minus winding", [&] { return toeplitz_winding(p); }));
  out.push_back(run_criterion(4, "circle operator -i d/dt + sin t", [&] { return circle_operator(p); }));
  out.push_back(run_criterion(5, "de Rham-Dirac on the circle", [&] { return derham_circle(p); }));
  out.push_back(run_criterion(6, "product model multiplicities", [&] { return product_model(p); }));
  out.push_back(run_criterion(7, "deformed Dirac on the plane", [&] { return plane_index(p); }));
  out.push_back(run_criterion(8, "independence of f", [&] { return f_independence(p); }));
  out.push_back(run_criterion(9, "compact consistency", [&] { return compact_consistency(p); }));
  out.push_back(run_criterion(10, "stability under finite-rank perturbation", [&] { return stability(o); }));
  out.push_back(run_criterion(11, "gluing additivity", [&] { return gluing(o); }));
  out.push_back(run_criterion(12, "symbols and ellipticity", [&] { return symbols_report(o.seed); }));
  return out;
}

}  // namespace eqindex
