#include "eqindex/index.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace eqindex {

namespace {

std::optional<std::pair<int, int>> parse_window(const Metadata& meta) {
  auto it = meta.find("window");
  if (it == meta.end()) return std::nullopt;
  const auto colon = it->second.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("malformed window '" + it->second + "'");
  return std::make_pair(std::stoi(it->second.substr(0, colon)), std::stoi(it->second.substr(colon + 1)));
}

std::string describe(const LabelResult& r) {
  std::ostringstream os;
  os << "ker " << r.kernel << ", coker " << r.cokernel;
  return os.str();
}

bool same_multiplicities(const EquivariantResult& a, const EquivariantResult& b) {
  if (a.labels.size() != b.labels.size()) return false;
  for (std::size_t k = 0; k < a.labels.size(); ++k) {
    const auto& x = a.labels[k];
    const auto& y = b.labels[k];
    if (x.label != y.label || x.kernel != y.kernel || x.cokernel != y.cokernel) return false;
  }
  return true;
}

bool same_index(const EquivariantResult& a, const EquivariantResult& b) {
  if (a.labels.size() != b.labels.size()) return false;
  for (std::size_t k = 0; k < a.labels.size(); ++k)
    if (a.labels[k].label != b.labels[k].label || a.labels[k].index() != b.labels[k].index()) return false;
  return true;
}

double min_gap(const EquivariantResult& r) {
  double g = std::numeric_limits<double>::infinity();
  for (const auto& l : r.labels) g = std::min({g, l.kernel_gap, l.cokernel_gap});
  return g;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

FredholmResult fredholm_analysis(const MatrixXcd& a, const RankPolicy& policy) {
  FredholmResult r;
  r.kernel = numeric_kernel<double>(a, policy);
  r.cokernel = numeric_kernel<double>(a.adjoint(), policy);
  r.kernel_dim = r.kernel.kernel_dim;
  r.cokernel_dim = r.cokernel.kernel_dim;
  r.index = r.kernel_dim - r.cokernel_dim;
  r.confident = r.kernel.confident && r.cokernel.confident;
  return r;
}

int fredholm_index(const IsotypicBlockOperator& model, const RankPolicy& policy) {
  if (model.group().kind() != GroupKind::trivial && model.is_equivariant()) {
    // Per-block evaluation keeps large labeled models out of dense form.
    const EquivariantResult r = equivariant_index(model, policy);
    return static_cast<int>(r.total_index());
  }
  const FredholmResult r = fredholm_analysis(model.dense(), policy);
  if (!r.confident) {
    std::ostringstream os;
    os << "indeterminate rank decision (gap ratios " << r.kernel.gap_ratio << ", " << r.cokernel.gap_ratio << ")";
    throw IndeterminateError(os.str());
  }
  return r.index;
}

CharacterElement EquivariantResult::character() const {
  CharacterElement c(group);
  for (const auto& l : labels) c.add(l.label, l.index());
  return c;
}

WindowedCharacter EquivariantResult::windowed() const {
  if (!window) throw std::logic_error("result has no window");
  WindowedCharacter w(group, window->first, window->second);
  for (const auto& l : labels)
    if (w.contains(l.label)) w.set(l.label, l.index());
  return w;
}

long long EquivariantResult::total_index() const {
  long long sum = 0;
  for (const auto& l : labels) sum += l.index();
  return sum;
}

EquivariantResult equivariant_analysis(const IsotypicBlockOperator& model, const RankPolicy& policy) {
  if (!model.is_equivariant())
    throw std::invalid_argument("model maps an isotypic component to several labels");
  EquivariantResult out;
  out.group = model.group();
  out.window = parse_window(model.metadata());

  std::set<IrrepLabel> labels;
  for (const auto& ld : model.domain_labels()) labels.insert(ld.label);
  for (const auto& ld : model.codomain_labels()) labels.insert(ld.label);

  std::map<IrrepLabel, LabelResult> results;
  for (IrrepLabel l : labels) results[l].label = l;

  for (const auto& ld : model.domain_labels()) {
    LabelResult& r = results[ld.label];
    const auto target = model.target_of(ld.label);
    if (!target) {
      r.kernel = ld.dim;
      continue;
    }
    const RankDecision d = numeric_kernel<double>(model.block(ld.label, *target), policy);
    r.kernel = d.kernel_dim;
    r.kernel_gap = d.gap_ratio;
    r.confident = r.confident && d.confident;
  }

  for (const auto& ld : model.codomain_labels()) {
    LabelResult& r = results[ld.label];
    std::vector<const MatrixXcd*> incoming;
    for (const auto& [key, block] : model.blocks())
      if (key.second == ld.label) incoming.push_back(&block);
    if (incoming.empty()) {
      r.cokernel = ld.dim;
      continue;
    }
    Eigen::Index cols = 0;
    for (const auto* b : incoming) cols += b->cols();
    MatrixXcd stacked(ld.dim, cols);
    Eigen::Index c = 0;
    for (const auto* b : incoming) {
      stacked.middleCols(c, b->cols()) = *b;
      c += b->cols();
    }
    const RankDecision d = numeric_kernel<double>(MatrixXcd(stacked.adjoint()), policy);
    r.cokernel = d.kernel_dim;
    r.cokernel_gap = d.gap_ratio;
    r.confident = r.confident && d.confident;
  }

  for (auto& [label, r] : results) {
    out.labels.push_back(r);
    out.confident = out.confident && r.confident;
  }
  return out;
}

EquivariantResult equivariant_index(const IsotypicBlockOperator& model, const RankPolicy& policy) {
  EquivariantResult r = equivariant_analysis(model, policy);
  if (!r.confident) {
    std::ostringstream os;
    os << "indeterminate rank decision at";
    for (const auto& l : r.labels)
      if (!l.confident) os << ' ' << model.group().label_name(l.label);
    throw IndeterminateError(os.str());
  }
  return r;
}

EquivariantResult deformed_plane_index(const PlaneParams& params, int lo, int hi, const RankPolicy& policy) {
  return equivariant_index(build_plane_window_model(lo, hi, params), policy);
}

bool IndexReport::passed() const {
  if (!confident) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

IndexReport make_report(const std::string& title, const Metadata& metadata, const EquivariantResult& result,
                        const RankPolicy& policy) {
  IndexReport rep;
  rep.title = title;
  rep.metadata = metadata;
  rep.policy = policy;
  rep.group = result.group.name();
  rep.window = result.window;
  rep.confident = result.confident;
  for (const auto& l : result.labels) {
    rep.labels.push_back({l.label.value, result.group.label_name(l.label), l.kernel, l.cokernel, l.index(),
                          l.kernel_gap, l.cokernel_gap, l.confident});
  }
  if (!result.window) rep.index = result.total_index();
  rep.diagnostics["min_gap_ratio"] = min_gap(result);
  return rep;
}

IndexReport stability_suite(const IsotypicBlockOperator& model, const StabilityOptions& options,
                            const RankPolicy& policy) {
  if (options.trials < 1) throw std::invalid_argument("stability suite needs at least one trial");
  const EquivariantResult base = equivariant_analysis(model, policy);
  IndexReport rep = make_report("stability", model.metadata(), base, policy);
  rep.seed = options.seed;
  const bool equivariant = model.group().kind() != GroupKind::trivial;

  int unchanged = 0;
  int indeterminate = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int t = 0; t < options.trials; ++t) {
    const int rank = options.max_rank > 0 ? 1 + t % options.max_rank : 0;
    const auto perturbed =
        random_finite_rank_perturbation(model, rank, options.relative_norm, options.seed + t, equivariant);
    const EquivariantResult r = equivariant_analysis(perturbed, policy);
    worst_gap = std::min(worst_gap, min_gap(r));
    if (!r.confident)
      ++indeterminate;
    else if (same_index(r, base))
      ++unchanged;
  }
  rep.diagnostics["trials"] = options.trials;
  rep.diagnostics["max_rank"] = options.max_rank;
  rep.diagnostics["relative_norm"] = options.relative_norm;
  rep.diagnostics["min_perturbed_gap_ratio"] = worst_gap;
  rep.diagnostics["indeterminate_trials"] = indeterminate;
  rep.checks.push_back({"baseline confident", base.confident, ""});
  rep.checks.push_back({"index unchanged", unchanged == options.trials,
                        std::to_string(unchanged) + "/" + std::to_string(options.trials) + " trials"});
  return rep;
}

IndexReport homotopy_suite(const std::string& name, const ModelPath& path, int steps, const RankPolicy& policy) {
  if (steps < 1) throw std::invalid_argument("homotopy needs at least one step");
  std::vector<EquivariantResult> results;
  IndexReport rep;
  bool constant = true;
  bool confident = true;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= steps; ++k) {
    const double s = static_cast<double>(k) / steps;
    const auto model = path(s);
    EquivariantResult r = equivariant_analysis(model, policy);
    worst_gap = std::min(worst_gap, min_gap(r));
    confident = confident && r.confident;
    if (k == 0) {
      rep = make_report("homotopy " + name, model.metadata(), r, policy);
    } else if (!same_index(r, results.front())) {
      constant = false;
    }
    std::ostringstream os;
    os << "index " << r.total_index() << ", gap " << format_number(min_gap(r));
    rep.checks.push_back({"s=" + format_number(s), r.confident, os.str()});
    results.push_back(std::move(r));
  }
  rep.confident = confident;
  rep.diagnostics["steps"] = steps;
  rep.diagnostics["min_gap_ratio"] = worst_gap;
  rep.checks.push_back({"index constant", constant && confident, ""});
  return rep;
}

CompositionVerdict composition_check(const IsotypicBlockOperator& a, const IsotypicBlockOperator& b,
                                     const RankPolicy& policy) {
  CompositionVerdict v;
  v.index_a = fredholm_index(a, policy);
  v.index_b = fredholm_index(b, policy);
  v.index_ba = fredholm_index(compose(b, a), policy);
  v.passed = v.index_ba == v.index_a + v.index_b;
  return v;
}

AdjointVerdict adjoint_check(const IsotypicBlockOperator& a, const RankPolicy& policy) {
  AdjointVerdict v;
  v.index = fredholm_index(a, policy);
  v.adjoint_index = fredholm_index(a.adjoint(), policy);
  v.passed = v.adjoint_index == -v.index;
  return v;
}

IndexReport gluing_check(const GlueParams& params, int lo, int hi, const RankPolicy& policy) {
  if (lo > hi) throw std::invalid_argument("empty weight window");
  const GluedPieces pieces = glued_pieces(params);
  const RadialPiece whole = plane_piece(params.plane);

  IndexReport rep;
  rep.title = "gluing";
  rep.policy = policy;
  rep.group = GroupDesc::circle().name();
  rep.window = std::make_pair(lo, hi);
  rep.metadata["kind"] = "plane_glued";
  rep.metadata["r0"] = format_number(params.split_radius);
  rep.metadata["warp"] = to_string(params.warp);
  rep.metadata["n_r"] = std::to_string(params.plane.radial_points);
  rep.metadata["R"] = format_number(params.plane.radius);
  rep.metadata["f"] = to_string(params.plane.rescaling);
  rep.metadata["inner_cells"] = std::to_string(pieces.inner.cells);
  rep.metadata["outer_cells"] = std::to_string(pieces.outer.cells);

  double worst_gap = std::numeric_limits<double>::infinity();
  for (int m = lo; m <= hi; ++m) {
    const FredholmResult u = fredholm_analysis(fitted_radial_operator(whole, m), policy);
    const FredholmResult in = fredholm_analysis(fitted_radial_operator(pieces.inner, m), policy);
    const FredholmResult out = fredholm_analysis(fitted_radial_operator(pieces.outer, m), policy);
    const bool confident = u.confident && in.confident && out.confident;
    rep.confident = rep.confident && confident;
    for (const auto* r : {&u, &in, &out})
      worst_gap = std::min({worst_gap, r->kernel.gap_ratio, r->cokernel.gap_ratio});
    rep.labels.push_back({m, GroupDesc::circle().label_name(IrrepLabel{m}), u.kernel_dim, u.cokernel_dim, u.index,
                          u.kernel.gap_ratio, u.cokernel.gap_ratio, u.confident});
    std::ostringstream os;
    os << "inner " << in.index << " + outer " << out.index << " = " << in.index + out.index << ", unsplit "
       << u.index;
    rep.checks.push_back({"m=" + std::to_string(m), confident && in.index + out.index == u.index, os.str()});
  }
  rep.diagnostics["min_gap_ratio"] = worst_gap;
  return rep;
}

ConvergenceResult convergence_study(const ResolutionFamily& family, const std::vector<int>& resolutions,
                                    const RankPolicy& policy) {
  if (resolutions.size() < 3) throw std::invalid_argument("convergence study needs at least three resolutions");
  ConvergenceResult out;
  out.resolutions = resolutions;
  for (int n : resolutions) out.results.push_back(equivariant_analysis(family(n), policy));
  const auto& a = out.results[out.results.size() - 2];
  const auto& b = out.results.back();
  out.plateau = a.confident && b.confident && same_multiplicities(a, b);
  if (out.plateau) out.accepted_resolution = resolutions.back();
  return out;
}

IndexReport ConvergenceResult::report(const std::string& title, const RankPolicy& policy) const {
  IndexReport rep = make_report(title, {}, results.back(), policy);
  for (std::size_t k = 0; k < resolutions.size(); ++k) {
    const auto& r = results[k];
    std::ostringstream os;
    for (const auto& l : r.labels) os << (os.tellp() > 0 ? "; " : "") << describe(l);
    rep.checks.push_back({"resolution " + std::to_string(resolutions[k]), r.confident, os.str()});
  }
  rep.checks.push_back({"plateau", plateau, plateau ? "last two resolutions agree" : "no plateau"});
  if (accepted_resolution) rep.diagnostics["accepted_resolution"] = *accepted_resolution;
  rep.confident = plateau;
  return rep;
}

}  // namespace eqindex
