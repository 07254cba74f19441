#include "commands.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "config.hpp"
#include "eqindex/coeff_expr.hpp"
#include "eqindex/index.hpp"
#include "eqindex/report.hpp"
#include "eqindex/symbols.hpp"
#include "json.hpp"
#include "suites.hpp"

namespace eqindex::cli {

namespace {

constexpr Eigen::Index kMaxDumpEntries = 4'000'000;

RunConfig load(const Overrides& o) {
  RunConfig c = o.config ? load_config(*o.config) : RunConfig{};
  if (o.model) {
    try {
      c.model.kind = parse_model_kind(*o.model);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--model: ") + e.what());
    }
  }
  if (o.tol) c.policy.relative_factor = *o.tol;
  if (o.window) std::tie(c.model.window_lo, c.model.window_hi) = *o.window;
  if (o.resolution) set_resolution(c.model, *o.resolution);
  if (o.seed) {
    c.seed = *o.seed;
    c.model.seed = *o.seed;
    c.stability.seed = *o.seed;
  }
  if (o.format) c.format = *o.format;
  c.model.glue.plane = c.model.plane;
  validate(c);
  return c;
}

int exit_code_for(const std::vector<IndexReport>& reports) {
  bool indeterminate = false;
  bool failed = false;
  for (const auto& r : reports) {
    if (!r.confident) indeterminate = true;
    if (!r.passed()) failed = true;
  }
  if (indeterminate) return kExitIndeterminate;
  return failed ? kExitError : kExitOk;
}

std::string render(const std::string& format, const std::string& command, const std::vector<IndexReport>& reports,
                   bool passed) {
  return format == "machine" ? render_machine(command, reports, passed) : render_text(command, reports, passed);
}

IndexReport index_report(const RunConfig& c) {
  const ModelSpec& spec = c.model;
  if (spec.kind == ModelKind::plane_glued) {
    IndexReport rep = gluing_check(spec.glue, spec.window_lo, spec.window_hi, c.policy);
    rep.seed = c.seed;
    return rep;
  }
  const IsotypicBlockOperator model = build_model(spec);
  IndexReport rep = make_report("index", model.metadata(), equivariant_analysis(model, c.policy), c.policy);
  rep.seed = c.seed;
  return rep;
}

IndexReport convergence_report(const RunConfig& c) {
  const ModelSpec base = c.model;
  const auto study = convergence_study(
      [&base](int n) {
        ModelSpec spec = base;
        set_resolution(spec, n);
        spec.glue.plane = spec.plane;
        return build_model(spec);
      },
      c.resolutions, c.policy);
  IndexReport rep = study.report("convergence " + to_string(base.kind), c.policy);
  rep.seed = c.seed;
  return rep;
}

IndexReport operator_report(const OperatorSpec& op, std::uint64_t seed) {
  const DiffOpCoefficients coefficients = parse_scalar_operator(op.order, op.base_dim, op.terms);
  const auto points = box_samples(op.base_dim, 16, 2.0, seed);
  const EllipticityResult r = ellipticity_check(coefficients, points, 64, seed);
  IndexReport rep;
  rep.title = "operator symbol";
  rep.seed = seed;
  rep.metadata["order"] = std::to_string(op.order);
  rep.metadata["dim"] = std::to_string(op.base_dim);
  rep.metadata["elliptic"] = r.invertible ? "true" : "false";
  for (const auto& [key, expr] : op.terms) rep.metadata["a(" + key + ")"] = expr;
  rep.diagnostics["min_symbol_singular_value"] = r.min_singular_value;
  return rep;
}

std::string entry_text(cdouble z) {
  std::ostringstream os;
  os << std::setprecision(6);
  if (z.imag() == 0.0) {
    os << z.real();
  } else if (z.real() == 0.0) {
    os << z.imag() << 'i';
  } else {
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << 'i';
  }
  return os.str();
}

nlohmann::ordered_json labels_json(const GroupDesc& g, const std::vector<LabelDim>& labels) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& [label, dim] : labels)
    out.push_back({{"label", label.value}, {"name", g.label_name(label)}, {"dim", dim}});
  return out;
}

struct NamedModel {
  std::string name;
  IsotypicBlockOperator model;
};

std::vector<NamedModel> dump_models(const RunConfig& c) {
  std::vector<NamedModel> out;
  if (c.model.kind == ModelKind::plane_glued) {
    for (int m = c.model.window_lo; m <= c.model.window_hi; ++m) {
      auto pieces = build_glued_plane_models(m, c.model.glue);
      out.push_back({"inner m=" + std::to_string(m), std::move(pieces.inner)});
      out.push_back({"outer m=" + std::to_string(m), std::move(pieces.outer)});
    }
  } else {
    out.push_back({to_string(c.model.kind), build_model(c.model)});
  }
  Eigen::Index entries = 0;
  for (const auto& nm : out) entries += nm.model.domain_dim() * nm.model.codomain_dim();
  if (entries > kMaxDumpEntries)
    throw std::invalid_argument("model too large to dump (" + std::to_string(entries) +
                                " entries); narrow the window or lower the resolution");
  return out;
}

std::string dump_machine(const std::vector<NamedModel>& models) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["command"] = "dump";
  doc["models"] = nlohmann::ordered_json::array();
  for (const auto& [name, model] : models) {
    const MatrixXcd a = model.dense();
    nlohmann::ordered_json j;
    j["name"] = name;
    j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : model.metadata()) j["metadata"][k] = v;
    j["group"] = model.group().name();
    j["graded"] = model.graded();
    j["domain_labels"] = labels_json(model.group(), model.domain_labels());
    j["codomain_labels"] = labels_json(model.group(), model.codomain_labels());
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    auto re = nlohmann::ordered_json::array();
    auto im = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      auto rr = nlohmann::ordered_json::array();
      auto ri = nlohmann::ordered_json::array();
      for (Eigen::Index k = 0; k < a.cols(); ++k) {
        rr.push_back(a(i, k).real());
        ri.push_back(a(i, k).imag());
      }
      re.push_back(std::move(rr));
      im.push_back(std::move(ri));
    }
    j["real"] = std::move(re);
    j["imag"] = std::move(im);
    doc["models"].push_back(std::move(j));
  }
  return doc.dump(1) + "\n";
}

std::string dump_text(const std::vector<NamedModel>& models) {
  std::ostringstream os;
  for (const auto& [name, model] : models) {
    const MatrixXcd a = model.dense();
    os << "== " << name << " (" << a.rows() << " x " << a.cols() << ", group " << model.group().name()
       << (model.graded() ? ", graded" : "") << ") ==\n";
    for (const auto& [k, v] : model.metadata()) os << "  " << k << ": " << v << "\n";
    auto labels = [&](const char* side, const std::vector<LabelDim>& ls) {
      os << "  " << side << ":";
      for (const auto& [label, dim] : ls) os << ' ' << model.group().label_name(label) << " x" << dim;
      os << "\n";
    };
    labels("domain", model.domain_labels());
    labels("codomain", model.codomain_labels());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index k = 0; k < a.cols(); ++k) os << (k ? " " : "") << entry_text(a(i, k));
      os << "\n";
    }
  }
  return os.str();
}

template <class F>
CommandOutput guarded(F&& body) {
  CommandOutput out;
  try {
    body(out);
  } catch (const IndeterminateError& e) {
    out.exit_code = kExitIndeterminate;
    out.err = std::string("indeterminate: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    out.exit_code = kExitError;
    out.out.clear();
    out.err = std::string("error: ") + e.what() + "\n";
  }
  return out;
}

}  // namespace

CommandOutput cmd_run(const Overrides& options) {
  return guarded([&](CommandOutput& out) {
    const RunConfig c = load(options);
    std::vector<IndexReport> reports;
    switch (c.task) {
      case Task::index:
        reports.push_back(index_report(c));
        break;
      case Task::stability: {
        IndexReport rep = stability_suite(build_model(c.model), c.stability, c.policy);
        rep.seed = c.seed;
        reports.push_back(std::move(rep));
        break;
      }
      case Task::convergence:
        reports.push_back(convergence_report(c));
        break;
    }
    if (c.op) reports.push_back(operator_report(*c.op, c.seed));
    out.exit_code = exit_code_for(reports);
    out.out = render(c.format, "run", reports, out.exit_code == kExitOk);
  });
}

CommandOutput cmd_suite(const std::string& name, const Overrides& options) {
  return guarded([&](CommandOutput& out) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw std::invalid_argument("unknown suite '" + name + "'");
    // Suites carry their own models; only policy, seed and format apply here.
    Overrides general = options;
    general.model.reset();
    general.resolution.reset();
    general.window.reset();
    const RunConfig c = load(general);
    SuiteOptions s;
    s.policy = c.policy;
    s.seed = c.seed;
    s.resolution = options.resolution;
    s.window = options.window;
    const auto reports = run_suite(name, s);
    out.exit_code = exit_code_for(reports);
    out.out = render(c.format, "suite " + name, reports, out.exit_code == kExitOk);
  });
}

CommandOutput cmd_dump(const Overrides& options) {
  return guarded([&](CommandOutput& out) {
    const RunConfig c = load(options);
    const auto models = dump_models(c);
    out.out = c.format == "machine" ? dump_machine(models) : dump_text(models);
  });
}

}  // namespace eqindex::cli
