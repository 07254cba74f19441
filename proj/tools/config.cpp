#include "config.hpp"

#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace eqindex::cli {

namespace {

namespace pt = boost::property_tree;

template <class T>
T convert(const std::string& where, const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (in.fail() || !(in >> std::ws).eof()) throw ConfigError(where + ": cannot parse '" + text + "'");
  return value;
}

bool convert_bool(const std::string& where, const std::string& text) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ConfigError(where + ": expected true or false, got '" + text + "'");
}

std::vector<int> parse_int_list(const std::string& where, const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',') c = ' ';
  std::istringstream in(cleaned);
  std::vector<int> out;
  std::string item;
  while (in >> item) out.push_back(convert<int>(where, item));
  return out;
}

void apply_model(RunConfig& c, const std::string& key, const std::string& value) {
  const std::string where = "model." + key;
  ModelSpec& m = c.model;
  if (key == "kind") {
    try {
      m.kind = parse_model_kind(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  } else if (key == "N") {
    m.truncation = convert<int>(where, value);
  } else if (key == "K") {
    m.fourier_cutoff = convert<int>(where, value);
  } else if (key == "z2_labels") {
    m.z2_labels = convert_bool(where, value);
  } else if (key == "symbol") {
    m.symbol = parse_coefficients(value);
  } else if (key == "potential") {
    m.potential = parse_coefficients(value);
  } else if (key == "deformed") {
    m.deformed = convert_bool(where, value);
  } else if (key == "window") {
    std::tie(m.window_lo, m.window_hi) = parse_window(value);
  } else if (key == "n_r") {
    m.plane.radial_points = convert<int>(where, value);
  } else if (key == "R") {
    m.plane.radius = convert<double>(where, value);
  } else if (key == "f") {
    try {
      m.plane.rescaling = parse_rescaling(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  } else if (key == "r0") {
    m.glue.split_radius = convert<double>(where, value);
  } else if (key == "warp") {
    try {
      m.glue.warp = parse_warp(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  } else if (key == "collar") {
    m.glue.collar_fraction = convert<double>(where, value);
  } else {
    throw ConfigError("unknown key " + where);
  }
}

void apply_policy(RunConfig& c, const std::string& key, const std::string& value) {
  const std::string where = "policy." + key;
  if (key == "absolute_floor")
    c.policy.absolute_floor = convert<double>(where, value);
  else if (key == "relative_factor")
    c.policy.relative_factor = convert<double>(where, value);
  else if (key == "min_gap_ratio")
    c.policy.min_gap_ratio = convert<double>(where, value);
  else
    throw ConfigError("unknown key " + where);
}

void apply_run(RunConfig& c, const std::string& key, const std::string& value) {
  const std::string where = "run." + key;
  if (key == "task") {
    c.task = parse_task(value);
  } else if (key == "seed") {
    c.seed = convert<std::uint64_t>(where, value);
  } else if (key == "format") {
    c.format = value;
  } else if (key == "resolutions") {
    c.resolutions = parse_int_list(where, value);
  } else if (key == "trials") {
    c.stability.trials = convert<int>(where, value);
  } else if (key == "max_rank") {
    c.stability.max_rank = convert<int>(where, value);
  } else if (key == "relative_norm") {
    c.stability.relative_norm = convert<double>(where, value);
  } else {
    throw ConfigError("unknown key " + where);
  }
}

void apply_operator(RunConfig& c, const std::string& key, const std::string& value) {
  if (!c.op) c.op.emplace();
  const std::string where = "operator." + key;
  if (key == "order")
    c.op->order = convert<int>(where, value);
  else if (key == "dim")
    c.op->base_dim = convert<int>(where, value);
  else if (key.find_first_not_of("0123456789,") == std::string::npos)
    c.op->terms.emplace_back(key, value);
  else
    throw ConfigError("unknown key " + where + " (coefficient keys are multi-indices like 2,0)");
}

}  // namespace

std::pair<int, int> parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("window '" + text + "': expected lo:hi");
  const int lo = convert<int>("window", text.substr(0, colon));
  const int hi = convert<int>("window", text.substr(colon + 1));
  if (lo > hi) throw ConfigError("window '" + text + "': lo exceeds hi");
  return {lo, hi};
}

FourierCoefficients parse_coefficients(const std::string& text) {
  // "sin" or "<a>*sin" for a sin t; otherwise "k:re[:im]" entries.
  const auto star = text.find("*sin");
  if (text == "sin") return sine_potential(1.0);
  if (star != std::string::npos && star + 4 == text.size())
    return sine_potential(convert<double>("coefficients", text.substr(0, star)));
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ';' || c == ',') c = ' ';
  std::istringstream in(cleaned);
  FourierCoefficients out;
  std::string item;
  while (in >> item) {
    std::vector<std::string> parts;
    std::stringstream ss(item);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("coefficient '" + item + "': expected k:re or k:re:im");
    const int k = convert<int>("coefficient power", parts[0]);
    const double re = convert<double>("coefficient value", parts[1]);
    const double im = parts.size() == 3 ? convert<double>("coefficient value", parts[2]) : 0.0;
    out[k] += cdouble(re, im);
  }
  return out;
}

Task parse_task(const std::string& text) {
  if (text == "index") return Task::index;
  if (text == "stability") return Task::stability;
  if (text == "convergence") return Task::convergence;
  throw ConfigError("run.task: unknown task '" + text + "' (expected index, stability or convergence)");
}

std::string to_string(Task task) {
  switch (task) {
    case Task::index:
      return "index";
    case Task::stability:
      return "stability";
    case Task::convergence:
      return "convergence";
  }
  return "index";
}

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  RunConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError("key '" + section + "' outside of a section");
    for (const auto& [key, node] : body) {
      const std::string value = node.get_value<std::string>();
      if (section == "model")
        apply_model(c, key, value);
      else if (section == "policy")
        apply_policy(c, key, value);
      else if (section == "run")
        apply_run(c, key, value);
      else if (section == "operator")
        apply_operator(c, key, value);
      else
        throw ConfigError("unknown section [" + section + "]");
    }
  }
  c.stability.seed = c.seed;
  c.model.seed = c.seed;
  c.model.glue.plane = c.model.plane;
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  return parse_config(in);
}

void set_resolution(ModelSpec& spec, int resolution) {
  switch (spec.kind) {
    case ModelKind::plane_weight:
    case ModelKind::plane_glued:
      spec.plane.radial_points = resolution;
      spec.glue.plane.radial_points = resolution;
      break;
    case ModelKind::shift:
    case ModelKind::toeplitz:
      spec.truncation = resolution;
      break;
    case ModelKind::circle_first_order:
    case ModelKind::derham_circle:
    case ModelKind::product:
      spec.fourier_cutoff = resolution;
      break;
  }
}

int resolution_of(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::plane_weight:
    case ModelKind::plane_glued:
      return spec.plane.radial_points;
    case ModelKind::shift:
    case ModelKind::toeplitz:
      return spec.truncation;
    default:
      return spec.fourier_cutoff;
  }
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  const ModelSpec& m = c.model;
  require(m.truncation >= 4 && m.truncation <= 4096, "model.N must lie in [4, 4096]");
  const bool shift_based = m.kind == ModelKind::shift || m.kind == ModelKind::product;
  require(!shift_based || m.truncation % 2 == 0, "model.N must be even for shift models");
  require(m.fourier_cutoff >= 1 && m.fourier_cutoff <= 2048, "model.K must lie in [1, 2048]");
  require(m.window_lo >= -256 && m.window_hi <= 256, "model.window must lie within [-256, 256]");
  require(m.plane.radial_points >= 100 && m.plane.radial_points <= 20000, "model.n_r must lie in [100, 20000]");
  require(m.plane.radius >= 6 && m.plane.radius <= 100, "model.R must lie in [6, 100]");
  require(m.glue.split_radius > 0 && m.glue.split_radius < m.plane.radius, "model.r0 must lie in (0, R)");
  require(m.glue.collar_fraction > 0 && m.glue.collar_fraction < 1, "model.collar must lie in (0, 1)");
  require(m.kind != ModelKind::toeplitz || !m.symbol.empty(), "model.symbol must not be empty");
  require(c.policy.absolute_floor > 0 && c.policy.absolute_floor < 1, "policy.absolute_floor must lie in (0, 1)");
  require(c.policy.relative_factor > 0 && c.policy.relative_factor < 1, "policy.relative_factor must lie in (0, 1)");
  require(c.policy.min_gap_ratio > 1, "policy.min_gap_ratio must exceed 1");
  require(c.format == "text" || c.format == "machine", "run.format must be text or machine");
  require(c.stability.trials >= 1 && c.stability.trials <= 10000, "run.trials must lie in [1, 10000]");
  require(c.stability.max_rank >= 0 && c.stability.max_rank <= 64, "run.max_rank must lie in [0, 64]");
  require(c.stability.relative_norm >= 0 && c.stability.relative_norm <= 0.5,
          "run.relative_norm must lie in [0, 0.5]");
  if (c.task == Task::convergence) {
    require(c.resolutions.size() >= 3, "run.resolutions needs at least three entries");
    for (int r : c.resolutions) require(r >= 1, "run.resolutions entries must be positive");
  }
  if (c.op) {
    require(c.op->order >= 0 && c.op->order <= 4, "operator.order must lie in [0, 4]");
    require(c.op->base_dim >= 1 && c.op->base_dim <= 4, "operator.dim must lie in [1, 4]");
    require(!c.op->terms.empty(), "operator section has no coefficients");
  }
}

}  // namespace eqindex::cli
