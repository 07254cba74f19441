#include "eqindex/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace eqindex {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ordered_json policy_json(const RankPolicy& p) {
  ordered_json j;
  j["absolute_floor"] = p.absolute_floor;
  j["relative_factor"] = p.relative_factor;
  j["min_gap_ratio"] = p.min_gap_ratio;
  return j;
}

ordered_json report_json(const IndexReport& r) {
  ordered_json j;
  j["title"] = r.title;
  j["passed"] = r.passed();
  j["confident"] = r.confident;
  j["metadata"] = ordered_json::object();
  for (const auto& [k, v] : r.metadata) j["metadata"][k] = v;
  j["policy"] = policy_json(r.policy);
  j["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json(nullptr);
  j["group"] = r.group;
  if (r.window)
    j["window"] = {r.window->first, r.window->second};
  else
    j["window"] = nullptr;
  j["index"] = r.index ? ordered_json(*r.index) : ordered_json(nullptr);
  j["labels"] = ordered_json::array();
  for (const auto& l : r.labels) {
    ordered_json e;
    e["label"] = l.label;
    e["name"] = l.label_name;
    e["kernel"] = l.kernel;
    e["cokernel"] = l.cokernel;
    e["index"] = l.index;
    e["kernel_gap_ratio"] = number(l.kernel_gap);
    e["cokernel_gap_ratio"] = number(l.cokernel_gap);
    e["confident"] = l.confident;
    j["labels"].push_back(e);
  }
  j["checks"] = ordered_json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["diagnostics"] = ordered_json::object();
  for (const auto& [k, v] : r.diagnostics) j["diagnostics"][k] = number(v);
  return j;
}

std::string gap_text(double g) {
  if (std::isinf(g)) return "inf";
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << g;
  return os.str();
}

}  // namespace

std::string render_machine(const std::string& command, const std::vector<IndexReport>& reports, bool passed) {
  ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["command"] = command;
  doc["passed"] = passed;
  doc["reports"] = ordered_json::array();
  for (const auto& r : reports) doc["reports"].push_back(report_json(r));
  return doc.dump(2) + "\n";
}

std::string render_text(const std::string& command, const std::vector<IndexReport>& reports, bool passed) {
  std::ostringstream os;
  os << command << ": " << (passed ? "PASS" : "FAIL") << "\n";
  for (const auto& r : reports) {
    os << "\n== " << r.title << " ==\n";
    for (const auto& [k, v] : r.metadata) os << "  " << k << ": " << v << "\n";
    os << "  group: " << r.group;
    if (r.window) os << ", window [" << r.window->first << ", " << r.window->second << "]";
    os << "\n";
    os << "  policy: floor " << r.policy.absolute_floor << ", relative " << r.policy.relative_factor
       << ", min gap " << r.policy.min_gap_ratio << "\n";
    if (r.seed) os << "  seed: " << *r.seed << "\n";
    if (r.index) os << "  index: " << *r.index << "\n";
    if (!r.labels.empty()) {
      os << "  " << std::left << std::setw(8) << "label" << std::right << std::setw(6) << "ker" << std::setw(7)
         << "coker" << std::setw(7) << "index" << std::setw(12) << "ker gap" << std::setw(12) << "coker gap"
         << "  status\n";
      for (const auto& l : r.labels) {
        os << "  " << std::left << std::setw(8) << l.label_name << std::right << std::setw(6) << l.kernel
           << std::setw(7) << l.cokernel << std::setw(7) << l.index << std::setw(12) << gap_text(l.kernel_gap)
           << std::setw(12) << gap_text(l.cokernel_gap) << "  " << (l.confident ? "ok" : "INDETERMINATE") << "\n";
      }
    }
    for (const auto& c : r.checks) {
      os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) os << ": " << c.detail;
      os << "\n";
    }
    for (const auto& [k, v] : r.diagnostics) os << "  " << k << " = " << v << "\n";
    if (!r.confident) os << "  result INDETERMINATE\n";
  }
  return os.str();
}

}  // namespace eqindex
