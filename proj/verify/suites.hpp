#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqindex/index.hpp"

namespace eqindex {

struct SuiteOptions {
  RankPolicy policy;
  std::uint64_t seed = 1;
  std::optional<int> resolution;                // n_r for plane suites
  std::optional<std::pair<int, int>> window;    // weight window for plane suites
};

const std::vector<std::string>& suite_names();

/// Runs a named suite over its built-in models. Throws std::invalid_argument
/// for unknown names.
std::vector<IndexReport> run_suite(const std::string& name, const SuiteOptions& options = {});

/// Symbol, ellipticity and Clifford checks.
IndexReport symbols_report(std::uint64_t seed = 1);

/// One report per acceptance criterion, titled "criterion <k>: <summary>".
std::vector<IndexReport> acceptance_reports(const SuiteOptions& options = {});

}  // namespace eqindex
