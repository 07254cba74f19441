#pragma once

#include <string>
#include <vector>

#include "eqindex/index.hpp"

namespace eqindex {

/// Version of the machine-readable report layout.
inline constexpr int kReportSchemaVersion = 1;

/// Single JSON document for one command: schema version, command name,
/// overall verdict and one entry per report. Non-finite numbers are written
/// as the strings "inf", "-inf" or "nan". Key order is fixed, so equal
/// inputs give byte-identical output.
std::string render_machine(const std::string& command, const std::vector<IndexReport>& reports, bool passed);

/// Human-readable tables for the same content.
std::string render_text(const std::string& command, const std::vector<IndexReport>& reports, bool passed);

}  // namespace eqindex
