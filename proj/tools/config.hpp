#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eqindex/index.hpp"
#include "eqindex/models.hpp"

namespace eqindex::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scalar operator given by coefficient expressions, checked for ellipticity.
struct OperatorSpec {
  int order = 1;
  int base_dim = 1;
  std::vector<std::pair<std::string, std::string>> terms;  // "a1,...,an" -> expression
};

enum class Task { index, stability, convergence };

struct RunConfig {
  ModelSpec model;
  RankPolicy policy;
  Task task = Task::index;
  std::vector<int> resolutions;
  StabilityOptions stability;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::optional<OperatorSpec> op;
};

/// INI-style document; see README for the keys. Unknown sections or keys,
/// malformed values and out-of-range settings raise ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Checks every documented range; throws ConfigError.
void validate(const RunConfig& config);

std::pair<int, int> parse_window(const std::string& text);
FourierCoefficients parse_coefficients(const std::string& text);
Task parse_task(const std::string& text);
std::string to_string(Task task);

/// Sets the discretization size of the configured model: n_r for plane
/// models, N for shift and Toeplitz models, K for circle and product models.
void set_resolution(ModelSpec& spec, int resolution);
int resolution_of(const ModelSpec& spec);

}  // namespace eqindex::cli
