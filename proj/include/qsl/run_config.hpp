#pragma once

#include "qsl/optimizer.hpp"

#include <istream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsl {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parsed sweep run: optimizer settings plus reporting options and the raw
/// key-value snapshot for the manifest.
struct RunConfig {
  OptimizeConfig opt;
  double threshold = 0.99;  // report.threshold
  std::vector<std::pair<std::string, std::string>> entries;
};

/// Key = value per line, '#' comments, dotted keys for nesting. Unknown or
/// duplicate keys are errors. Site labels inside values are 1-based.
RunConfig parse_run_config(std::istream& in, const std::string& origin);
RunConfig parse_run_config_file(const std::string& path);

std::string describe_run_config_schema();

}  // namespace qsl
