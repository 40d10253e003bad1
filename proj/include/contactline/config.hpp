#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "contactline/discretization.hpp"
#include "contactline/initial_conditions.hpp"
#include "contactline/integrator.hpp"

namespace contactline {

struct RunConfig {
  ICParams ic;
  Grid grid;
  SolverConfig solver;
  std::string output_dir = "out";
  std::vector<double> snapshot_times;
  // Every recognized key mapped to "default" or "user".
  std::map<std::string, std::string> sources;

  void validate() const;
};

// Accepts either `key=value` lines (with `#` comments) or a JSON document whose
// objects are flattened to dotted keys. Unknown keys and malformed values raise
// ParseError; out-of-range values raise ValidationError.
RunConfig parse_config(std::string_view text);

// Every recognized key, in echo order.
const std::vector<std::string>& config_keys();

}  // namespace contactline
