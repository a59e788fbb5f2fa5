#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace rsat::cli {

struct ScenarioOutcome {
  bool pass = false;
  std::string measured;
};

struct Scenario {
  std::string name;
  nlohmann::json parameters;
  std::string expected;
  /// "published" (a value stated in the literature), "trivial" or "derived" (computed here by an independent route).
  std::string tag;
  std::uint64_t budget;
  std::function<ScenarioOutcome(std::uint64_t budget)> run;
};

/// Built-in scenarios sorted by name.
const std::vector<Scenario>& scenarios();

}  // namespace rsat::cli
