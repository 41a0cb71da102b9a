#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticeflux/config.hpp"

namespace latticeflux {

/**
 * Outcome of one recipe run. `passed` mirrors the bundled checks, which
 * are exactly the acceptance thresholds of the experiment the recipe
 * reproduces; the summary JSON carries every measured value next to its
 * threshold so a run can be audited without rerunning it.
 */
struct RecipeResult {
  std::string recipe;
  bool passed = false;
  std::vector<std::string> outputs;  // absolute paths of files written
  nlohmann::json summary;
};

// The seven experiment recipes, in documentation order.
const std::vector<std::string>& recipe_names();

/**
 * Runs a named recipe: computes, writes CSV output plus summary.json into
 * out_dir (created when missing), and evaluates the bundled checks.
 * Throws on unknown recipe names, config errors, or numerical failure;
 * files already written are removed before the error propagates, so a
 * failed run leaves no partial output. The seed feeds every random draw
 * the recipe makes; recipes without randomness ignore it.
 */
RecipeResult run_recipe(const std::string& name, const Config& config,
                        const std::string& out_dir, std::uint64_t seed);

/**
 * Resolves a config against a recipe's schema without computing anything:
 * defaults are filled in, every value is range-checked, and unknown keys
 * are rejected. Returns the normalized parameter set; throws with the
 * offending key path otherwise.
 */
nlohmann::json validate_config(const std::string& name, const Config& config);

}  // namespace latticeflux
