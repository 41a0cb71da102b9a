#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "latticeflux/config.hpp"
#include "latticeflux/recipes.hpp"

namespace {

std::string recipe_listing() {
  std::string listing;
  for (const auto& name : latticeflux::recipe_names())
    listing += (listing.empty() ? "" : ", ") + name;
  return listing;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latticeflux: boundary-driven lattice transport experiments"};
  app.footer("recipes: " + recipe_listing());

  std::string recipe;
  std::string config_path;
  std::string out_dir = "latticeflux-out";
  std::uint64_t seed = 1;
  bool validate_only = false;
  app.add_option("recipe", recipe, "experiment recipe to run")->required();
  app.add_option("--config", config_path, "run description file")->required();
  app.add_option("--out", out_dir, "output directory (created when missing)");
  app.add_option("--seed", seed, "seed for recipes that draw random parameters");
  app.add_flag("--validate", validate_only,
               "resolve and range-check the config, print it normalized, and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    const latticeflux::Config config = latticeflux::Config::parse_file(config_path);
    if (validate_only) {
      std::printf("%s\n", latticeflux::validate_config(recipe, config).dump(2).c_str());
      return 0;
    }
    const latticeflux::RecipeResult result =
        latticeflux::run_recipe(recipe, config, out_dir, seed);
    for (const auto& check : result.summary["checks"])
      std::printf("[%s] %s\n", check["passed"].get<bool>() ? "pass" : "FAIL",
                  check["name"].get<std::string>().c_str());
    for (const auto& file : result.outputs) std::printf("wrote %s\n", file.c_str());
    std::printf("%s: %s\n", recipe.c_str(), result.passed ? "pass" : "FAIL");
    return result.passed ? 0 : 1;
  } catch (const std::exception& error) {
    std::fprintf(stderr, "latticeflux: %s\n", error.what());
    return 2;
  }
}
