#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticeflux/config.hpp"
#include "latticeflux/recipes.hpp"

using namespace latticeflux;
namespace fs = std::filesystem;

namespace {

Config parse(const std::string& text) { return Config::parse_string(text, "<test>"); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Fresh output directory under the test's working directory.
class OutDir {
 public:
  explicit OutDir(const std::string& tag)
      : path_(fs::path("recipe-test-out") / tag) {
    fs::remove_all(path_);
  }
  ~OutDir() { fs::remove_all(path_); }
  std::string str() const { return path_.string(); }
  fs::path path() const { return path_; }

 private:
  fs::path path_;
};

std::string what_of(const std::string& name, const Config& config) {
  try {
    validate_config(name, config);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("the recipe catalog is fixed and unknown names list it") {
  const std::vector<std::string> expected{
      "figure2",       "size-scan",      "mode-table",     "jw-verify",
      "ladder-ctplot", "subspace-check", "oracle-compare"};
  CHECK(recipe_names() == expected);

  try {
    run_recipe("nope", parse(""), "unused", 1);
    FAIL("unknown recipe accepted");
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    CHECK(what.find("unknown recipe 'nope'") != std::string::npos);
    for (const auto& name : expected) CHECK(what.find(name) != std::string::npos);
  }
}

TEST_CASE("validate_config normalizes defaults without running anything") {
  const nlohmann::json normalized = validate_config("figure2", parse(""));
  CHECK(normalized.at("recipe") == "figure2");
  CHECK(normalized.at("omega") == "10");
  CHECK(normalized.at("t_cold") == "0.001");
  CHECK(normalized.at("points") == "60");

  const nlohmann::json scan = validate_config("size-scan", parse("[scan]\nsets = 3\n"));
  CHECK(scan.at("sets") == "3");
  CHECK(scan.at("statistics") == "fermion");
}

TEST_CASE("config mistakes are rejected with the offending key") {
  CHECK(what_of("oracle-compare", parse("[fermion]\nrate_in = -1\n"))
            .find("'fermion.rate_in'") != std::string::npos);
  CHECK(what_of("figure2", parse("[figure2]\ntypo = 1\n")).find("'figure2.typo'") !=
        std::string::npos);
  CHECK(what_of("figure2", parse("[figure2]\npoints = 2\n")).find("'figure2.points'") !=
        std::string::npos);
  CHECK(what_of("size-scan", parse("[lattice]\nlengths = 4\n"))
            .find("'lattice.lengths'") != std::string::npos);
  CHECK(what_of("ladder-ctplot", parse("[run]\nexcitations = 5\n"))
            .find("'run.excitations'") != std::string::npos);
}

TEST_CASE("reruns of an unseeded recipe are byte-identical") {
  const Config cfg = parse("[figure2]\npoints = 12\n");
  OutDir first("fig-a");
  OutDir second("fig-b");
  const RecipeResult a = run_recipe("figure2", cfg, first.str(), 1);
  const RecipeResult b = run_recipe("figure2", cfg, second.str(), 99);
  CHECK(a.passed);
  CHECK(b.passed);
  CHECK(slurp((first.path() / "flux_vs_temperature.csv").string()) ==
        slurp((second.path() / "flux_vs_temperature.csv").string()));
}

TEST_CASE("seeded recipes replay under the same seed and move under a new one") {
  const Config cfg = parse(
      "[lattice]\nlengths = 2 3 4\n[scan]\nsets = 2\n[disorder]\nenabled = true\n");
  OutDir a("scan-a");
  OutDir b("scan-b");
  OutDir c("scan-c");
  CHECK(run_recipe("size-scan", Config(cfg), a.str(), 7).passed);
  CHECK(run_recipe("size-scan", Config(cfg), b.str(), 7).passed);
  CHECK(run_recipe("size-scan", Config(cfg), c.str(), 8).passed);
  const std::string rows_a = slurp((a.path() / "size_scan.csv").string());
  CHECK(rows_a == slurp((b.path() / "size_scan.csv").string()));
  CHECK(rows_a != slurp((c.path() / "size_scan.csv").string()));
}

TEST_CASE("result bookkeeping lists every file and embeds the checks") {
  const Config cfg = parse("[fermion]\nlengths = 2\n[boson]\nn_max = 4 6\n");
  OutDir out("oracle");
  const RecipeResult result = run_recipe("oracle-compare", cfg, out.str(), 1);
  CHECK(result.passed);
  CHECK(result.recipe == "oracle-compare");
  REQUIRE(result.outputs.size() == 2);
  for (const auto& path : result.outputs) CHECK(fs::exists(path));
  CHECK(result.summary.at("recipe") == "oracle-compare");
  CHECK(result.summary.at("passed") == true);
  CHECK(result.summary.at("checks").is_array());
  CHECK_FALSE(result.summary.at("checks").empty());
  for (const auto& check : result.summary.at("checks")) {
    CHECK(check.contains("name"));
    CHECK(check.at("passed") == true);
  }

  const nlohmann::json on_disk =
      nlohmann::json::parse(slurp((out.path() / "summary.json").string()));
  CHECK(on_disk.at("recipe") == "oracle-compare");
  CHECK(on_disk.at("outputs").size() == 2);
}

TEST_CASE("a failing run removes everything it wrote") {
  // The cloud hits the open ends near t = 1.5, so a window at [5, 6] is
  // empty after truncation and the plateau reduction throws.
  const Config cfg = parse(
      "[run]\nexcitations = 1\nlength = 7\nt_max = 6\nwindow = 5 6\n");
  OutDir out("ct-fail");
  CHECK_THROWS_AS(run_recipe("ladder-ctplot", cfg, out.str(), 1), std::exception);
  CHECK(fs::is_empty(out.path()));
}

TEST_CASE("ladder runs distinguish plateau from breakdown by phase") {
  const Config good = parse(
      "[run]\nexcitations = 2\nphi = pi\nlength = 21\nt_max = 2\nwindow = 0.5 2\n");
  OutDir out_good("ct-pi");
  const RecipeResult plateau = run_recipe("ladder-ctplot", good, out_good.str(), 1);
  CHECK(plateau.passed);

  const Config bad = parse(
      "[run]\nexcitations = 2\nphi = 0\nlength = 21\nt_max = 2\nwindow = 0.5 2\n");
  OutDir out_bad("ct-zero");
  const RecipeResult breakdown = run_recipe("ladder-ctplot", bad, out_bad.str(), 1);
  CHECK(breakdown.passed);  // the recipe expects and verifies the breakdown
}

TEST_CASE("csv output parses back to the values in the summary") {
  const Config cfg = parse("[lattice]\ndims = 2 5\n");
  OutDir out("modes");
  const RecipeResult result = run_recipe("mode-table", cfg, out.str(), 1);
  CHECK(result.passed);

  const std::string text = slurp((out.path() / "mode_table.csv").string());
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> data_rows;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      CHECK(line.find("flux") != std::string::npos);
      continue;
    }
    data_rows.push_back(line);
  }
  CHECK(data_rows.size() == 2);  // one row per transverse channel

  double total = 0.0;
  for (const auto& row : data_rows) {
    const auto last_comma = row.find_last_of(',');
    REQUIRE(last_comma != std::string::npos);
    total += std::stod(row.substr(last_comma + 1));
  }
  double expected = 0.0;
  bool found = false;
  for (const auto& check : result.summary.at("checks"))
    if (check.contains("mode_sum")) {
      expected = check.at("mode_sum").get<double>();
      found = true;
    }
  REQUIRE(found);
  CHECK(total == doctest::Approx(expected).epsilon(1e-12));
}
