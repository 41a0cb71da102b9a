#include "latticeflux/recipes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <type_traits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "latticeflux/analytic_flux.hpp"
#include "latticeflux/correlation.hpp"
#include "latticeflux/csv.hpp"
#include "latticeflux/evolve.hpp"
#include "latticeflux/ladder.hpp"
#include "latticeflux/ladder_states.hpp"
#include "latticeflux/lattice.hpp"
#include "latticeflux/liouville.hpp"
#include "latticeflux/modes.hpp"
#include "latticeflux/msd.hpp"
#include "latticeflux/rng.hpp"
#include "latticeflux/sector.hpp"
#include "latticeflux/strings.hpp"

namespace fs = std::filesystem;

namespace latticeflux {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw std::runtime_error("config key '" + key + "': " + why);
}

// Independent parameter points share nothing, so a counter-fed pool is
// enough. The first exception wins and is rethrown after the join.
void parallel_for(long n, const std::function<void(long)>& body) {
  if (n <= 0) return;
  const long hw = std::max(1u, std::thread::hardware_concurrency());
  const long workers = std::min({n, hw, 8L});
  if (workers <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::mutex gate;
  std::exception_ptr first;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (long w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const long i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(gate);
          if (!first) first = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

/** Resolved parameters of a run, echoed verbatim into every CSV header
 * and into the summary, so an output file names the exact inputs that
 * produced it.
 */
class Provenance {
 public:
  void add(const std::string& key, const std::string& value) { items_.emplace_back(key, value); }
  void add(const std::string& key, double value) { add(key, format_full(value)); }
  void add(const std::string& key, long value) { add(key, std::to_string(value)); }
  template <typename T>
  void add_list(const std::string& key, const std::vector<T>& values) {
    std::string text;
    for (const auto& v : values) {
      if (!text.empty()) text += " ";
      if constexpr (std::is_same_v<T, double>)
        text += format_full(v);
      else
        text += std::to_string(v);
    }
    add(key, text);
  }

  void echo(CsvWriter& csv) const {
    for (const auto& [key, value] : items_) csv.comment(key + " = " + value);
  }
  json as_json() const {
    json out = json::object();
    for (const auto& [key, value] : items_) out[key] = value;
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

struct CheckSet {
  json checks = json::array();
  bool all = true;
  void add(const std::string& name, bool ok, json details = json::object()) {
    details["name"] = name;
    details["passed"] = ok;
    checks.push_back(std::move(details));
    all = all && ok;
  }
};

Statistics parse_statistics(const Config& config, const std::string& key,
                            const std::string& fallback) {
  const std::string word = config.word(key, fallback);
  if (word == "fermion") return Statistics::Fermion;
  if (word == "boson") return Statistics::Boson;
  bad_key(key, "expected fermion or boson, got '" + word + "'");
}

BathSpec read_baths(const Config& config, const std::string& section, const BathSpec& fallback) {
  BathSpec baths;
  baths.rate_in = config.number(section + ".rate_in", fallback.rate_in);
  baths.rate_out = config.number(section + ".rate_out", fallback.rate_out);
  baths.occ_in = config.number(section + ".occ_in", fallback.occ_in);
  baths.occ_out = config.number(section + ".occ_out", fallback.occ_out);
  if (!(baths.rate_in > 0.0)) bad_key(section + ".rate_in", "bath rate must be positive");
  if (!(baths.rate_out > 0.0)) bad_key(section + ".rate_out", "bath rate must be positive");
  if (baths.occ_in < 0.0) bad_key(section + ".occ_in", "bath occupation must be non-negative");
  if (baths.occ_out < 0.0) bad_key(section + ".occ_out", "bath occupation must be non-negative");
  return baths;
}

void echo_baths(Provenance& prov, const std::string& prefix, const BathSpec& baths) {
  prov.add(prefix + "rate_in", baths.rate_in);
  prov.add(prefix + "rate_out", baths.rate_out);
  prov.add(prefix + "occ_in", baths.occ_in);
  prov.add(prefix + "occ_out", baths.occ_out);
}

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("sorted_eigenvalues(): eigensolve failed");
  return es.eigenvalues();
}

// Rows/columns of the one-excitation block, ordered by site.
Eigen::MatrixXcd single_excitation_block(const Eigen::SparseMatrix<std::complex<double>>& full,
                                         int n_sites) {
  const Eigen::MatrixXcd dense(full);
  std::vector<long> rows(n_sites);
  for (int s = 1; s <= n_sites; ++s) rows[s - 1] = 1L << (n_sites - s);
  Eigen::MatrixXcd block(n_sites, n_sites);
  for (int a = 0; a < n_sites; ++a)
    for (int b = 0; b < n_sites; ++b) block(a, b) = dense(rows[a], rows[b]);
  return block;
}

// ---------------------------------------------------------------- figure2

struct Figure2Params {
  double rate = 0.0, g = 0.0, omega = 0.0, t_cold = 0.0, t_min = 0.0, t_max = 0.0;
  long points = 0;
  Provenance prov;
};

Figure2Params read_figure2(const Config& config) {
  Figure2Params p;
  p.rate = config.number("figure2.rate", 0.01);
  p.g = config.number("figure2.g", 0.01);
  p.omega = config.number("figure2.omega", 10.0);
  p.t_cold = config.number("figure2.t_cold", 0.001);
  p.t_min = config.number("figure2.t_hot_min", 1.0);
  p.t_max = config.number("figure2.t_hot_max", 1e4);
  p.points = config.integer("figure2.points", 60);
  config.finish();
  if (!(p.rate > 0.0)) bad_key("figure2.rate", "bath rate must be positive");
  if (!(p.omega > 0.0)) bad_key("figure2.omega", "frequency must be positive");
  if (!(p.t_cold > 0.0)) bad_key("figure2.t_cold", "temperature must be positive");
  if (p.points < 3) bad_key("figure2.points", "need at least 3 sweep points");
  if (!(p.t_min > 0.0) || !(p.t_max > p.t_min))
    bad_key("figure2.t_hot_min", "need 0 < t_hot_min < t_hot_max");
  p.prov.add("rate", p.rate);
  p.prov.add("g", p.g);
  p.prov.add("omega", p.omega);
  p.prov.add("t_cold", p.t_cold);
  p.prov.add("t_hot_min", p.t_min);
  p.prov.add("t_hot_max", p.t_max);
  p.prov.add("points", p.points);
  return p;
}

void run_figure2(RecipeResult& result, const Figure2Params& p, const fs::path& out) {
  const double occ_cold = bose_occupation(p.omega, p.t_cold);
  const long points = p.points;
  Eigen::VectorXd t_hot(points), occ_hot(points), j_fermi(points), j_bose(points);
  const double lg_lo = std::log10(p.t_min);
  const double lg_hi = std::log10(p.t_max);
  parallel_for(points, [&](long k) {
    const double t = std::pow(10.0, lg_lo + (lg_hi - lg_lo) * k / (points - 1));
    const double occ = bose_occupation(p.omega, t);
    const BathSpec baths{p.rate, p.rate, occ, occ_cold};
    t_hot(k) = t;
    occ_hot(k) = occ;
    j_fermi(k) = fermion_chain_flux(p.omega, p.g, baths);
    j_bose(k) = boson_chain_flux(p.omega, p.g, baths);
  });

  const fs::path csv_path = out / "flux_vs_temperature.csv";
  CsvWriter csv(csv_path.string());
  result.outputs.push_back(csv_path.string());
  csv.comment("energy flux of a boundary-driven chain against the hot-bath temperature");
  p.prov.echo(csv);
  csv.columns({"t_hot", "occupation_hot", "flux_fermion", "flux_boson"});
  for (long k = 0; k < points; ++k) csv.row({t_hot(k), occ_hot(k), j_fermi(k), j_bose(k)});
  csv.close();

  CheckSet checks;
  bool increasing = true;
  for (long k = 1; k < points; ++k) increasing = increasing && j_bose(k) > j_bose(k - 1);
  checks.add("bosonic flux strictly increasing", increasing);

  long arg_max = 0;
  for (long k = 1; k < points; ++k)
    if (j_fermi(k) > j_fermi(arg_max)) arg_max = k;
  checks.add("fermionic flux peaks in the interior and falls off",
             arg_max > 0 && arg_max + 1 < points && j_fermi(points - 1) < j_fermi(arg_max),
             {{"t_at_max", t_hot(arg_max)},
              {"flux_at_max", j_fermi(arg_max)},
              {"flux_at_end", j_fermi(points - 1)}});

  bool bose_above = true;
  for (long k = 0; k < points; ++k)
    if (t_hot(k) >= 1e2) bose_above = bose_above && j_bose(k) > j_fermi(k);
  checks.add("bosonic flux above fermionic for t_hot >= 100", bose_above);

  result.passed = checks.all;
  result.summary["checks"] = std::move(checks.checks);
}

// --------------------------------------------------------------- size-scan

struct SizeScanParams {
  Statistics stats = Statistics::Fermion;
  double omega = 0.0;
  std::vector<int> transverse;
  std::vector<int> lengths;
  long sets = 0;
  std::vector<double> g_range, rate_range, occ_range;
  double occ_gap = 0.0;
  bool disorder = false;
  double width = 0.0;
  Provenance prov;
};

SizeScanParams read_size_scan(const Config& config) {
  SizeScanParams p;
  p.stats = parse_statistics(config, "lattice.statistics", "fermion");
  p.omega = config.number("lattice.omega", 1.0);
  p.transverse = config.integers("lattice.transverse", {});
  p.lengths = config.integers("lattice.lengths", {});
  if (p.lengths.empty())
    for (int l = 2; l <= 16; ++l) p.lengths.push_back(l);
  p.sets = config.integer("scan.sets", 10);
  p.g_range = config.has("scan.g_range") ? config.numbers("scan.g_range")
                                         : std::vector<double>{0.1, 2.0};
  p.rate_range = config.has("scan.rate_range") ? config.numbers("scan.rate_range")
                                               : std::vector<double>{0.01, 1.0};
  p.occ_range = config.has("scan.occ_range") ? config.numbers("scan.occ_range")
                                             : std::vector<double>{0.0, 2.0};
  p.occ_gap = config.number("scan.occ_gap_min", 0.1);
  p.disorder = config.flag("disorder.enabled", false);
  p.width = config.number("disorder.width", 0.5);
  config.finish();

  const auto pair_check = [](const std::string& key, const std::vector<double>& r,
                             double floor) {
    if (r.size() != 2 || !(r[0] <= r[1])) bad_key(key, "expected an ordered 'lo hi' pair");
    if (r[0] < floor) bad_key(key, "range reaches below " + format_full(floor));
  };
  pair_check("scan.g_range", p.g_range, -1e300);
  pair_check("scan.rate_range", p.rate_range, 0.0);
  if (!(p.rate_range[0] > 0.0)) bad_key("scan.rate_range", "bath rates must be positive");
  pair_check("scan.occ_range", p.occ_range, 0.0);
  if (p.sets < 1) bad_key("scan.sets", "need at least one parameter set");
  if (p.lengths.size() < 2) bad_key("lattice.lengths", "need at least two lengths to scan");
  for (int l : p.lengths)
    if (l < 2) bad_key("lattice.lengths", "transport length must be at least 2");
  for (int l : p.transverse)
    if (l < 1) bad_key("lattice.transverse", "every extent must be at least 1");
  if (!(p.occ_gap > 0.0) || p.occ_gap >= (p.occ_range[1] - p.occ_range[0]))
    bad_key("scan.occ_gap_min", "gap must be positive and smaller than the occupation range");

  p.prov.add("statistics", p.stats == Statistics::Fermion ? "fermion" : "boson");
  p.prov.add("omega", p.omega);
  p.prov.add_list("transverse", p.transverse);
  p.prov.add_list("lengths", p.lengths);
  p.prov.add("sets", p.sets);
  p.prov.add_list("g_range", p.g_range);
  p.prov.add_list("rate_range", p.rate_range);
  p.prov.add_list("occ_range", p.occ_range);
  p.prov.add("occ_gap_min", p.occ_gap);
  p.prov.add("disorder", p.disorder ? "on" : "off");
  if (p.disorder) p.prov.add("disorder_width", p.width);
  return p;
}

void run_size_scan(RecipeResult& result, SizeScanParams& p, const fs::path& out,
                   std::uint64_t seed) {
  p.prov.add("seed", std::to_string(seed));

  // All draws happen up front in a fixed order; the per-set scans are then
  // free to run in any order. Disorder realizations come from size_scan's
  // own per-length stream, offset by the set index.
  struct ParameterSet {
    double g = 0.0;
    BathSpec baths;
  };
  UniformStream stream(seed);
  std::vector<ParameterSet> draws(p.sets);
  for (auto& d : draws) {
    d.g = stream.next(p.g_range[0], p.g_range[1]);
    d.baths.rate_in = stream.next(p.rate_range[0], p.rate_range[1]);
    d.baths.rate_out = stream.next(p.rate_range[0], p.rate_range[1]);
    do {
      d.baths.occ_in = stream.next(p.occ_range[0], p.occ_range[1]);
      d.baths.occ_out = stream.next(p.occ_range[0], p.occ_range[1]);
    } while (std::abs(d.baths.occ_in - d.baths.occ_out) < p.occ_gap);
  }
  const long sets = p.sets;
  const long n_lengths = static_cast<long>(p.lengths.size());

  Eigen::MatrixXd flux(sets, n_lengths), residual(sets, n_lengths);
  Eigen::VectorXd reference(sets);
  parallel_for(sets, [&](long s) {
    LatticeSpec spec;
    spec.dims = p.transverse;
    spec.dims.push_back(p.lengths[0]);
    spec.couplings.assign(spec.dims.size(), draws[s].g);
    spec.omega = p.omega;
    spec.statistics = p.stats;
    const auto rows =
        size_scan(spec, draws[s].baths, p.lengths, p.disorder ? p.width : 0.0, seed + s);
    for (long li = 0; li < n_lengths; ++li) {
      flux(s, li) = rows[li].flux;
      residual(s, li) = rows[li].residual;
    }
    if (!p.disorder) reference(s) = lattice_total_flux(spec, draws[s].baths).total;
  });

  const fs::path csv_path = out / "size_scan.csv";
  CsvWriter csv(csv_path.string());
  result.outputs.push_back(csv_path.string());
  csv.comment("steady-state flux against transport length, one row per (set, length)");
  p.prov.echo(csv);
  if (p.disorder)
    csv.columns(
        {"set", "length", "g", "rate_in", "rate_out", "occ_in", "occ_out", "flux", "residual"});
  else
    csv.columns({"set", "length", "g", "rate_in", "rate_out", "occ_in", "occ_out", "flux",
                 "residual", "analytic", "rel_dev"});
  for (long s = 0; s < sets; ++s)
    for (long li = 0; li < n_lengths; ++li) {
      const auto& d = draws[s];
      std::vector<double> row{static_cast<double>(s), static_cast<double>(p.lengths[li]),
                              d.g, d.baths.rate_in, d.baths.rate_out,
                              d.baths.occ_in, d.baths.occ_out, flux(s, li), residual(s, li)};
      if (!p.disorder) {
        row.push_back(reference(s));
        row.push_back(std::abs(flux(s, li) - reference(s)) / std::abs(reference(s)));
      }
      csv.row(row);
    }
  csv.close();

  CheckSet checks;
  double worst_match = 0.0;
  double worst_spread = 0.0;
  double least_spread = 1e300;
  for (long s = 0; s < sets; ++s) {
    const double lo = flux.row(s).minCoeff();
    const double hi = flux.row(s).maxCoeff();
    const double mid = flux.row(s).mean();
    const double spread = (hi - lo) / std::abs(p.disorder ? mid : reference(s));
    worst_spread = std::max(worst_spread, spread);
    least_spread = std::min(least_spread, spread);
    if (!p.disorder)
      for (long li = 0; li < n_lengths; ++li)
        worst_match = std::max(worst_match,
                               std::abs(flux(s, li) - reference(s)) / std::abs(reference(s)));
  }
  if (p.disorder) {
    checks.add("disorder breaks length independence (relative spread > 1e-3)",
               least_spread > 1e-3, {{"least_spread", least_spread}});
  } else {
    checks.add("flux matches the analytic value to 1e-8 relative", worst_match <= 1e-8,
               {{"worst", worst_match}});
    checks.add("flux spread across lengths below 1e-10 relative", worst_spread < 1e-10,
               {{"worst", worst_spread}});
  }

  result.passed = checks.all;
  result.summary["checks"] = std::move(checks.checks);
}

// --------------------------------------------------------------- mode-table

struct ModeTableParams {
  LatticeSpec spec;  // uniform part; a disorder profile is drawn at run time
  BathSpec baths;
  bool disorder = false;
  double width = 0.0;
  Provenance prov;
};

ModeTableParams read_mode_table(const Config& config) {
  ModeTableParams p;
  p.spec.dims = config.integers("lattice.dims", {3, 8});
  p.spec.couplings = config.has("lattice.couplings")
                         ? config.numbers("lattice.couplings")
                         : std::vector<double>(p.spec.dims.size(), 1.0);
  p.spec.omega = config.number("lattice.omega", 1.0);
  p.spec.statistics = parse_statistics(config, "lattice.statistics", "fermion");
  p.baths = read_baths(config, "baths", BathSpec{0.5, 0.5, 1.0, 0.0});
  p.disorder = config.flag("disorder.enabled", false);
  p.width = config.number("disorder.width", 0.5);
  config.finish();

  if (p.spec.dims.size() != p.spec.couplings.size())
    bad_key("lattice.couplings", "need one coupling per dimension");
  for (int l : p.spec.dims)
    if (l < 1) bad_key("lattice.dims", "every extent must be at least 1");
  if (p.spec.dims.back() < 2) bad_key("lattice.dims", "transport length must be at least 2");
  validate(p.spec);

  p.prov.add_list("dims", p.spec.dims);
  p.prov.add_list("couplings", p.spec.couplings);
  p.prov.add("omega", p.spec.omega);
  p.prov.add("statistics", p.spec.statistics == Statistics::Fermion ? "fermion" : "boson");
  echo_baths(p.prov, "", p.baths);
  p.prov.add("disorder", p.disorder ? "on" : "off");
  if (p.disorder) p.prov.add("disorder_width", p.width);
  return p;
}

void run_mode_table(RecipeResult& result, ModeTableParams& p, const fs::path& out,
                    std::uint64_t seed) {
  LatticeSpec spec = p.spec;
  if (p.disorder) {
    p.prov.add("seed", std::to_string(seed));
    UniformStream stream(seed);
    spec.omega_profile.resize(spec.transport_length());
    for (double& w : spec.omega_profile) w = spec.omega + p.width * (stream.next() - 0.5);
  }
  const BathSpec baths = p.baths;

  const Eigen::MatrixXd h = build_hopping_matrix(spec);
  const ModeDecomposition decomp = mode_block_diagonalize(h, spec);
  const std::vector<ModeChannel> channels = enumerate_modes(spec);
  const long n_channels = static_cast<long>(channels.size());

  // Spectrum preservation: the chain blocks jointly carry the lattice
  // spectrum.
  Eigen::VectorXd full_spectrum = sorted_eigenvalues(h.cast<std::complex<double>>());
  std::vector<double> block_spectrum;
  for (const auto& chain : decomp.chains) {
    const Eigen::VectorXd ev = sorted_eigenvalues(chain);
    block_spectrum.insert(block_spectrum.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(block_spectrum.begin(), block_spectrum.end());
  double spectrum_dev = 0.0;
  for (long i = 0; i < full_spectrum.size(); ++i)
    spectrum_dev = std::max(spectrum_dev, std::abs(full_spectrum(i) - block_spectrum[i]));

  // Per-channel fluxes: analytic for uniform chains, quadratic-ss for
  // disordered profiles (the closed formula has no disordered form).
  Eigen::VectorXd channel_flux(n_channels);
  parallel_for(n_channels, [&](long c) {
    if (!p.disorder) {
      channel_flux(c) =
          chain_flux(spec.statistics, channels[c].omega_q, channels[c].chain_coupling, baths);
      return;
    }
    LatticeSpec chain;
    chain.dims = {channels[c].chain_length};
    chain.couplings = {channels[c].chain_coupling};
    chain.omega = spec.omega;
    chain.statistics = spec.statistics;
    chain.omega_profile = spec.omega_profile;
    for (double& w : chain.omega_profile) w += channels[c].shift;
    const Eigen::MatrixXd hc = build_hopping_matrix(chain);
    const DriftSpec drift = build_drift(hc, chain, baths);
    channel_flux(c) = flux_from_state(steady_state(drift), hc, drift).j_in;
  });
  const double mode_sum = channel_flux.sum();

  const DriftSpec drift = build_drift(h, spec, baths);
  const double lattice_flux = flux_from_state(steady_state(drift), h, drift).j_in;

  const fs::path csv_path = out / "mode_table.csv";
  CsvWriter csv(csv_path.string());
  result.outputs.push_back(csv_path.string());
  csv.comment("transverse mode channels and their chain fluxes");
  p.prov.echo(csv);
  std::vector<std::string> names;
  for (std::size_t a = 0; a + 1 < spec.dims.size(); ++a)
    names.push_back("q" + std::to_string(a + 1));
  names.insert(names.end(), {"shift", "omega_q", "flux"});
  csv.columns(names);
  for (long c = 0; c < n_channels; ++c) {
    std::vector<double> row(channels[c].q.begin(), channels[c].q.end());
    row.insert(row.end(), {channels[c].shift, channels[c].omega_q, channel_flux(c)});
    csv.row(row);
  }
  csv.close();

  CheckSet checks;
  checks.add("transverse DFT block-diagonalizes (residual < 1e-10)", decomp.residual < 1e-10,
             {{"residual", decomp.residual}});
  checks.add("chain blocks preserve the spectrum to 1e-10", spectrum_dev <= 1e-10,
             {{"deviation", spectrum_dev}});
  if (!p.disorder) {
    const double uniform_total =
        n_channels * chain_flux(spec.statistics, spec.omega, spec.couplings.back(), baths);
    const double identity_dev = std::abs(mode_sum - uniform_total) / std::abs(uniform_total);
    checks.add("channel fluxes sum to N times the single-chain flux (1e-12 relative)",
               identity_dev <= 1e-12, {{"deviation", identity_dev}});
  }
  const double closure_dev =
      std::abs(lattice_flux - mode_sum) / std::max(1.0, std::abs(mode_sum));
  checks.add("full-lattice flux equals the mode sum to 1e-10", closure_dev <= 1e-10,
             {{"lattice_flux", lattice_flux}, {"mode_sum", mode_sum}, {"deviation", closure_dev}});

  result.passed = checks.all;
  result.summary["checks"] = std::move(checks.checks);
}

// ---------------------------------------------------------------- jw-verify

struct JwVerifyParams {
  std::vector<int> lengths;
  double omega = 0.0, g_rung = 0.0, g_leg = 0.0;
  Provenance prov;
};

JwVerifyParams read_jw_verify(const Config& config) {
  JwVerifyParams p;
  p.lengths = config.integers("ladder.lengths", {2, 3, 4});
  p.omega = config.number("ladder.omega", 1.0);
  p.g_rung = config.number("ladder.g_rung", 1.0);
  p.g_leg = config.number("ladder.g_leg", 1.0);
  config.finish();
  if (p.lengths.empty()) bad_key("ladder.lengths", "need at least one length");
  for (int l : p.lengths) {
    if (l < 2) bad_key("ladder.lengths", "a ladder needs at least two rungs");
    if (l > 6) bad_key("ladder.lengths", "full Fock matrices cap the length at 6");
  }
  p.prov.add_list("lengths", p.lengths);
  p.prov.add("omega", p.omega);
  p.prov.add("g_rung", p.g_rung);
  p.prov.add("g_leg", p.g_leg);
  return p;
}

void run_jw_verify(RecipeResult& result, const JwVerifyParams& p, const fs::path& out) {
  const long n = static_cast<long>(p.lengths.size());
  Eigen::VectorXd spec_dev_exact(n), spec_dev_gauge(n), sector_dev_spin(n),
      sector_dev_exact(n), sector_dev_gauge(n);
  parallel_for(n, [&](long i) {
    const LadderSpec ladder{p.lengths[i], p.omega, p.g_rung, p.g_leg};
    const int sites = 2 * ladder.length;
    const auto spin_mat = matrix_representation(ladder_spin_hamiltonian(ladder), sites);
    const auto fermi_exact =
        matrix_representation(ladder_fermi_hamiltonian(ladder, -1.0), sites);
    const auto fermi_gauge =
        matrix_representation(ladder_fermi_hamiltonian(ladder, +1.0), sites);

    const Eigen::VectorXd spin_ev = sorted_eigenvalues(Eigen::MatrixXcd(spin_mat));
    spec_dev_exact(i) =
        (sorted_eigenvalues(Eigen::MatrixXcd(fermi_exact)) - spin_ev).cwiseAbs().maxCoeff();
    spec_dev_gauge(i) =
        (sorted_eigenvalues(Eigen::MatrixXcd(fermi_gauge)) - spin_ev).cwiseAbs().maxCoeff();

    // One excitation: every form must reduce to the uniform quadratic
    // ladder, the flipped-leg-sign form after negating every second rung.
    LatticeSpec quadratic = ladder_lattice(ladder);
    quadratic.statistics = Statistics::Fermion;
    const Eigen::MatrixXcd uniform =
        build_hopping_matrix(quadratic).cast<std::complex<double>>();
    Eigen::VectorXcd gauge(sites);
    for (int s = 1; s <= sites; ++s) {
      const int rung = (s + 1) / 2;
      gauge(s - 1) = rung % 2 == 0 ? -1.0 : 1.0;
    }
    const Eigen::MatrixXcd d = gauge.asDiagonal();
    sector_dev_spin(i) =
        (single_excitation_block(spin_mat, sites) - uniform).cwiseAbs().maxCoeff();
    sector_dev_exact(i) =
        (single_excitation_block(fermi_exact, sites) - uniform).cwiseAbs().maxCoeff();
    sector_dev_gauge(i) =
        (d * single_excitation_block(fermi_gauge, sites) * d - uniform).cwiseAbs().maxCoeff();
  });

  const fs::path csv_path = out / "jw_verify.csv";
  CsvWriter csv(csv_path.string());
  result.outputs.push_back(csv_path.string());
  csv.comment("spin ladder against its fermionized forms, full spectra and one-excitation blocks");
  p.prov.echo(csv);
  csv.columns({"length", "hilbert_dim", "spectrum_dev_exact", "spectrum_dev_gauge",
               "sector_dev_spin", "sector_dev_exact", "sector_dev_gauge"});
  for (long i = 0; i < n; ++i)
    csv.row({static_cast<double>(p.lengths[i]), std::pow(2.0, 2 * p.lengths[i]),
             spec_dev_exact(i), spec_dev_gauge(i), sector_dev_spin(i), sector_dev_exact(i),
             sector_dev_gauge(i)});
  csv.close();

  CheckSet checks;
  checks.add("fermionized spectra match the spin ladder to 1e-10",
             spec_dev_exact.maxCoeff() <= 1e-10 && spec_dev_gauge.maxCoeff() <= 1e-10,
             {{"worst_exact", spec_dev_exact.maxCoeff()},
              {"worst_gauge", spec_dev_gauge.maxCoeff()}});
  checks.add("one-excitation blocks equal the uniform ladder (gauge included)",
             sector_dev_spin.maxCoeff() <= 1e-10 && sector_dev_exact.maxCoeff() <= 1e-10 &&
                 sector_dev_gauge.maxCoeff() <= 1e-10,
             {{"worst_spin", sector_dev_spin.maxCoeff()},
              {"worst_exact", sector_dev_exact.maxCoeff()},
              {"worst_gauge", sector_dev_gauge.maxCoeff()}});

  result.passed = checks.all;
  result.summary["checks"] = std::move(checks.checks);
}

// ------------------------------------------------------------- ladder-ctplot

struct LadderCtParams {
  long excitations = 0;
  double phi = 0.0;
  long length = 0;
  double g = 0.0, omega = 0.0, dt = 0.0, t_max = 0.0, guard = 0.0;
  std::vector<double> window;
  std::string expect;
  Provenance prov;
};

LadderCtParams read_ladder_ctplot(const Config& config) {
  LadderCtParams p;
  p.excitations = config.integer("run.excitations", 2);
  if (p.excitations < 1 || p.excitations > 4) bad_key("run.excitations", "must be 1..4");
  p.phi = config.angle("run.phi", M_PI);
  p.length = config.integer("run.length", p.excitations == 4 ? 24 : 31);
  p.g = config.number("run.g", 1.0);
  p.omega = config.number("run.omega", 1.0);
  p.dt = config.number("run.dt", 0.01);
  p.t_max = config.number("run.t_max", 6.0);
  p.guard = config.number("run.guard", 1e-8);
  p.window = config.has("run.window") ? config.numbers("run.window")
                                      : std::vector<double>{0.5, 6.0};
  p.expect = config.word("run.expect", "");
  config.finish();
  if (p.length < 5) bad_key("run.length", "need at least 5 rungs");
  if (!(p.dt > 0.0)) bad_key("run.dt", "step must be positive");
  if (!(p.t_max > p.dt)) bad_key("run.t_max", "horizon must exceed one step");
  if (!(p.guard > 0.0)) bad_key("run.guard", "guard threshold must be positive");
  if (p.window.size() != 2 || !(p.window[0] < p.window[1]))
    bad_key("run.window", "expected an ordered 'lo hi' pair");
  if (p.expect.empty()) {
    const bool phase_sensitive = p.excitations == 2 || p.excitations == 4;
    if (!phase_sensitive || std::abs(p.phi - M_PI) < 1e-12 || std::abs(p.phi + M_PI) < 1e-12)
      p.expect = "plateau";
    else if (std::abs(p.phi) < 1e-12)
      p.expect = "breakdown";
    else
      p.expect = "none";
  }
  if (p.expect != "plateau" && p.expect != "breakdown" && p.expect != "none")
    bad_key("run.expect", "must be plateau, breakdown, or none");

  p.prov.add("excitations", p.excitations);
  p.prov.add("phi", p.phi);
  p.prov.add("length", p.length);
  p.prov.add("g", p.g);
  p.prov.add("omega", p.omega);
  p.prov.add("dt", p.dt);
  p.prov.add("t_max", p.t_max);
  p.prov.add("guard", p.guard);
  p.prov.add_list("window", p.window);
  p.prov.add("expect", p.expect);
  return p;
}

void run_ladder_ctplot(RecipeResult& result, LadderCtParams& p, const fs::path& out) {
  SectorState state = [&] {
    switch (p.excitations) {
      case 1: {
        const int lead = (static_cast<int>(p.length) - 1) / 2;
        std::string pattern(p.length, 'O');
        pattern[lead] = 'S';
        return pattern_state(pattern);
      }
      case 2:
        return two_exciton_state(p.phi, static_cast<int>(p.length));
      case 3:
        return defect_triplet_state(static_cast<int>(p.length));
      default:
        return four_exciton_state(p.phi, static_cast<int>(p.length));
    }
  }();

  LatticeSpec spec;
  spec.dims = {2, static_cast<int>(p.length)};
  spec.couplings = {p.g, p.g};
  spec.omega = p.omega;
  spec.statistics = Statistics::Spin;

  const MsdSeries series = msd_evolution(spec, state, p.t_max, p.dt, {}, p.guard);
  const double ballistic_value = 4.0 * p.excitations * p.g * p.g;
  const double tolerance = p.excitations <= 2 ? 1e-3 : 1e-2;
  p.prov.add("center", series.center);
  p.prov.add("ballistic_value", ballistic_value);

  const fs::path csv_path = out / "ladder_ct.csv";
  CsvWriter csv(csv_path.string());
  result.outputs.push_back(csv_path.string());
  csv.comment("mean square displacement and its curvature; curvature rows cover interior times");
  p.prov.echo(csv);
  if (series.boundary_truncated_at >= 0)
    csv.comment("series truncated by the boundary guard at t = " +
                format_full(series.boundary_truncated_at * p.dt));
  csv.columns({"t", "msd", "curvature"});
  for (long i = 0; i < series.curvature.size(); ++i)
    csv.row({series.times(i + 1), series.msd(i + 1), series.curvature(i)});
  csv.close();

  CheckSet checks;
  checks.add("norm conserved to 1e-10", series.evolve.max_norm_drift < 1e-10,
             {{"drift", series.evolve.max_norm_drift}});
  checks.add("energy conserved to 1e-10", series.evolve.max_energy_drift < 1e-10,
             {{"drift", series.evolve.max_energy_drift}});
  const double deviation =
      plateau_max_deviation(series, p.window[0], p.window[1], ballistic_value);
  json details{{"max_deviation", deviation},
               {"plateau_mean", plateau_mean(series, p.window[0], p.window[1])},
               {"ballistic_value", ballistic_value}};
  if (p.expect == "plateau")
    checks.add("curvature stays at 4ng^2 on the window", deviation <= tolerance, details);
  else if (p.expect == "breakdown")
    checks.add("curvature leaves 4ng^2 by more than 0.5", deviation > 0.5, details);
  else
    checks.add("curvature reported (no expectation)", true, details);

  result.passed = checks.all;
  result.summary["checks"] = std::move(checks.checks);
  result.summary["boundary_truncated_at"] = series.boundary_truncated_at;
}

// ------------------------------------------------------------ subspace-check

struct SubspaceParams {
  std::vector<int> lengths, edge_lengths;
  double omega = 0.0, g_rung = 0.0, g_leg = 0.0;
  Provenance prov;
};

SubspaceParams read_subspace_check(const Config& config) {
  SubspaceParams p;
  p.lengths = config.integers("check.lengths", {3, 4, 5});
  p.edge_lengths = config.integers("check.edge_lengths", {3, 4});
  p.omega = config.number("check.omega", 1.0);
  p.g_rung = config.number("check.g_rung", 1.0);
  p.g_leg = config.number("check.g_leg", 1.0);
  config.finish();
  for (int l : p.lengths)
    if (l < 2) bad_key("check.lengths", "a ladder needs at least two rungs");
  for (int l : p.edge_lengths) {
    if (l < 2) bad_key("check.edge_lengths", "a ladder needs at least two rungs");
    if (l > 7) bad_key("check.edge_lengths", "full Fock operators cap the length at 7");
  }
  if (p.lengths.empty()) bad_key("check.lengths", "need at least one length");
  p.prov.add_list("lengths", p.lengths);
  p.prov.add_list("edge_lengths", p.edge_lengths);
  p.prov.add("omega", p.omega);
  p.prov.add("g_rung", p.g_rung);
  p.prov.add("g_leg", p.g_leg);
  return p;
}

void run_subspace_check(RecipeResult& result, const SubspaceParams& p, const fs::path& out) {
  struct Row {
    std::string label;
    int length = 0;
    int excitations = 0;
    bool ok = false;
    int witness = 0;
    int closure = 0;
    double residual = 0.0;
  };
  std::vector<Row> rows;
  CheckSet checks;

  auto ladder_of = [&](int l) { return LadderSpec{l, p.omega, p.g_rung, p.g_leg}; };
  auto sector_h = [&](const LadderSpec& ladder, const SectorBasis& basis) {
    const LatticeSpec lattice = ladder_lattice(ladder);
    std::vector<double> onsite(2 * ladder.length);
    for (std::size_t i = 0; i < onsite.size(); ++i)
      onsite[i] = onsite_energy(lattice, static_cast<long>(i));
    return build_sector_hamiltonian(basis, lattice_bonds(lattice), onsite);
  };

  // Alternating rung patterns are exact eigenstates.
  {
    double worst = 0.0;
    for (int l : p.lengths)
      for (char start : {'S', 'T'}) {
        const SectorState state = pattern_state(alternating_pattern(start, l));
        const auto h = sector_h(ladder_of(l), state.basis);
        const Eigen::VectorXcd image = h * state.amplitudes;
        const std::complex<double> energy = state.amplitudes.dot(image);
        const double residual = (image - energy * state.amplitudes).norm();
        worst = std::max(worst, residual);
        rows.push_back({std::string("eigenstate_") + start, l, l, residual < 1e-12, 0, 1,
                        residual});
      }
    checks.add("alternating patterns are eigenstates (residual < 1e-12)", worst < 1e-12,
               {{"worst", worst}});
  }

  // Doubly occupied insertions pass with witness +1 at every position.
  {
    bool all_ok = true;
    for (int l : p.lengths)
      for (char start : {'S', 'T'})
        for (int pos = 1; pos <= l; ++pos) {
          const SectorState state = insertion_state(start, pos, l);
          const auto check =
              ballistic_subspace_check(state.basis, state.amplitudes, ladder_of(l));
          const bool ok = check.ballistic && check.witness == +1;
          all_ok = all_ok && ok;
          rows.push_back({std::string("insertion_") + start + "_at_" + std::to_string(pos), l,
                          l + 1, ok, check.witness, check.closure_dimension,
                          check.max_residual});
        }
    checks.add("insertion states pass with witness +1", all_ok);
  }

  // The edge jump operators keep images inside checked ballistic subspaces.
  {
    bool all_ok = true;
    for (int l : p.edge_lengths) {
      const auto ops = edge_jump_operators(l);
      std::vector<std::string> sources;
      for (char start : {'S', 'T'}) {
        sources.push_back(alternating_pattern(start, l));
        sources.push_back(alternating_pattern(start, l - 1) + "I");
      }
      for (std::size_t k = 0; k < ops.size(); ++k) {
        // Each operator fires on exactly one of the four source patterns.
        for (const std::string& source : sources) {
          const Eigen::VectorXcd image = ops[k] * embed_full_space(pattern_state(source));
          if (image.norm() < 1e-12) continue;
          const SectorState projected = project_to_sector(image / image.norm(), 2 * l);
          const auto check =
              ballistic_subspace_check(projected.basis, projected.amplitudes, ladder_of(l));
          all_ok = all_ok && check.ballistic;
          rows.push_back({"edge_op_" + std::to_string(k) + "_on_" + source, l,
                          projected.basis.excitations(), check.ballistic, check.witness,
                          check.closure_dimension, check.max_residual});
        }
      }
    }
    checks.add("edge operators map checked states to checked states", all_ok);
  }

  const fs::path csv_path = out / "subspace_checks.csv";
  CsvWriter csv(csv_path.string());
  result.outputs.push_back(csv_path.string());
  csv.comment("per-state ballistic checks; witness 0 marks a vacuous pass (pattern eigenstate)");
  p.prov.echo(csv);
  csv.columns({"case", "length", "excitations", "passed", "witness", "closure_dim", "residual"});
  for (const Row& r : rows)
    csv.row(r.label, {static_cast<double>(r.length), static_cast<double>(r.excitations),
                      r.ok ? 1.0 : 0.0, static_cast<double>(r.witness),
                      static_cast<double>(r.closure), r.residual});
  csv.close();

  result.passed = checks.all;
  result.summary["checks"] = std::move(checks.checks);
}

// ------------------------------------------------------------ oracle-compare

struct OracleParams {
  std::vector<int> fermion_lengths;
  double f_omega = 0.0, f_g = 0.0;
  BathSpec f_baths;
  std::vector<int> n_max_list;
  long b_length = 0;
  double b_omega = 0.0, b_g = 0.0;
  BathSpec b_baths;
  Provenance prov;
};

OracleParams read_oracle_compare(const Config& config) {
  OracleParams p;
  p.fermion_lengths = config.integers("fermion.lengths", {2, 3});
  p.f_omega = config.number("fermion.omega", 1.0);
  p.f_g = config.number("fermion.g", 1.0);
  p.f_baths = read_baths(config, "fermion", BathSpec{1.0, 1.0, 1.0, 0.0});
  p.n_max_list = config.integers("boson.n_max", {8, 12, 16});
  p.b_length = config.integer("boson.length", 2);
  p.b_omega = config.number("boson.omega", 1.0);
  p.b_g = config.number("boson.g", 1.0);
  p.b_baths = read_baths(config, "boson", BathSpec{1.0, 1.0, 0.5, 0.1});
  config.finish();
  for (int l : p.fermion_lengths) {
    if (l < 2) bad_key("fermion.lengths", "need at least two sites");
    if (l > 6) bad_key("fermion.lengths", "dense generators cap the length at 6");
  }
  for (int m : p.n_max_list)
    if (m < 1) bad_key("boson.n_max", "cutoffs must be at least 1");
  if (p.b_length < 2) bad_key("boson.length", "need at least two sites");
  if (p.b_length > 3) bad_key("boson.length", "dense bosonic generators cap the length at 3");
  p.prov.add_list("fermion_lengths", p.fermion_lengths);
  p.prov.add("fermion_omega", p.f_omega);
  p.prov.add("fermion_g", p.f_g);
  echo_baths(p.prov, "fermion_", p.f_baths);
  p.prov.add_list("boson_n_max", p.n_max_list);
  p.prov.add("boson_length", p.b_length);
  p.prov.add("boson_omega", p.b_omega);
  p.prov.add("boson_g", p.b_g);
  echo_baths(p.prov, "boson_", p.b_baths);
  return p;
}

void run_oracle_compare(RecipeResult& result, const OracleParams& p, const fs::path& out) {
  struct Case {
    std::string label;
    int length = 0;
    int n_max = 0;  // 0 marks the fermionic exact cases
    double j_oracle = 0.0;
    double j_closure = 0.0;
    double flux_dev = 0.0;
    double corr_dev = 0.0;
    double max_occ = 0.0;
  };
  std::vector<Case> cases;
  for (int l : p.fermion_lengths)
    cases.push_back({"fermion_L" + std::to_string(l), l, 0, 0, 0, 0, 0, 0});
  for (int n_max : p.n_max_list)
    cases.push_back({"boson_nmax" + std::to_string(n_max), static_cast<int>(p.b_length),
                     n_max, 0, 0, 0, 0, 0});

  parallel_for(static_cast<long>(cases.size()), [&](long i) {
    Case& c = cases[i];
    const bool fermi = c.n_max == 0;
    LatticeSpec spec;
    spec.dims = {c.length};
    spec.couplings = {fermi ? p.f_g : p.b_g};
    spec.omega = fermi ? p.f_omega : p.b_omega;
    spec.statistics = fermi ? Statistics::Fermion : Statistics::Boson;
    const BathSpec& baths = fermi ? p.f_baths : p.b_baths;

    const Eigen::MatrixXd h = build_hopping_matrix(spec);
    const DriftSpec drift = build_drift(h, spec, baths);
    const Eigen::MatrixXcd closure = steady_state(drift);
    c.j_closure = flux_from_state(closure, h, drift).j_in;
    c.max_occ = closure.diagonal().real().maxCoeff();

    const LiouvilleSystem system = build_liouvillian(spec, baths, c.n_max, 200000);
    const Eigen::MatrixXcd rho = oracle_steady_state(system);
    c.j_oracle = oracle_flux(system, rho).j_in;
    c.flux_dev = std::abs(c.j_oracle - c.j_closure);
    c.corr_dev = (oracle_correlations(system, rho) - closure).cwiseAbs().maxCoeff();
  });

  const fs::path csv_path = out / "oracle_compare.csv";
  CsvWriter csv(csv_path.string());
  result.outputs.push_back(csv_path.string());
  csv.comment("dense master-equation steady states against the two-point closure");
  p.prov.echo(csv);
  csv.columns({"case", "length", "n_max", "j_oracle", "j_closure", "flux_dev", "corr_dev"});
  for (const Case& c : cases)
    csv.row(c.label, {static_cast<double>(c.length), static_cast<double>(c.n_max), c.j_oracle,
                      c.j_closure, c.flux_dev, c.corr_dev});
  csv.close();

  CheckSet checks;
  double worst_fermi = 0.0;
  for (const Case& c : cases)
    if (c.n_max == 0) worst_fermi = std::max(worst_fermi, c.flux_dev / std::abs(c.j_closure));
  checks.add("fermionic fluxes agree to 1e-8 relative", worst_fermi <= 1e-8,
             {{"worst", worst_fermi}});

  std::vector<const Case*> bosons;
  for (const Case& c : cases)
    if (c.n_max > 0) bosons.push_back(&c);
  std::sort(bosons.begin(), bosons.end(),
            [](const Case* a, const Case* b) { return a->n_max < b->n_max; });
  bool monotone = !bosons.empty();
  for (std::size_t k = 1; k < bosons.size(); ++k)
    monotone = monotone && bosons[k]->flux_dev < bosons[k - 1]->flux_dev;
  checks.add("bosonic truncation error shrinks monotonically", monotone);
  if (!bosons.empty()) {
    double occ = 0.0;
    for (const Case* c : bosons) occ = std::max(occ, c->max_occ);
    checks.add("bosonic occupations stay at or below 0.5", occ <= 0.5, {{"max", occ}});
    const Case* at12 = nullptr;
    for (const Case* c : bosons)
      if (c->n_max == 12) at12 = c;
    if (at12)
      checks.add("bosonic flux and correlations agree to 1e-4 at n_max = 12",
                 at12->flux_dev <= 1e-4 && at12->corr_dev <= 1e-4,
                 {{"flux_dev", at12->flux_dev}, {"corr_dev", at12->corr_dev}});
  }

  result.passed = checks.all;
  result.summary["checks"] = std::move(checks.checks);
}

void check_known(const std::string& name) {
  const auto& names = recipe_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return;
  std::string listing;
  for (const auto& n : names) listing += (listing.empty() ? "" : ", ") + n;
  throw std::runtime_error("unknown recipe '" + name + "' (have: " + listing + ")");
}

}  // namespace

const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> names{
      "figure2",       "size-scan",      "mode-table",     "jw-verify",
      "ladder-ctplot", "subspace-check", "oracle-compare"};
  return names;
}

nlohmann::json validate_config(const std::string& name, const Config& config) {
  check_known(name);
  json normalized;
  if (name == "figure2")
    normalized = read_figure2(config).prov.as_json();
  else if (name == "size-scan")
    normalized = read_size_scan(config).prov.as_json();
  else if (name == "mode-table")
    normalized = read_mode_table(config).prov.as_json();
  else if (name == "jw-verify")
    normalized = read_jw_verify(config).prov.as_json();
  else if (name == "ladder-ctplot")
    normalized = read_ladder_ctplot(config).prov.as_json();
  else if (name == "subspace-check")
    normalized = read_subspace_check(config).prov.as_json();
  else
    normalized = read_oracle_compare(config).prov.as_json();
  normalized["recipe"] = name;
  return normalized;
}

RecipeResult run_recipe(const std::string& name, const Config& config,
                        const std::string& out_dir, std::uint64_t seed) {
  check_known(name);

  RecipeResult result;
  result.recipe = name;
  result.summary["recipe"] = name;
  result.summary["seed"] = seed;
  try {
    // Parameters resolve before any file opens, so a config mistake never
    // leaves output behind.
    const fs::path out(out_dir);
    if (name == "figure2") {
      const Figure2Params p = read_figure2(config);
      fs::create_directories(out);
      result.summary["parameters"] = p.prov.as_json();
      run_figure2(result, p, out);
    } else if (name == "size-scan") {
      SizeScanParams p = read_size_scan(config);
      fs::create_directories(out);
      run_size_scan(result, p, out, seed);
      result.summary["parameters"] = p.prov.as_json();
    } else if (name == "mode-table") {
      ModeTableParams p = read_mode_table(config);
      fs::create_directories(out);
      run_mode_table(result, p, out, seed);
      result.summary["parameters"] = p.prov.as_json();
    } else if (name == "jw-verify") {
      const JwVerifyParams p = read_jw_verify(config);
      fs::create_directories(out);
      result.summary["parameters"] = p.prov.as_json();
      run_jw_verify(result, p, out);
    } else if (name == "ladder-ctplot") {
      LadderCtParams p = read_ladder_ctplot(config);
      fs::create_directories(out);
      run_ladder_ctplot(result, p, out);
      result.summary["parameters"] = p.prov.as_json();
    } else if (name == "subspace-check") {
      const SubspaceParams p = read_subspace_check(config);
      fs::create_directories(out);
      result.summary["parameters"] = p.prov.as_json();
      run_subspace_check(result, p, out);
    } else {
      const OracleParams p = read_oracle_compare(config);
      fs::create_directories(out);
      result.summary["parameters"] = p.prov.as_json();
      run_oracle_compare(result, p, out);
    }

    result.summary["passed"] = result.passed;
    const fs::path summary_path = out / "summary.json";
    result.outputs.push_back(summary_path.string());
    result.summary["outputs"] = result.outputs;
    {
      std::ofstream stream(summary_path);
      if (!stream) throw std::runtime_error("cannot write " + summary_path.string());
      stream << result.summary.dump(2) << "\n";
      if (!stream) throw std::runtime_error("failed writing " + summary_path.string());
    }
  } catch (...) {
    for (const std::string& file : result.outputs) {
      std::error_code ec;
      fs::remove(file, ec);
    }
    throw;
  }
  return result;
}

}  // namespace latticeflux
