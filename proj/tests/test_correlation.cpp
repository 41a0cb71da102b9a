#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "latticeflux/analytic_flux.hpp"
#include "latticeflux/correlation.hpp"
#include "latticeflux/lattice.hpp"

using namespace latticeflux;
using namespace std::complex_literals;

namespace {

LatticeSpec chain(int length, Statistics stats = Statistics::Fermion) {
  LatticeSpec spec;
  spec.dims = {length};
  spec.couplings = {1.0};
  spec.omega = 1.0;
  spec.statistics = stats;
  return spec;
}

BathSpec hot_cold() {
  BathSpec b;
  b.occ_in = 1.0;
  b.occ_out = 0.0;
  return b;
}

}  // namespace

TEST_CASE("two-site fermion chain reaches its exact stationary state") {
  const LatticeSpec spec = chain(2);
  const BathSpec baths = hot_cold();
  const Eigen::MatrixXd h = build_hopping_matrix(spec);
  const DriftSpec drift = build_drift(h, spec, baths);
  const Eigen::MatrixXcd c = steady_state(drift);

  CHECK(steady_state_residual(drift, c) <= 1e-13);
  CHECK(std::abs(c(0, 0) - 2.0 / 7.0) <= 1e-13);
  CHECK(std::abs(c(1, 1) - 1.0 / 7.0) <= 1e-13);
  CHECK(std::abs(c(0, 1) - (-1.0i / 14.0)) <= 1e-13);
  CHECK(std::abs(c(1, 0) - (1.0i / 14.0)) <= 1e-13);

  const FluxReport flux = flux_from_state(c, h, drift);
  CHECK(flux.j_in == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(flux.j_out == doctest::Approx(-1.0 / 7.0).epsilon(1e-12));
  CHECK(flux.residual <= 1e-13);

  const auto currents = bond_energy_currents(c, 1.0, 1.0);
  REQUIRE(currents.size() == 1);
  CHECK(currents[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("the flux does not change with chain length") {
  const BathSpec baths = hot_cold();
  for (int length : {3, 5, 9}) {
    const LatticeSpec spec = chain(length);
    const Eigen::MatrixXd h = build_hopping_matrix(spec);
    const DriftSpec drift = build_drift(h, spec, baths);
    const Eigen::MatrixXcd c = steady_state(drift);
    const FluxReport flux = flux_from_state(c, h, drift);
    CHECK(flux.j_in == doctest::Approx(1.0 / 7.0).epsilon(1e-11));

    const auto currents = bond_energy_currents(c, 1.0, 1.0);
    REQUIRE(static_cast<int>(currents.size()) == length - 1);
    for (double j : currents) CHECK(j == doctest::Approx(1.0 / 7.0).epsilon(1e-11));
  }
}

TEST_CASE("mixed-parameter chain agrees with the analytic expression") {
  LatticeSpec spec = chain(3);
  spec.omega = 1.3;
  spec.couplings = {0.7};
  BathSpec baths;
  baths.rate_in = 0.4;
  baths.rate_out = 0.9;
  baths.occ_in = 1.6;
  baths.occ_out = 0.2;
  const Eigen::MatrixXd h = build_hopping_matrix(spec);
  const DriftSpec drift = build_drift(h, spec, baths);
  const Eigen::MatrixXcd c = steady_state(drift);
  const FluxReport flux = flux_from_state(c, h, drift);
  CHECK(flux.j_in == doctest::Approx(3.0 / 28.0).epsilon(1e-12));
  CHECK(flux.j_in ==
        doctest::Approx(fermion_chain_flux(1.3, 0.7, baths)).epsilon(1e-12));
}

TEST_CASE("bosonic chain keeps the bare rates") {
  const LatticeSpec spec = chain(2, Statistics::Boson);
  BathSpec baths;
  baths.occ_in = 0.5;
  baths.occ_out = 0.1;
  const Eigen::MatrixXd h = build_hopping_matrix(spec);
  const DriftSpec drift = build_drift(h, spec, baths);
  const Eigen::MatrixXcd c = steady_state(drift);
  const FluxReport flux = flux_from_state(c, h, drift);
  // J = 4g²Γ²(n_1 − n_2)·ω / [2Γ(4g² + Γ²)] = 0.16, and the diagonal follows
  // from the bath balance C_bb = n_b ∓ J/(ωΓ).
  CHECK(flux.j_in == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(std::abs(c(0, 0) - 0.34) <= 1e-12);
  CHECK(std::abs(c(1, 1) - 0.26) <= 1e-12);
}

TEST_CASE("stationarity identities hold along a driven fermion chain") {
  LatticeSpec spec = chain(5);
  spec.omega = 1.3;
  spec.couplings = {0.7};
  BathSpec baths;
  baths.rate_in = 0.4;
  baths.rate_out = 0.9;
  baths.occ_in = 1.6;
  baths.occ_out = 0.2;
  const Eigen::MatrixXd h = build_hopping_matrix(spec);
  const DriftSpec drift = build_drift(h, spec, baths);
  const Eigen::MatrixXcd c = steady_state(drift);
  const ChainClosureReport report = chain_closure_residuals(c, spec, baths);
  CHECK(report.boundary_in <= 1e-12);
  CHECK(report.boundary_out <= 1e-12);
  CHECK(report.coherence_re_spread <= 1e-12);
  CHECK(report.coherence_im_spread <= 1e-12);
  CHECK(report.coherence_sum <= 1e-12);
}

TEST_CASE("bath layout covers every transverse site of both boundary layers") {
  LatticeSpec spec;
  spec.dims = {3, 8};
  spec.couplings = {0.6, 0.9};
  spec.omega = 1.4;
  BathSpec baths;
  baths.rate_in = 0.3;
  baths.rate_out = 0.7;
  baths.occ_in = 1.2;
  baths.occ_out = 0.1;
  const Eigen::MatrixXd h = build_hopping_matrix(spec);
  const DriftSpec drift = build_drift(h, spec, baths);
  CHECK(drift.sites_in == layer_sites(spec, 1));
  CHECK(drift.sites_out == layer_sites(spec, 8));

  const Eigen::MatrixXcd c = steady_state(drift);
  const FluxReport flux = flux_from_state(c, h, drift);
  CHECK(flux.j_in == doctest::Approx(0.412523385679).epsilon(1e-10));
  CHECK(flux.j_in ==
        doctest::Approx(lattice_total_flux(spec, baths).total).epsilon(1e-10));
}

TEST_CASE("an undamped drift is rejected as singular") {
  Eigen::MatrixXd h(2, 2);
  h << 1.0, 1.0, 1.0, 1.0;
  DriftSpec drift;
  drift.drift = -1.0i * h;  // no dissipation: spectrum on the imaginary axis
  drift.injection = Eigen::VectorXd::Zero(2);
  drift.rate = Eigen::VectorXd::Zero(2);
  drift.target = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(steady_state(drift), std::runtime_error);
}

TEST_CASE("size scans are flat for uniform chains and spread under disorder") {
  LatticeSpec spec = chain(2);
  BathSpec baths;
  baths.rate_in = 0.5;
  baths.rate_out = 0.8;
  baths.occ_in = 1.1;
  baths.occ_out = 0.3;
  const std::vector<int> lengths{2, 5, 9, 13};

  const auto uniform = size_scan(spec, baths, lengths);
  REQUIRE(uniform.size() == lengths.size());
  const double reference = fermion_chain_flux(1.0, 1.0, baths);
  for (std::size_t i = 0; i < uniform.size(); ++i) {
    CHECK(uniform[i].length == lengths[i]);
    CHECK(uniform[i].residual <= 1e-12);
    CHECK(std::abs(uniform[i].flux - reference) <= 1e-10 * std::abs(reference));
  }

  const auto disordered = size_scan(spec, baths, lengths, 0.5, 11);
  double lo = disordered[0].flux;
  double hi = disordered[0].flux;
  for (const auto& row : disordered) {
    lo = std::min(lo, row.flux);
    hi = std::max(hi, row.flux);
    CHECK(row.residual <= 1e-12);
  }
  CHECK((hi - lo) / std::abs(reference) > 1e-3);

  const auto replay = size_scan(spec, baths, lengths, 0.5, 11);
  for (std::size_t i = 0; i < replay.size(); ++i)
    CHECK(replay[i].flux == disordered[i].flux);
}
