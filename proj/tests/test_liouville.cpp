#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "latticeflux/correlation.hpp"
#include "latticeflux/lattice.hpp"
#include "latticeflux/liouville.hpp"

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

TEST_CASE("two-site fermion steady state matches the exact values") {
  const LiouvilleSystem system = build_liouvillian(chain(2), hot_cold());
  CHECK(system.hilbert_dim == 4);
  const Eigen::MatrixXcd rho = oracle_steady_state(system);

  CHECK(std::abs(rho.trace() - 1.0) <= 1e-13);
  CHECK((rho - rho.adjoint()).norm() <= 1e-13);
  CHECK(generator_residual(system, rho) <= 1e-12);

  const Eigen::MatrixXcd c = oracle_correlations(system, rho);
  CHECK(std::abs(c(0, 0) - 2.0 / 7.0) <= 1e-12);
  CHECK(std::abs(c(1, 1) - 1.0 / 7.0) <= 1e-12);
  CHECK(std::abs(c(0, 1) - (-1.0i / 14.0)) <= 1e-12);

  const FluxReport flux = oracle_flux(system, rho);
  CHECK(flux.j_in == doctest::Approx(1.0 / 7.0).epsilon(1e-11));
  CHECK(flux.residual <= 1e-12);

  const Eigen::VectorXd occ = oracle_occupations(system, rho);
  REQUIRE(occ.size() == 2);
  CHECK(occ(0) == doctest::Approx(2.0 / 7.0).epsilon(1e-11));
  CHECK(occ(1) == doctest::Approx(1.0 / 7.0).epsilon(1e-11));
}

TEST_CASE("three-site fermion oracle agrees with the two-point closure") {
  LatticeSpec spec = chain(3);
  spec.omega = 1.3;
  spec.couplings = {0.7};
  BathSpec baths;
  baths.rate_in = 0.4;
  baths.rate_out = 0.9;
  baths.occ_in = 1.6;
  baths.occ_out = 0.2;

  const LiouvilleSystem system = build_liouvillian(spec, baths);
  const Eigen::MatrixXcd rho = oracle_steady_state(system);
  const Eigen::MatrixXcd c_oracle = oracle_correlations(system, rho);

  const Eigen::MatrixXd h = build_hopping_matrix(spec);
  const DriftSpec drift = build_drift(h, spec, baths);
  const Eigen::MatrixXcd c_closure = steady_state(drift);

  CHECK((c_oracle - c_closure).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(oracle_flux(system, rho).j_in == doctest::Approx(3.0 / 28.0).epsilon(1e-10));
}

TEST_CASE("bosonic truncation error falls with the occupation cutoff") {
  const LatticeSpec spec = chain(2, Statistics::Boson);
  const BathSpec baths = hot_cold();
  // Frozen two-site fluxes at cutoffs 4, 8, 12 converging to the exact 0.4.
  const std::vector<int> cutoffs{4, 8, 12};
  const std::vector<double> expected{0.363749527404, 0.398425683792, 0.399946780685};
  std::vector<double> devs;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    const LiouvilleSystem system =
        build_liouvillian(spec, baths, cutoffs[i], 200000);
    CHECK(system.hilbert_dim == (cutoffs[i] + 1) * (cutoffs[i] + 1));
    const Eigen::MatrixXcd rho = oracle_steady_state(system);
    const FluxReport flux = oracle_flux(system, rho);
    CHECK(flux.j_in == doctest::Approx(expected[i]).epsilon(1e-9));
    devs.push_back(std::abs(flux.j_in - 0.4));
  }
  CHECK(devs[1] < devs[0]);
  CHECK(devs[2] < devs[1]);
}

TEST_CASE("propagation preserves trace and relaxes toward the steady state") {
  const LiouvilleSystem system = build_liouvillian(chain(2), hot_cold());
  const Eigen::MatrixXcd target = oracle_steady_state(system);

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(0, 0) = 1.0;  // vacuum
  const Eigen::MatrixXcd late = propagate(system, rho, 40.0, 0.05);
  CHECK(std::abs(late.trace() - 1.0) <= 1e-10);
  CHECK((late - target).cwiseAbs().maxCoeff() <= 1e-8);

  // A quarter of the span at the same step stays strictly farther away.
  const Eigen::MatrixXcd early = propagate(system, rho, 1.0, 0.05);
  CHECK((early - target).cwiseAbs().maxCoeff() >
        (late - target).cwiseAbs().maxCoeff());
}

TEST_CASE("generator matches the dissipator decomposition") {
  const LiouvilleSystem system = build_liouvillian(chain(2), hot_cold());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(0, 0) = 0.5;
  rho(3, 3) = 0.5;
  rho(0, 3) = 0.25i;
  rho(3, 0) = -0.25i;

  const Eigen::MatrixXcd h = Eigen::MatrixXcd(system.hamiltonian);
  Eigen::MatrixXcd expected = -1.0i * (h * rho - rho * h);
  for (const auto& jump : system.jumps_in) expected += dissipator(jump, rho);
  for (const auto& jump : system.jumps_out) expected += dissipator(jump, rho);
  CHECK((apply_generator(system, rho) - expected).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("dimension cap and spin statistics are rejected") {
  CHECK_THROWS_AS(build_liouvillian(chain(13), hot_cold()), std::invalid_argument);
  CHECK_THROWS_AS(build_liouvillian(chain(2, Statistics::Spin), hot_cold()),
                  std::invalid_argument);
}

TEST_CASE("zero-occupation baths drop their raising jumps") {
  const LiouvilleSystem system = build_liouvillian(chain(2), hot_cold());
  // Hot side carries lowering + raising, cold side only lowering.
  CHECK(system.jumps_in.size() == 2);
  CHECK(system.jumps_out.size() == 1);
}
