#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <stdexcept>

#include <Eigen/Dense>

#include "latticeflux/sector.hpp"

using namespace latticeflux;

TEST_CASE("basis holds every configuration of the sector exactly once") {
  const SectorBasis basis(6, 3);
  CHECK(basis.dimension() == 20);
  CHECK(basis.sites() == 6);
  CHECK(basis.excitations() == 3);
  for (long i = 0; i < basis.dimension(); ++i) {
    CHECK(std::popcount(basis.mask(i)) == 3);
    if (i > 0) CHECK(basis.mask(i) > basis.mask(i - 1));
    CHECK(basis.index_of(basis.mask(i)) == i);
  }
  CHECK(basis.index_of(0b111000) >= 0);
  CHECK(basis.index_of(0b110000) == -1);
}

TEST_CASE("empty and full sectors are one-dimensional") {
  const SectorBasis empty(5, 0);
  CHECK(empty.dimension() == 1);
  CHECK(empty.mask(0) == 0);
  const SectorBasis full(5, 5);
  CHECK(full.dimension() == 1);
  CHECK(full.mask(0) == 0b11111);
}

TEST_CASE("site bits put site 1 in the most significant position") {
  const SectorBasis basis(4, 1);
  CHECK(SectorBasis::site_bit(1, 4) == 0b1000);
  CHECK(SectorBasis::site_bit(4, 4) == 0b0001);
  CHECK(basis.occupied(0b1000, 1));
  CHECK_FALSE(basis.occupied(0b1000, 2));
  const auto sites = basis.occupied_sites(0b1000);
  REQUIRE(sites.size() == 1);
  CHECK(sites[0] == 1);
}

TEST_CASE("one excitation on the full 64-site mask width") {
  const SectorBasis basis(64, 1);
  CHECK(basis.dimension() == 64);
  CHECK(basis.mask(63) == (std::uint64_t{1} << 63));
  CHECK(basis.index_of(std::uint64_t{1} << 63) == 63);
}

TEST_CASE("budget bounds the sector dimension") {
  CHECK_THROWS_AS(SectorBasis(40, 20, 1000), std::invalid_argument);
  CHECK_NOTHROW(SectorBasis(10, 5, 252));
  CHECK_THROWS_AS(SectorBasis(10, 5, 251), std::invalid_argument);
  CHECK_THROWS_AS(SectorBasis(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(SectorBasis(65, 1), std::invalid_argument);
  CHECK_THROWS_AS(SectorBasis(4, 5), std::invalid_argument);
}

TEST_CASE("one-excitation sector of a spin lattice is its adjacency matrix") {
  LatticeSpec spec;
  spec.dims = {2, 4};
  spec.couplings = {1.3, 0.7};
  spec.omega = 0.9;
  spec.statistics = Statistics::Spin;
  const Eigen::MatrixXd h = Eigen::MatrixXd(build_spin_sector_hamiltonian(spec, 1));

  // Masks of single occupations descend in site order, so site s sits at
  // basis position n_sites - s.
  const SectorBasis basis(8, 1);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(8, 8);
  for (int i = 0; i < 8; ++i) expected(i, i) = 0.9;
  const auto bond = [&](int a, int b, double g) {
    const long ia = basis.index_of(SectorBasis::site_bit(a, 8));
    const long ib = basis.index_of(SectorBasis::site_bit(b, 8));
    expected(ia, ib) = expected(ib, ia) = g;
  };
  for (int r = 1; r <= 4; ++r) bond(2 * r - 1, 2 * r, 1.3);
  for (int l = 1; l <= 6; ++l) bond(l, l + 2, 0.7);
  CHECK((h - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sector Hamiltonian is symmetric and conserves excitation number") {
  LatticeSpec spec;
  spec.dims = {2, 5};
  spec.couplings = {1.0, 1.0};
  spec.statistics = Statistics::Spin;
  const auto h = build_spin_sector_hamiltonian(spec, 3);
  const Eigen::MatrixXd dense(h);
  CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const SectorBasis basis(10, 3);
  CHECK(h.rows() == basis.dimension());
  // Off-diagonal entries connect configurations one hop apart.
  for (long a = 0; a < dense.rows(); ++a)
    for (long b = a + 1; b < dense.cols(); ++b)
      if (dense(a, b) != 0.0) CHECK(std::popcount(basis.mask(a) ^ basis.mask(b)) == 2);
}

TEST_CASE("diagonal sums the on-site energies of the occupied sites") {
  LatticeSpec spec;
  spec.dims = {2, 3};
  spec.couplings = {1.0, 1.0};
  spec.statistics = Statistics::Spin;
  spec.omega = 0.7;
  spec.omega_profile = {0.1, 0.2, 0.4};
  const Eigen::MatrixXd h = Eigen::MatrixXd(build_spin_sector_hamiltonian(spec, 2));
  const SectorBasis basis(6, 2);
  for (long i = 0; i < basis.dimension(); ++i) {
    double expected = 0.0;
    for (int site : basis.occupied_sites(basis.mask(i)))
      expected += spec.omega_profile[(site - 1) / 2];
    CHECK(h(i, i) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("explicit bond-list builder agrees with the lattice builder") {
  LatticeSpec spec;
  spec.dims = {2, 4};
  spec.couplings = {0.8, 1.1};
  spec.statistics = Statistics::Spin;
  const SectorBasis basis(8, 2);
  std::vector<double> onsite(8, spec.omega);
  const Eigen::MatrixXd a = Eigen::MatrixXd(build_spin_sector_hamiltonian(spec, 2));
  const Eigen::MatrixXd b =
      Eigen::MatrixXd(build_sector_hamiltonian(basis, lattice_bonds(spec), onsite));
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}
