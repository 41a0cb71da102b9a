#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "latticeflux/strings.hpp"

using namespace latticeflux;
using namespace std::complex_literals;

namespace {

Eigen::MatrixXcd dense(const PauliOperator& op, int n) {
  return Eigen::MatrixXcd(matrix_representation(op, n));
}

Eigen::MatrixXcd dense(const FermionOperator& op, int n,
                       const std::vector<int>& ordering = {}) {
  return Eigen::MatrixXcd(matrix_representation(op, n, ordering));
}

FermionOperator f_dag(int site) {
  return fermi_term(1.0, {{site, FermiKind::Create}});
}

FermionOperator f(int site) {
  return fermi_term(1.0, {{site, FermiKind::Annihilate}});
}

}  // namespace

TEST_CASE("single-site images follow the MSB basis convention") {
  const Eigen::MatrixXcd number = dense(
      fermi_product(f_dag(1), f(1)), 2);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(2, 2) = 1.0;
  expected(3, 3) = 1.0;
  CHECK((number - expected).norm() <= 1e-15);

  const Eigen::MatrixXcd z2 = dense(pauli_term(1.0, {{2, PauliKind::Z}}), 2);
  Eigen::MatrixXcd zexp = Eigen::MatrixXcd::Zero(4, 4);
  zexp.diagonal() << 1.0, -1.0, 1.0, -1.0;
  CHECK((z2 - zexp).norm() <= 1e-15);
}

TEST_CASE("canonical anticommutators hold as matrices") {
  const int n = 3;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const Eigen::MatrixXcd ci = dense(f_dag(i), n);
      const Eigen::MatrixXcd aj = dense(f(j), n);
      const Eigen::MatrixXcd anti = ci * aj + aj * ci;
      Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(8, 8);
      if (i == j) expected = Eigen::MatrixXcd::Identity(8, 8);
      CHECK((anti - expected).norm() <= 1e-14);

      const Eigen::MatrixXcd cj = dense(f_dag(j), n);
      CHECK((ci * cj + cj * ci).norm() <= 1e-14);
    }
}

TEST_CASE("algebraic operations commute with the matrix representation") {
  const int n = 3;
  const FermionOperator a =
      fermi_add(fermi_term(0.5 + 0.25i, {{1, FermiKind::Create}, {2, FermiKind::Annihilate}}),
                fermi_term(1.5, {{3, FermiKind::Number}}));
  const FermionOperator b =
      fermi_add(fermi_term(-1.0i, {{2, FermiKind::Create}}),
                fermi_term(0.7, {{1, FermiKind::Annihilate}, {3, FermiKind::Create}}));

  CHECK((dense(fermi_product(a, b), n) - dense(a, n) * dense(b, n)).norm() <= 1e-13);
  CHECK((dense(fermi_add(a, b), n) - (dense(a, n) + dense(b, n))).norm() <= 1e-13);
  CHECK((dense(fermi_adjoint(a), n) - dense(a, n).adjoint()).norm() <= 1e-13);

  const PauliOperator p =
      pauli_add(pauli_term(0.3, {{1, PauliKind::Plus}, {2, PauliKind::Z}}),
                pauli_term(2.0i, {{3, PauliKind::Minus}}));
  const PauliOperator q = pauli_term(1.0, {{1, PauliKind::Minus}, {3, PauliKind::Plus}});
  CHECK((dense(pauli_product(p, q), n) - dense(p, n) * dense(q, n)).norm() <= 1e-13);
  CHECK((dense(pauli_adjoint(p), n) - dense(p, n).adjoint()).norm() <= 1e-13);
}

TEST_CASE("normal ordering collapses same-site pairs exactly") {
  // f f† written backwards must canonicalize to (1 − N)/2.
  FermionOperator raw;
  FermionString s;
  s.coeff = 2.0;
  s.factors = {{1, FermiKind::Annihilate}, {1, FermiKind::Create}};
  raw.push_back(s);
  const FermionOperator canonical = fermi_simplify(raw);
  const FermionOperator expected =
      fermi_add(fermi_term(1.0, {}), fermi_term(-1.0, {{1, FermiKind::Number}}));
  CHECK(to_text(canonical) == to_text(expected));

  // A doubled annihilator is exactly zero.
  FermionString twice;
  twice.factors = {{2, FermiKind::Annihilate}, {2, FermiKind::Annihilate}};
  CHECK(fermi_simplify({twice}).empty());
}

TEST_CASE("cross-site reordering carries the fermionic sign") {
  FermionOperator swapped;
  FermionString s;
  s.factors = {{2, FermiKind::Create}, {1, FermiKind::Create}};
  swapped.push_back(s);
  const FermionOperator canonical = fermi_simplify(swapped);
  REQUIRE(canonical.size() == 1);
  CHECK(canonical[0].coeff == -1.0);
  CHECK(canonical[0].factors ==
        std::vector<FermiFactor>{{1, FermiKind::Create}, {2, FermiKind::Create}});
}

TEST_CASE("string transform matches its defining identity") {
  const int n = 4;
  for (int site = 1; site <= n; ++site) {
    const FermionOperator image =
        jw_transform(pauli_term(1.0, {{site, PauliKind::Plus}}));
    FermionOperator expected = f_dag(site);
    for (int j = 1; j < site; ++j)
      expected = fermi_product(fermi_term(-1.0, {{j, FermiKind::Number}}), expected);
    CHECK((dense(image, n) - dense(fermi_simplify(expected), n)).norm() <= 1e-14);
  }
}

TEST_CASE("transform and inverse are exact round trips") {
  const PauliOperator hop =
      pauli_add(pauli_term(0.7, {{1, PauliKind::Plus}, {3, PauliKind::Minus}}),
                pauli_term(0.7, {{3, PauliKind::Plus}, {1, PauliKind::Minus}}));
  const PauliOperator back = jw_inverse(jw_transform(hop));
  CHECK(to_text(back) == to_text(pauli_simplify(hop)));

  const FermionOperator quad =
      fermi_add(fermi_product(f_dag(1), f(2)), fermi_product(f_dag(2), f(1)));
  const FermionOperator around = jw_transform(jw_inverse(quad));
  CHECK(to_text(around) == to_text(fermi_simplify(quad)));
}

TEST_CASE("transform preserves the matrix image under any ordering") {
  const int n = 4;
  const PauliOperator op =
      pauli_add(pauli_term(1.0, {{1, PauliKind::Plus}, {4, PauliKind::Minus}}),
                pauli_term(0.5, {{2, PauliKind::Z}, {3, PauliKind::Plus}}));
  const std::vector<int> snake{1, 3, 2, 4};
  SUBCASE("identity ordering") {
    CHECK((dense(jw_transform(op), n) - dense(op, n)).norm() <= 1e-13);
  }
  SUBCASE("permuted string path") {
    CHECK((dense(jw_transform(op, snake), n, snake) - dense(op, n)).norm() <= 1e-13);
  }
}

TEST_CASE("canonical text is stable under term order") {
  const FermionOperator ab = fermi_add(f_dag(1), f(2));
  const FermionOperator ba = fermi_add(f(2), f_dag(1));
  CHECK(to_text(ab) == to_text(ba));
  CHECK(to_text(fermi_simplify(fermi_add(ab, fermi_term(-1.0, {{1, FermiKind::Create}})))) ==
        to_text(f(2)));
}
