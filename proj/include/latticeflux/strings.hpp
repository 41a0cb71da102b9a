#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Sparse>

namespace latticeflux {

/**
 * Single-site spin factors. Sites are two-level, basis (empty, excited);
 * sigma^+ excites, sigma^- de-excites. Z is the parity factor, +1 on an
 * empty site and -1 on an excited one. With this orientation the string
 * identity f_i† = sigma_i^+ Π_{j<i} Z_j holds without extra signs, and
 * the number factor N_i = f_i†f_i − f_if_i† (eigenvalues +1 occupied,
 * −1 empty) is the image of −Z_i.
 */
enum class PauliKind { Plus, Minus, Z };

/** Product of single-site spin factors times a coefficient; sites absent
 * from the map act as identity. Factors on distinct sites commute, so the
 * map order is the product order.
 */
struct PauliString {
  std::complex<double> coeff{1.0, 0.0};
  std::map<int, PauliKind> factors;
};

using PauliOperator = std::vector<PauliString>;

enum class FermiKind { Create, Annihilate, Number };

struct FermiFactor {
  int site = 0;
  FermiKind kind = FermiKind::Create;
  friend auto operator<=>(const FermiFactor&, const FermiFactor&) = default;
};

/**
 * Product of fermionic factors times a coefficient, in canonical form:
 * at most one factor per site, sites ascending, the written order being
 * the product order. Reordering across sites is exact (f-type factors
 * anticommute, Number factors commute), and same-site pairs collapse
 * through f†f = (1+N)/2, ff† = (1−N)/2, f†N = −f†, and so on, so the
 * canonical form of an operator is unique and term lists compare as
 * multisets.
 */
struct FermionString {
  std::complex<double> coeff{1.0, 0.0};
  std::vector<FermiFactor> factors;
};

using FermionOperator = std::vector<FermionString>;

// Merge identical factor patterns and drop exactly-cancelled terms. The
// fermionic version also restores canonical form on raw factor lists, so
// it doubles as the normal-ordering entry point.
PauliOperator pauli_simplify(const PauliOperator& op);
FermionOperator fermi_simplify(const FermionOperator& op);

PauliOperator pauli_product(const PauliOperator& a, const PauliOperator& b);
FermionOperator fermi_product(const FermionOperator& a, const FermionOperator& b);

PauliOperator pauli_adjoint(const PauliOperator& op);
FermionOperator fermi_adjoint(const FermionOperator& op);

PauliOperator pauli_add(const PauliOperator& a, const PauliOperator& b);
FermionOperator fermi_add(const FermionOperator& a, const FermionOperator& b);

// Convenience single-term builders.
PauliOperator pauli_term(std::complex<double> coeff, std::vector<std::pair<int, PauliKind>> factors);
FermionOperator fermi_term(std::complex<double> coeff, std::vector<FermiFactor> factors);

/**
 * Rewrites a spin operator as a fermionic one through the string map
 * sigma_s^+ = f_s† Π_{j before s} (−N_j). `ordering`, when non-empty, is
 * the permutation of 1..M giving the site at each string position;
 * "before" means earlier in that ordering. Empty means identity, which
 * for the two-leg ladder is the snake path l = l_1 + 2(l_2 − 1). The
 * identity is exact: round-tripping through jw_inverse reproduces the
 * input canonically.
 */
FermionOperator jw_transform(const PauliOperator& op, const std::vector<int>& ordering = {});

PauliOperator jw_inverse(const FermionOperator& op, const std::vector<int>& ordering = {});

/**
 * Exact sparse matrix on the 2^n_sites space. Basis index of a
 * configuration is Σ_{occupied i} 2^(n_sites − i): site 1 is the most
 * significant bit. Fermionic operators are represented through their spin
 * image under the same ordering, so {f_1†f_1} on two sites is
 * diag(0, 0, 1, 1). n_sites is capped at 14.
 */
Eigen::SparseMatrix<std::complex<double>> matrix_representation(const PauliOperator& op,
                                                                int n_sites);
Eigen::SparseMatrix<std::complex<double>> matrix_representation(const FermionOperator& op,
                                                                int n_sites,
                                                                const std::vector<int>& ordering = {});

// Canonical text form, one term per line, factors site-ascending, terms
// sorted; equal operators produce identical text.
std::string to_text(const PauliOperator& op);
std::string to_text(const FermionOperator& op);

}  // namespace latticeflux
