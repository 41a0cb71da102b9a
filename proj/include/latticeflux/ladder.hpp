#pragma once

#include <Eigen/Dense>

#include "latticeflux/lattice.hpp"
#include "latticeflux/sector.hpp"
#include "latticeflux/strings.hpp"

namespace latticeflux {

/**
 * Two-leg ladder of L rungs. Sites are numbered along the snake path
 * l = l_1 + 2(l_2 − 1): rung r holds sites 2r−1 (top leg) and 2r (bottom
 * leg), rung bonds couple with g_rung, leg bonds (l, l+2) with g_leg.
 */
struct LadderSpec {
  int length = 2;
  double omega = 1.0;
  double g_rung = 1.0;
  double g_leg = 1.0;
};

void validate(const LadderSpec& spec);

// The equivalent {2, L} lattice with Spin statistics, for sector builders.
LatticeSpec ladder_lattice(const LadderSpec& spec);

/** The ladder as a spin operator: ω Σ σ^+σ^−, rung and leg exchange terms
 * g(σ^+σ^− + h.c.).
 */
PauliOperator ladder_spin_hamiltonian(const LadderSpec& spec);

/**
 * The fermionized ladder under the snake-path string:
 *
 *   ω Σ f†f + g_rung Σ_r (f†_{2r}f_{2r−1} + h.c.)
 *          + leg_sign · g_leg Σ_l (f†_l f_{l+2} + h.c.) N_{l+1},
 *
 * with N the ±1 number factor. leg_sign = −1 is the exact image of the
 * spin form; +1 is the gauge obtained by negating every second rung,
 * which leaves all spectra and sector dynamics unchanged.
 */
FermionOperator ladder_fermi_hamiltonian(const LadderSpec& spec, double leg_sign = -1.0);

/**
 * Decision whether a sector state evolves like the uniform ladder. The
 * leg terms act as hop_l · N_{l+1}; the state is ballistic when the
 * number factor is indistinguishable from a constant c ∈ {+1, −1} along
 * every active leg bond, for every state reachable from it.
 *
 * Concretely the check builds the Krylov closure K = span{H^k ψ} and
 * requires ‖P_K hop_l (N_{l+1} − c) χ‖ < tol for all χ in an orthonormal
 * basis of K and all leg bonds l, with one global witness c. Residual
 * components outside K are irrelevant: the closure is invariant, so the
 * dynamics within it never sees them. A state with no active leg bond in
 * its closure (a rung-pattern eigenstate, say) passes for both signs and
 * reports witness 0.
 *
 * The closure comes out of one dense eigensolve of the sector Hamiltonian
 * (iterative detection is numerically unsound for this), so closure_cap
 * bounds the sector dimension itself.
 */
struct SubspaceCheck {
  bool ballistic = false;
  // +1 or −1 when one sign passes, 0 when the check is vacuous (both pass).
  int witness = 0;
  // Largest in-closure residual of the best witness (the smallest failing
  // residual when not ballistic).
  double max_residual = 0.0;
  int closure_dimension = 0;
};

SubspaceCheck ballistic_subspace_check(const SectorBasis& basis,
                                       const Eigen::Ref<const Eigen::VectorXcd>& state,
                                       const LadderSpec& spec, double tol = 1e-10,
                                       long closure_cap = 4096);

}  // namespace latticeflux
