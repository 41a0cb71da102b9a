#pragma once

#include <vector>

#include <Eigen/Dense>

#include "latticeflux/lattice.hpp"

namespace latticeflux {

/**
 * One transverse normal mode: momenta q_α = 2πn_α/L_α, n_α ∈ {1..L_α},
 * over the periodic dimensions, and the shifted on-site energy
 * omega_q = ω + Σ_α shift_α(q_α) of the equivalent open chain of length
 * L_d with coupling g_d.
 *
 * shift_α is 2 g_α cos(q_α) for L_α ≥ 3, ±g_α for L_α = 2 (single bond,
 * no wrap; the doubled-bond convention behind the 2cos formula does not
 * apply) and 0 for L_α = 1. The shifts of a full channel enumeration sum
 * to zero.
 */
struct ModeChannel {
  std::vector<double> q;
  double shift = 0.0;
  double omega_q = 0.0;
  int chain_length = 0;
  double chain_coupling = 0.0;
};

std::vector<ModeChannel> enumerate_modes(const LatticeSpec& spec);

/**
 * The unitary transverse DFT of the lattice, ordered so that mode
 * channel c occupies rows {c + N·(l_d − 1)} of the transformed basis,
 * with N the transverse channel count and channels enumerated as in
 * enumerate_modes.
 */
Eigen::MatrixXcd transverse_dft_matrix(const LatticeSpec& spec);

struct ModeDecomposition {
  std::vector<Eigen::MatrixXcd> chains;
  // Largest |entry| of U†hU outside the chain blocks; values above
  // tolerance mean the lattice violates transverse uniformity.
  double residual = 0.0;
};

/**
 * Applies the transverse DFT to a single-particle matrix and splits it
 * into per-channel chains of size L_d. For uniform lattices chain c is
 * tridiagonal with diagonal omega_q(c) and off-diagonal g_d; a
 * longitudinal on-site profile passes through to every chain unchanged
 * apart from the channel shift.
 */
ModeDecomposition mode_block_diagonalize(const Eigen::Ref<const Eigen::MatrixXd>& h,
                                         const LatticeSpec& spec);

}  // namespace latticeflux
