#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "latticeflux/lattice.hpp"

namespace latticeflux {

/**
 * Drift and injection of the closed two-point equation
 *
 *   dC/dt = W† C + C W + P,   C_jk = ⟨a_j† a_k⟩,
 *
 * with W = −i h − Λ/2 and diagonal Λ, P supported on the bath sites. The
 * decay entering Λ is the dressed rate γ = Γ(2n+1) for fermions and the
 * bare Γ for bosons; the injection is Γ·n for both, which is the same
 * thing as γ·s on the fermionic side.
 *
 * rate/target hold the per-site pair entering the flux functional
 * (γ_b, s_b) or (Γ_b, n_b); both are zero away from the baths.
 */
struct DriftSpec {
  Eigen::MatrixXcd drift;
  Eigen::VectorXd injection;
  std::vector<long> sites_in;
  std::vector<long> sites_out;
  Eigen::VectorXd rate;
  Eigen::VectorXd target;
};

/**
 * Assembles the drift for a lattice with baths on every transverse site of
 * the first and last transport layers. h must be the (real symmetric)
 * single-particle matrix of the same lattice; it is passed explicitly so
 * disorder profiles and mode-reduced chains reuse the same path.
 */
DriftSpec build_drift(const Eigen::Ref<const Eigen::MatrixXd>& h, const LatticeSpec& spec,
                      const BathSpec& baths);

/**
 * Stationary correlation matrix, the solution of W†C + CW + P = 0.
 * Throws std::runtime_error when the drift spectrum touches the imaginary
 * axis: the steady state is then not unique and the linear solve is
 * singular (both baths detached, for instance).
 */
Eigen::MatrixXcd steady_state(const DriftSpec& drift);

// Max-norm of W†C + CW + P, the defining residual of a claimed steady state.
double steady_state_residual(const DriftSpec& drift, const Eigen::Ref<const Eigen::MatrixXcd>& c);

/**
 * Boundary energy fluxes J_b = Tr(H L_b[ρ]) evaluated on the correlation
 * matrix:
 *
 *   J_b = rate_b · [ h_bb (target_b − C_bb) − Re Σ_{k≠b} h_bk C_bk ],
 *
 * summed over the input and output bath layers separately. At a true
 * steady state j_in + j_out = 0 and the report's residual is the leak.
 */
FluxReport flux_from_state(const Eigen::Ref<const Eigen::MatrixXcd>& c,
                           const Eigen::Ref<const Eigen::MatrixXd>& h, const DriftSpec& drift);

/**
 * Energy current through each longitudinal bond of a uniform chain,
 * −2 g ω Im C_{k,k+1}, positive when flowing from the input bath to the
 * output bath. Stationarity makes the vector constant.
 */
std::vector<double> bond_energy_currents(const Eigen::Ref<const Eigen::MatrixXcd>& c, double g,
                                         double omega);

/**
 * Residuals of the three stationarity identities of a boundary-driven
 * fermionic chain:
 *  - bath balance at each end, γ_b(s_b − C_bb) = ∓2g·Im C at the adjacent
 *    bond;
 *  - constancy of the bond coherences across the chain (real and imaginary
 *    spreads reported separately; the imaginary part is current
 *    uniformity);
 *  - the summed-coherence relation
 *    (γ_1/2)C_{1,2} + (γ_L/2)C_{L−1,L} = i g (C_LL − C_11).
 */
struct ChainClosureReport {
  double boundary_in = 0.0;
  double boundary_out = 0.0;
  double coherence_re_spread = 0.0;
  double coherence_im_spread = 0.0;
  double coherence_sum = 0.0;
};

ChainClosureReport chain_closure_residuals(const Eigen::Ref<const Eigen::MatrixXcd>& c,
                                           const LatticeSpec& spec, const BathSpec& baths);

/** Per-length steady-state flux of a lattice family sharing all parameters
 * except the transport length. disorder_strength > 0 replaces the uniform
 * on-site energy with ω + strength·u, u uniform on [−1, 1) redrawn per
 * length from the fixed seed, which breaks the transverse-mode reduction
 * and with it the length independence of the flux.
 */
struct SizeScanRow {
  int length = 0;
  double flux = 0.0;
  double residual = 0.0;
};

std::vector<SizeScanRow> size_scan(LatticeSpec spec, const BathSpec& baths,
                                   const std::vector<int>& lengths,
                                   double disorder_strength = 0.0, std::uint64_t seed = 0);

}  // namespace latticeflux
