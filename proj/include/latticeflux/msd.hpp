#pragma once

#include <Eigen/Dense>

#include "latticeflux/evolve.hpp"
#include "latticeflux/ladder_states.hpp"
#include "latticeflux/lattice.hpp"

namespace latticeflux {

/**
 * Spread of the excitation cloud along the transport direction,
 *
 *   msd(t) = Σ_sites (rung(site) − c)² · ⟨occupation(site)⟩(t),
 *
 * summed over all excitations (not averaged), with the center c frozen at
 * the excitation-weighted mean rung of the initial state. Only this
 * normalization makes the ballistic curvature scale linearly with the
 * excitation count. curvature holds central second differences, so it is
 * two entries shorter than msd and curvature[i] belongs to times[i+1].
 *
 * When the cloud reaches the open ends (total occupation of the two
 * terminal rungs at or above the guard), the series is truncated at the
 * first contaminated grid point and boundary_truncated_at records its
 * index; −1 means the whole grid stayed clean.
 */
struct MsdSeries {
  Eigen::VectorXd times;
  Eigen::VectorXd msd;
  Eigen::VectorXd curvature;
  double center = 0.0;
  long boundary_truncated_at = -1;
  EvolveReport evolve;
};

// Per-site mean occupation Σ_k |amp_k|² · [site ∈ config_k], 0-based rows.
Eigen::VectorXd sector_occupations(const SectorState& state);

/**
 * Evolves the initial sector state of the given spin lattice over the grid
 * t = 0, dt, …, ≤ t_max and accumulates the msd series. The sector
 * Hamiltonian is built from the lattice bonds, so any LatticeSpec whose
 * last dimension is the open transport direction works (chains and ladders
 * alike).
 */
MsdSeries msd_evolution(const LatticeSpec& spec, const SectorState& initial, double t_max,
                        double dt, const KrylovOptions& opt = {}, double guard = 1e-8);

// Largest |curvature(t) − reference| over grid times in [t_lo, t_hi].
// Throws when the window holds no curvature point.
double plateau_max_deviation(const MsdSeries& series, double t_lo, double t_hi, double reference);

// Mean curvature over the same window.
double plateau_mean(const MsdSeries& series, double t_lo, double t_hi);

}  // namespace latticeflux
