#pragma once

#include <vector>

#include <Eigen/Dense>

namespace latticeflux {

enum class Statistics { Fermion, Boson, Spin };

/**
 * Boundary bath pair attached to the two ends of the transport axis.
 *
 * rate_* are the bare Lindblad rates (the Γ of the master equation) and
 * occ_* the reservoir mean occupations n. Fermionic systems are driven
 * through the dressed rate γ = Γ(2n+1) and target population
 * s = n/(2n+1) ∈ [0, 1/2); bosonic systems use Γ and n directly.
 */
struct BathSpec {
  double rate_in = 1.0;
  double rate_out = 1.0;
  double occ_in = 0.0;
  double occ_out = 0.0;
};

// γ = Γ(2n+1), the occupation-dressed fermionic decay rate.
double fermi_rate(double rate, double occ);
// s = n/(2n+1), the fermionic stationary target population.
double fermi_target(double occ);

void validate(const BathSpec& baths);

/**
 * Geometry and statistics of a d-dimensional nearest-neighbour lattice,
 * open along the last dimension (the transport axis) and periodic along
 * all others. A site is addressed by 1-based coordinates (l_1, …, l_d)
 * and rows are ordered first-dimension-fastest, reproducing the ladder
 * convention l = l_1 + 2(l_2 − 1).
 *
 * omega_profile, when non-empty, holds one on-site energy per transport
 * layer l_d (size dims.back()) and overrides the uniform omega along the
 * chain; transverse uniformity is kept so the mode decomposition applies.
 */
struct LatticeSpec {
  std::vector<int> dims;
  std::vector<double> couplings;
  double omega = 1.0;
  Statistics statistics = Statistics::Fermion;
  std::vector<double> omega_profile;

  int dimension() const { return static_cast<int>(dims.size()); }
  long site_count() const;
  int transport_length() const { return dims.back(); }
  // Number of transverse channels N = Π_{i<d} L_i.
  long transverse_count() const;
};

void validate(const LatticeSpec& spec);

// 0-based row index of the site with 1-based coordinates coord.
long site_index(const LatticeSpec& spec, const std::vector<int>& coord);
std::vector<int> site_coordinates(const LatticeSpec& spec, long index);

// Rows of all sites in transport layer l_d (1-based layer index).
std::vector<long> layer_sites(const LatticeSpec& spec, int layer);

/** One nearest-neighbour bond between 0-based rows a < b with weight g. */
struct Bond {
  long a;
  long b;
  double g;
};

/**
 * Every nearest-neighbour bond of the lattice, each listed once.
 * Transverse wrap bonds are added only for L_i ≥ 3; for L_i = 2 the wrap
 * would duplicate the single existing bond and double the effective
 * coupling, which would break the correspondence with the explicit
 * two-leg ladder Hamiltonian. The transport dimension is open.
 */
std::vector<Bond> lattice_bonds(const LatticeSpec& spec);

// On-site energy of the given 0-based row (omega, or the transport-layer
// profile entry when one is set).
double onsite_energy(const LatticeSpec& spec, long index);

/**
 * Single-particle hopping matrix of the quadratic lattice: on-site
 * energies on the diagonal, coupling g_i on every bond of lattice_bonds.
 *
 * Spin lattices are rejected: they are not quadratic and their sector
 * Hamiltonians are built separately.
 */
Eigen::MatrixXd build_hopping_matrix(const LatticeSpec& spec);

/**
 * Bose-Einstein occupation 1/(exp(omega_eff/temperature) − 1).
 * Underflow-clamped: returns exactly 0 once exp overflows, which a cold
 * bath with ω/T of a few thousand hits. temperature ≤ 0 and omega_eff ≤ 0
 * are rejected.
 */
double bose_occupation(double omega_eff, double temperature);

/** Energy flux bookkeeping at the two baths; residual = |j_in + j_out|. */
struct FluxReport {
  double j_in = 0.0;
  double j_out = 0.0;
  double residual = 0.0;
};

}  // namespace latticeflux
