#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "latticeflux/lattice.hpp"

namespace latticeflux {

/**
 * Full many-body master equation of a boundary-driven lattice, kept as
 * sparse matrices on the 2^N (fermions) or (n_max+1)^N (bosons) Hilbert
 * space together with the dim² × dim² generator acting on column-major
 * vectorized density matrices. Everything downstream of this struct is
 * exact up to linear algebra, which makes it the reference the closed
 * two-point equation is tested against.
 */
struct LiouvilleSystem {
  Eigen::SparseMatrix<std::complex<double>> hamiltonian;
  // One lowering operator per site, 0-based, strings included on the
  // fermionic side so products carry the right signs.
  std::vector<Eigen::SparseMatrix<std::complex<double>>> lowering;
  std::vector<Eigen::SparseMatrix<std::complex<double>>> jumps_in;
  std::vector<Eigen::SparseMatrix<std::complex<double>>> jumps_out;
  Eigen::SparseMatrix<std::complex<double>> generator;
  long hilbert_dim = 0;
};

/**
 * Builds the system for the given lattice and boundary baths. Each bath
 * site carries a lowering jump √(Γ(n+1))·a and a raising jump √(Γn)·a†,
 * which reproduces the dressed fermionic pair (γ, s) and the bare bosonic
 * pair (Γ, n) of the two-point closure. Zero-rate jumps are dropped.
 *
 * n_max is the per-site occupation cutoff and is only meaningful for
 * bosons; fermions ignore it. Spin lattices are rejected, as is any
 * Hilbert space larger than dim_cap.
 */
LiouvilleSystem build_liouvillian(const LatticeSpec& spec, const BathSpec& baths, int n_max = 0,
                                  long dim_cap = 4096);

// unvec(G · vec(rho)), the time derivative of rho.
Eigen::MatrixXcd apply_generator(const LiouvilleSystem& system,
                                 const Eigen::Ref<const Eigen::MatrixXcd>& rho);

// A rho A† − ½{A†A, rho} for a single jump operator.
Eigen::MatrixXcd dissipator(const Eigen::SparseMatrix<std::complex<double>>& jump,
                            const Eigen::Ref<const Eigen::MatrixXcd>& rho);

/**
 * The stationary density matrix, Hermitized and trace-normalized.
 * Small problems go through a dense SVD whose trailing singular values
 * double as a uniqueness check; larger ones through a sparse LU on the
 * generator with one row traded for the trace constraint. Throws when the
 * kernel is empty, degenerate, or the residual check fails.
 */
Eigen::MatrixXcd oracle_steady_state(const LiouvilleSystem& system);

// ‖G vec(rho)‖₂ / ‖vec(rho)‖₂, the stationarity defect.
double generator_residual(const LiouvilleSystem& system,
                          const Eigen::Ref<const Eigen::MatrixXcd>& rho);

// C_jk = Tr(rho a_j† a_k), the two-point matrix in the closure's convention.
Eigen::MatrixXcd oracle_correlations(const LiouvilleSystem& system,
                                     const Eigen::Ref<const Eigen::MatrixXcd>& rho);

// Per-site mean occupation Tr(rho a_i† a_i), real parts of the above diagonal.
Eigen::VectorXd oracle_occupations(const LiouvilleSystem& system,
                                   const Eigen::Ref<const Eigen::MatrixXcd>& rho);

/**
 * Boundary energy fluxes J = Tr(H Σ_b D_b[rho]) summed over the input and
 * output bath dissipators separately; residual = |j_in + j_out| vanishes
 * at stationarity.
 */
FluxReport oracle_flux(const LiouvilleSystem& system,
                       const Eigen::Ref<const Eigen::MatrixXcd>& rho);

/**
 * Fixed-step RK4 propagation of rho over the given time span. The step
 * actually used divides the span exactly; dt is an upper bound on it.
 */
Eigen::MatrixXcd propagate(const LiouvilleSystem& system,
                           const Eigen::Ref<const Eigen::MatrixXcd>& rho0, double time,
                           double dt);

}  // namespace latticeflux
