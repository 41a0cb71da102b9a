#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "latticeflux/ladder_states.hpp"

namespace latticeflux {

struct KrylovOptions {
  // A-posteriori bound on the per-step propagation error, in units of the
  // state norm.
  double tol = 1e-13;
  int max_dim = 40;
};

/**
 * One step of exp(−i dt H) ψ for real symmetric sparse H, via a Lanczos
 * subspace grown until the standard residual estimate β_m·|exp(−i dt T)_{m,1}|
 * drops below tol. The basis is kept fully orthogonal (one reorthogonalization
 * pass per vector), so the small problem stays faithful; a happy breakdown
 * means the subspace is invariant and the result exact.
 *
 * Throws std::runtime_error with the achieved estimate when max_dim is
 * reached without convergence. used_dim, when given, receives the subspace
 * size actually used.
 */
Eigen::VectorXcd krylov_step(const Eigen::SparseMatrix<double>& h,
                             const Eigen::Ref<const Eigen::VectorXcd>& psi, double dt,
                             const KrylovOptions& opt = {}, int* used_dim = nullptr);

struct EvolveReport {
  double max_norm_drift = 0.0;    // max |‖ψ(t)‖ − ‖ψ(0)‖| over the grid
  double max_energy_drift = 0.0;  // max |⟨H⟩(t) − ⟨H⟩(0)|
  int max_krylov_dim = 0;
};

/**
 * Propagates ψ0 over the uniform grid t_k = k·dt, k = 0..n_steps, invoking
 * the observer at every grid point (including t = 0). Norm and energy are
 * tracked along the way; the report carries the worst drift seen, which the
 * conservation contracts are checked against.
 */
EvolveReport evolve_on_grid(const Eigen::SparseMatrix<double>& h,
                            const Eigen::Ref<const Eigen::VectorXcd>& psi0, double dt,
                            long n_steps,
                            const std::function<void(long, double, const Eigen::VectorXcd&)>& observe,
                            const KrylovOptions& opt = {});

// Grid propagation with all intermediate states materialized. Convenient for
// small sectors; large ones should stream through evolve_on_grid.
std::vector<SectorState> evolve_states(const SectorState& initial,
                                       const Eigen::SparseMatrix<double>& h, double dt,
                                       long n_steps, const KrylovOptions& opt = {});

}  // namespace latticeflux
