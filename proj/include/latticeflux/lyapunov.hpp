#pragma once

#include <Eigen/Dense>

namespace latticeflux {

/** Solve A X + X A† + Q = 0 for Hermitian Q by Bartels-Stewart on the complex
 * Schur form of A. Requires spec(A) ⊕ conj(spec(A)) to avoid zero, otherwise
 * the equation is singular and a std::runtime_error is thrown. The result is
 * Hermitized before returning, so a Hermitian Q yields a Hermitian X exactly.
 */
Eigen::MatrixXcd solve_continuous_lyapunov(const Eigen::Ref<const Eigen::MatrixXcd>& a,
                                           const Eigen::Ref<const Eigen::MatrixXcd>& q);

struct LyapunovSolution {
  Eigen::MatrixXcd x;
  Eigen::VectorXcd drift_eigenvalues;  // spectrum of A, for stability checks
};

LyapunovSolution solve_continuous_lyapunov_full(const Eigen::Ref<const Eigen::MatrixXcd>& a,
                                                const Eigen::Ref<const Eigen::MatrixXcd>& q);

}  // namespace latticeflux
