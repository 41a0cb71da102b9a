#include "latticeflux/lyapunov.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace latticeflux {

namespace {

// Back-substitution for T Y + Y T† + Q = 0 with T upper triangular.
// (T Y)_ij reaches rows k > i and (Y T†)_ij reaches columns k > j (T† is
// lower triangular), so sweep columns and rows both descending.
Eigen::MatrixXcd triangular_lyapunov(const Eigen::MatrixXcd& t, const Eigen::MatrixXcd& q) {
  const Eigen::Index n = t.rows();
  const double scale = t.cwiseAbs().maxCoeff() + q.cwiseAbs().maxCoeff();
  const double tiny = 1e-14 * (scale > 0.0 ? scale : 1.0);
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      std::complex<double> acc = q(i, j);
      for (Eigen::Index k = i + 1; k < n; ++k) acc += t(i, k) * y(k, j);
      for (Eigen::Index k = j + 1; k < n; ++k) acc += y(i, k) * std::conj(t(j, k));
      const std::complex<double> denom = t(i, i) + std::conj(t(j, j));
      if (std::abs(denom) < tiny)
        throw std::runtime_error(
            "solve_continuous_lyapunov(): singular pair, eigenvalue sum near zero");
      y(i, j) = -acc / denom;
    }
  }
  return y;
}

}  // namespace

LyapunovSolution solve_continuous_lyapunov_full(const Eigen::Ref<const Eigen::MatrixXcd>& a,
                                                const Eigen::Ref<const Eigen::MatrixXcd>& q) {
  if (a.rows() != a.cols() || q.rows() != q.cols() || a.rows() != q.rows())
    throw std::invalid_argument("solve_continuous_lyapunov(): A and Q must be square, same size");
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("solve_continuous_lyapunov(): Schur decomposition failed");
  const Eigen::MatrixXcd& u = schur.matrixU();
  const Eigen::MatrixXcd& t = schur.matrixT();
  const Eigen::MatrixXcd q_tilde = u.adjoint() * q * u;
  const Eigen::MatrixXcd y = triangular_lyapunov(t, q_tilde);
  LyapunovSolution out;
  out.x = u * y * u.adjoint();
  out.x = 0.5 * (out.x + out.x.adjoint()).eval();
  out.drift_eigenvalues = t.diagonal();
  return out;
}

Eigen::MatrixXcd solve_continuous_lyapunov(const Eigen::Ref<const Eigen::MatrixXcd>& a,
                                           const Eigen::Ref<const Eigen::MatrixXcd>& q) {
  return solve_continuous_lyapunov_full(a, q).x;
}

}  // namespace latticeflux
