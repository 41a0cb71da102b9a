#include "latticeflux/evolve.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace latticeflux {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

// H v for complex v with real H, through two real products.
Eigen::VectorXcd apply_real(const Eigen::SparseMatrix<double>& h,
                            const Eigen::Ref<const Eigen::VectorXcd>& v) {
  const Eigen::VectorXd re = h * v.real().eval();
  const Eigen::VectorXd im = h * v.imag().eval();
  return re + kImag * im;
}

// First column of exp(−i dt T) for the real symmetric tridiagonal T held as
// (alpha, beta), via its eigendecomposition. m is the active dimension.
Eigen::VectorXcd small_exp_column(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                                  int m, double dt) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) t(i, i) = alpha(i);
  for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta(i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("krylov_step(): tridiagonal eigensolve failed");
  const Eigen::VectorXcd phases =
      (-kImag * dt * es.eigenvalues().cast<std::complex<double>>().array()).exp();
  return es.eigenvectors().cast<std::complex<double>>() *
         (phases.array() * es.eigenvectors().row(0).transpose().cast<std::complex<double>>().array())
             .matrix();
}

}  // namespace

Eigen::VectorXcd krylov_step(const Eigen::SparseMatrix<double>& h,
                             const Eigen::Ref<const Eigen::VectorXcd>& psi, double dt,
                             const KrylovOptions& opt, int* used_dim) {
  if (h.rows() != h.cols() || h.rows() != psi.size())
    throw std::invalid_argument("krylov_step(): dimension mismatch");
  if (opt.max_dim < 1) throw std::invalid_argument("krylov_step(): max_dim must be positive");

  const double norm0 = psi.norm();
  if (norm0 == 0.0) {
    if (used_dim) *used_dim = 0;
    return psi;
  }

  const long n = psi.size();
  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(opt.max_dim);
  basis.push_back(psi / norm0);

  Eigen::VectorXd alpha(opt.max_dim);
  Eigen::VectorXd beta(opt.max_dim);
  const double breakdown = 1e-14 * (1.0 + h.coeffs().cwiseAbs().sum() / std::max<long>(n, 1));

  double estimate = 0.0;
  int m = 0;
  while (m < opt.max_dim) {
    Eigen::VectorXcd w = apply_real(h, basis[m]);
    // Hermitian H and real T: the diagonal is real up to roundoff.
    alpha(m) = basis[m].dot(w).real();
    w -= alpha(m) * basis[m];
    if (m > 0) w -= beta(m - 1) * basis[m - 1];
    for (const auto& v : basis) w -= v.dot(w) * v;
    beta(m) = w.norm();
    ++m;

    const Eigen::VectorXcd column = small_exp_column(alpha, beta, m, dt);
    estimate = beta(m - 1) * std::abs(column(m - 1));
    if (beta(m - 1) < breakdown || estimate < opt.tol) {
      if (used_dim) *used_dim = m;
      Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
      for (int j = 0; j < m; ++j) out += column(j) * basis[j];
      return norm0 * out;
    }
    basis.push_back(w / beta(m - 1));
  }

  std::ostringstream msg;
  msg << "krylov_step(): no convergence within " << opt.max_dim
      << " vectors, residual estimate " << estimate << " (want " << opt.tol << ")";
  throw std::runtime_error(msg.str());
}

EvolveReport evolve_on_grid(const Eigen::SparseMatrix<double>& h,
                            const Eigen::Ref<const Eigen::VectorXcd>& psi0, double dt,
                            long n_steps,
                            const std::function<void(long, double, const Eigen::VectorXcd&)>& observe,
                            const KrylovOptions& opt) {
  if (n_steps < 0) throw std::invalid_argument("evolve_on_grid(): n_steps must be >= 0");
  if (dt <= 0.0) throw std::invalid_argument("evolve_on_grid(): dt must be positive");

  EvolveReport report;
  Eigen::VectorXcd psi = psi0;
  const double norm0 = psi.norm();
  const double energy0 = psi.dot(apply_real(h, psi)).real();

  for (long k = 0; k <= n_steps; ++k) {
    if (k > 0) {
      int used = 0;
      psi = krylov_step(h, psi, dt, opt, &used);
      report.max_krylov_dim = std::max(report.max_krylov_dim, used);
      report.max_norm_drift = std::max(report.max_norm_drift, std::abs(psi.norm() - norm0));
      report.max_energy_drift = std::max(
          report.max_energy_drift, std::abs(psi.dot(apply_real(h, psi)).real() - energy0));
    }
    if (observe) observe(k, k * dt, psi);
  }
  return report;
}

std::vector<SectorState> evolve_states(const SectorState& initial,
                                       const Eigen::SparseMatrix<double>& h, double dt,
                                       long n_steps, const KrylovOptions& opt) {
  std::vector<SectorState> out;
  out.reserve(n_steps + 1);
  evolve_on_grid(h, initial.amplitudes, dt, n_steps,
                 [&](long, double, const Eigen::VectorXcd& psi) {
                   out.push_back(SectorState{initial.basis, psi});
                 },
                 opt);
  return out;
}

}  // namespace latticeflux
