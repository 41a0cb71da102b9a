#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "latticeflux/lyapunov.hpp"
#include "latticeflux/rng.hpp"

using namespace latticeflux;
using namespace std::complex_literals;

namespace {

double residual_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& q,
                     const Eigen::MatrixXcd& x) {
  return (a * x + x * a.adjoint() + q).norm();
}

Eigen::MatrixXcd random_complex(long n, UniformStream& u) {
  Eigen::MatrixXcd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = u.next(-1.0, 1.0) + 1.0i * u.next(-1.0, 1.0);
  return m;
}

}  // namespace

TEST_CASE("diagonal drift has the closed-form solution Q_ij / (a_i + conj(a_j))") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = -1.0;
  a(1, 1) = -2.0;
  const Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::MatrixXcd x = solve_continuous_lyapunov(a, q);
  CHECK(std::abs(x(0, 0) - 0.5) <= 1e-15);
  CHECK(std::abs(x(1, 1) - 0.25) <= 1e-15);
  CHECK(std::abs(x(0, 1)) <= 1e-15);
  CHECK(std::abs(x(1, 0)) <= 1e-15);
}

TEST_CASE("non-normal upper-triangular drift is solved exactly") {
  // The off-diagonal couples the back-substitution sweeps; a solver that
  // visits columns in the wrong order returns a non-solution here without
  // raising any error.
  Eigen::MatrixXcd a(2, 2);
  a << -1.0, 5.0, 0.0, -2.0;
  const Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::MatrixXcd x = solve_continuous_lyapunov(a, q);
  CHECK(residual_norm(a, q, x) <= 1e-12);
}

TEST_CASE("random stable non-normal drifts satisfy the equation to rounding") {
  UniformStream u(7);
  for (int trial = 0; trial < 6; ++trial) {
    const long n = 3 + trial;
    // Spectrum strictly in the left half-plane: random part plus a shift
    // beyond its largest singular value.
    Eigen::MatrixXcd m = random_complex(n, u);
    const double shift = m.operatorNorm() + 0.5;
    const Eigen::MatrixXcd a = m - shift * Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd h = random_complex(n, u);
    const Eigen::MatrixXcd q = (h * h.adjoint()).eval();

    const Eigen::MatrixXcd x = solve_continuous_lyapunov(a, q);
    CHECK(residual_norm(a, q, x) <= 1e-11 * q.norm());
    CHECK((x - x.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("Hermitian Q yields an exactly Hermitian X") {
  Eigen::MatrixXcd a(3, 3);
  a << -1.0 + 2.0i, 0.3, 0.0,
       0.1, -2.0 - 1.0i, 0.7,
       0.0, 0.2, -0.5;
  Eigen::MatrixXcd q(3, 3);
  q << 2.0, 0.5 + 0.1i, 0.0,
       0.5 - 0.1i, 1.0, -0.3i,
       0.0, 0.3i, 0.7;
  const Eigen::MatrixXcd x = solve_continuous_lyapunov(a, q);
  CHECK((x - x.adjoint()).norm() == 0.0);
  CHECK(residual_norm(a, q, x) <= 1e-12);
}

TEST_CASE("full solver reports the drift spectrum") {
  Eigen::MatrixXcd a(2, 2);
  a << -1.0, 5.0, 0.0, -2.0;
  const Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(2, 2);
  const LyapunovSolution sol = solve_continuous_lyapunov_full(a, q);
  CHECK(residual_norm(a, q, sol.x) <= 1e-12);
  REQUIRE(sol.drift_eigenvalues.size() == 2);
  double lo = sol.drift_eigenvalues(0).real();
  double hi = sol.drift_eigenvalues(1).real();
  if (lo > hi) std::swap(lo, hi);
  CHECK(lo == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(hi == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("eigenvalue pairs summing to zero are rejected") {
  // a = diag(1, -1): the cross pair 1 + conj(-1) = 0 makes the map singular.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  CHECK_THROWS_AS(solve_continuous_lyapunov(a, Eigen::MatrixXcd::Identity(2, 2)),
                  std::runtime_error);

  // Purely imaginary eigenvalue: i + conj(i) = 0 on the diagonal pair.
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(2, 2);
  b(0, 0) = 1.0i;
  b(1, 1) = -2.0;
  CHECK_THROWS_AS(solve_continuous_lyapunov(b, Eigen::MatrixXcd::Identity(2, 2)),
                  std::runtime_error);
}
