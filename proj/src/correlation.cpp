#include "latticeflux/correlation.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "latticeflux/lyapunov.hpp"
#include "latticeflux/rng.hpp"

namespace latticeflux {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

}  // namespace

DriftSpec build_drift(const Eigen::Ref<const Eigen::MatrixXd>& h, const LatticeSpec& spec,
                      const BathSpec& baths) {
  validate(spec);
  validate(baths);
  if (spec.statistics == Statistics::Spin)
    throw std::invalid_argument("build_drift(): statistics must be Fermion or Boson");
  const long m = spec.site_count();
  if (h.rows() != m || h.cols() != m)
    throw std::invalid_argument("build_drift(): hopping matrix size does not match spec");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + h.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("build_drift(): hopping matrix must be symmetric");

  DriftSpec out;
  out.sites_in = layer_sites(spec, 1);
  out.sites_out = layer_sites(spec, spec.transport_length());
  out.injection = Eigen::VectorXd::Zero(m);
  out.rate = Eigen::VectorXd::Zero(m);
  out.target = Eigen::VectorXd::Zero(m);

  const bool fermi = spec.statistics == Statistics::Fermion;
  Eigen::VectorXd decay = Eigen::VectorXd::Zero(m);
  auto attach = [&](long b, double rate, double occ) {
    decay(b) = fermi ? fermi_rate(rate, occ) : rate;
    out.injection(b) = rate * occ;
    out.rate(b) = decay(b);
    out.target(b) = fermi ? fermi_target(occ) : occ;
  };
  for (long b : out.sites_in) attach(b, baths.rate_in, baths.occ_in);
  for (long b : out.sites_out) attach(b, baths.rate_out, baths.occ_out);

  out.drift = -kImag * h.cast<std::complex<double>>();
  out.drift -= 0.5 * decay.cast<std::complex<double>>().asDiagonal();
  return out;
}

Eigen::MatrixXcd steady_state(const DriftSpec& drift) {
  const Eigen::MatrixXcd a = drift.drift.adjoint();
  const Eigen::MatrixXcd q = drift.injection.cast<std::complex<double>>().asDiagonal();
  const LyapunovSolution sol = solve_continuous_lyapunov_full(a, q);
  const double scale = drift.drift.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < sol.drift_eigenvalues.size(); ++i)
    if (sol.drift_eigenvalues(i).real() > -1e-12 * (scale > 0.0 ? scale : 1.0))
      throw std::runtime_error("steady_state(): drift eigenvalue on the imaginary axis, "
                               "steady state not unique");
  return sol.x;
}

double steady_state_residual(const DriftSpec& drift,
                             const Eigen::Ref<const Eigen::MatrixXcd>& c) {
  const Eigen::MatrixXcd q = drift.injection.cast<std::complex<double>>().asDiagonal();
  return (drift.drift.adjoint() * c + c * drift.drift + q).cwiseAbs().maxCoeff();
}

FluxReport flux_from_state(const Eigen::Ref<const Eigen::MatrixXcd>& c,
                           const Eigen::Ref<const Eigen::MatrixXd>& h, const DriftSpec& drift) {
  auto site_flux = [&](long b) {
    double cross = 0.0;
    for (Eigen::Index k = 0; k < h.cols(); ++k) {
      if (k == b) continue;
      cross += (h(b, k) * c(b, k)).real();
    }
    return drift.rate(b) * (h(b, b) * (drift.target(b) - c(b, b).real()) - cross);
  };
  FluxReport report;
  for (long b : drift.sites_in) report.j_in += site_flux(b);
  for (long b : drift.sites_out) report.j_out += site_flux(b);
  report.residual = std::abs(report.j_in + report.j_out);
  return report;
}

std::vector<double> bond_energy_currents(const Eigen::Ref<const Eigen::MatrixXcd>& c, double g,
                                         double omega) {
  if (c.rows() < 2) return {};
  std::vector<double> currents(c.rows() - 1);
  for (Eigen::Index k = 0; k + 1 < c.rows(); ++k)
    currents[k] = -2.0 * g * omega * c(k, k + 1).imag();
  return currents;
}

ChainClosureReport chain_closure_residuals(const Eigen::Ref<const Eigen::MatrixXcd>& c,
                                           const LatticeSpec& spec, const BathSpec& baths) {
  if (spec.dimension() != 1 || spec.statistics != Statistics::Fermion)
    throw std::invalid_argument("chain_closure_residuals(): fermionic chain required");
  const long l = spec.transport_length();
  if (c.rows() != l || l < 2)
    throw std::invalid_argument("chain_closure_residuals(): chain of length >= 2 required");
  const double g = spec.couplings[0];
  const double g1 = fermi_rate(baths.rate_in, baths.occ_in);
  const double gl = fermi_rate(baths.rate_out, baths.occ_out);
  const double s1 = fermi_target(baths.occ_in);
  const double sl = fermi_target(baths.occ_out);

  ChainClosureReport rep;
  rep.boundary_in = std::abs(g1 * (s1 - c(0, 0).real()) + 2.0 * g * c(0, 1).imag());
  rep.boundary_out = std::abs(gl * (sl - c(l - 1, l - 1).real()) - 2.0 * g * c(l - 2, l - 1).imag());
  for (long k = 0; k + 1 < l; ++k) {
    rep.coherence_re_spread =
        std::max(rep.coherence_re_spread, std::abs(c(k, k + 1).real() - c(0, 1).real()));
    rep.coherence_im_spread =
        std::max(rep.coherence_im_spread, std::abs(c(k, k + 1).imag() - c(0, 1).imag()));
  }
  const std::complex<double> sum = 0.5 * g1 * c(0, 1) + 0.5 * gl * c(l - 2, l - 1);
  rep.coherence_sum = std::abs(sum - kImag * g * (c(l - 1, l - 1) - c(0, 0)));
  return rep;
}

std::vector<SizeScanRow> size_scan(LatticeSpec spec, const BathSpec& baths,
                                   const std::vector<int>& lengths, double disorder_strength,
                                   std::uint64_t seed) {
  std::vector<SizeScanRow> rows;
  rows.reserve(lengths.size());
  for (int l : lengths) {
    spec.dims.back() = l;
    spec.omega_profile.clear();
    if (disorder_strength > 0.0) {
      UniformStream u(seed);
      spec.omega_profile.resize(l);
      for (double& w : spec.omega_profile) w = spec.omega + disorder_strength * u.next(-1.0, 1.0);
    }
    const Eigen::MatrixXd h = build_hopping_matrix(spec);
    const DriftSpec drift = build_drift(h, spec, baths);
    const Eigen::MatrixXcd c = steady_state(drift);
    const FluxReport flux = flux_from_state(c, h, drift);
    rows.push_back({l, flux.j_in, flux.residual});
  }
  return rows;
}

}  // namespace latticeflux
