#include "latticeflux/analytic_flux.hpp"

#include <stdexcept>

namespace latticeflux {

double fermion_chain_flux(double omega_q, double g, const BathSpec& bath) {
  validate(bath);
  const double g1 = fermi_rate(bath.rate_in, bath.occ_in);
  const double gl = fermi_rate(bath.rate_out, bath.occ_out);
  const double s1 = fermi_target(bath.occ_in);
  const double sl = fermi_target(bath.occ_out);
  const double g2 = 4.0 * g * g;
  return omega_q * g2 * g1 * gl * (s1 - sl) / ((g1 + gl) * (g2 + g1 * gl));
}

double boson_chain_flux(double omega_q, double g, const BathSpec& bath) {
  validate(bath);
  const double r1 = bath.rate_in;
  const double rl = bath.rate_out;
  const double g2 = 4.0 * g * g;
  return omega_q * g2 * r1 * rl * (bath.occ_in - bath.occ_out) /
         ((r1 + rl) * (g2 + r1 * rl));
}

double chain_flux(Statistics stats, double omega_q, double g, const BathSpec& bath) {
  switch (stats) {
    case Statistics::Fermion:
      return fermion_chain_flux(omega_q, g, bath);
    case Statistics::Boson:
      return boson_chain_flux(omega_q, g, bath);
    default:
      throw std::invalid_argument("chain_flux(): statistics must be Fermion or Boson");
  }
}

LatticeFlux lattice_total_flux(const LatticeSpec& spec, const BathSpec& bath) {
  validate(spec);
  if (spec.statistics == Statistics::Spin)
    throw std::invalid_argument("lattice_total_flux(): statistics must be Fermion or Boson");
  const double g_d = spec.couplings.back();
  LatticeFlux out;
  out.channels.reserve(spec.transverse_count());
  for (const ModeChannel& ch : enumerate_modes(spec)) {
    ChannelFlux cf;
    cf.q = ch.q;
    cf.omega_q = ch.omega_q;
    cf.flux = chain_flux(spec.statistics, ch.omega_q, g_d, bath);
    if (ch.omega_q <= 0.0) out.negative_frequency = true;
    out.total += cf.flux;
    out.channels.push_back(std::move(cf));
  }
  return out;
}

}  // namespace latticeflux
