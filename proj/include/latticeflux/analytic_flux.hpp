#pragma once

#include <vector>

#include "latticeflux/lattice.hpp"
#include "latticeflux/modes.hpp"

namespace latticeflux {

/** Steady-state energy flux through a single open chain of length L with
 * uniform hopping g, carrier frequency omega_q, and the two boundary baths
 * described by `bath`. The value is independent of L, so no length argument
 * appears here. Fermionic chains saturate through the dressed rates
 * gamma = rate(2n+1); bosonic chains keep the bare rates, which is why the
 * two expressions differ only in which rate enters the Lorentzian factor.
 */
double fermion_chain_flux(double omega_q, double g, const BathSpec& bath);
double boson_chain_flux(double omega_q, double g, const BathSpec& bath);

double chain_flux(Statistics stats, double omega_q, double g, const BathSpec& bath);

struct ChannelFlux {
  std::vector<double> q;  // transverse quasi-momenta of the channel
  double omega_q = 0.0;
  double flux = 0.0;
};

struct LatticeFlux {
  std::vector<ChannelFlux> channels;
  double total = 0.0;
  // True when some channel frequency omega_q is non-positive. Bosonic
  // occupations are only defined for positive frequencies, so callers should
  // treat the totals as formal in that case.
  bool negative_frequency = false;
};

/** Total boundary-driven flux of a d-dimensional lattice with baths covering
 * both boundary layers of the last (open) dimension, obtained by summing the
 * per-channel chain fluxes. With a uniform bath pair the cosine shifts cancel
 * channel by channel and the total reduces to transverse_count() times the
 * single-chain value at the bare frequency.
 */
LatticeFlux lattice_total_flux(const LatticeSpec& spec, const BathSpec& bath);

}  // namespace latticeflux
