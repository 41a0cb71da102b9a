#include "latticeflux/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace latticeflux {

double fermi_rate(double rate, double occ) { return rate * (2.0 * occ + 1.0); }

double fermi_target(double occ) { return occ / (2.0 * occ + 1.0); }

void validate(const BathSpec& baths) {
  if (baths.rate_in <= 0.0 || baths.rate_out <= 0.0)
    throw std::invalid_argument("validate(BathSpec): bath rates must be positive");
  if (baths.occ_in < 0.0 || baths.occ_out < 0.0)
    throw std::invalid_argument("validate(BathSpec): bath occupations must be non-negative");
}

long LatticeSpec::site_count() const {
  long m = 1;
  for (int l : dims) m *= l;
  return m;
}

long LatticeSpec::transverse_count() const {
  long n = 1;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) n *= dims[i];
  return n;
}

void validate(const LatticeSpec& spec) {
  if (spec.dims.empty())
    throw std::invalid_argument("validate(LatticeSpec): dims must not be empty");
  if (spec.dims.size() != spec.couplings.size())
    throw std::invalid_argument("validate(LatticeSpec): need one coupling per dimension");
  for (int l : spec.dims)
    if (l < 1)
      throw std::invalid_argument("validate(LatticeSpec): every L_i must be at least 1");
  if (spec.omega < 0.0)
    throw std::invalid_argument("validate(LatticeSpec): omega must be non-negative");
  if (!spec.omega_profile.empty() &&
      spec.omega_profile.size() != static_cast<std::size_t>(spec.dims.back()))
    throw std::invalid_argument(
        "validate(LatticeSpec): omega_profile must have one entry per transport layer");
}

long site_index(const LatticeSpec& spec, const std::vector<int>& coord) {
  if (coord.size() != spec.dims.size())
    throw std::invalid_argument("site_index(): coordinate dimension mismatch");
  long idx = 0;
  long stride = 1;
  for (std::size_t i = 0; i < coord.size(); ++i) {
    if (coord[i] < 1 || coord[i] > spec.dims[i])
      throw std::invalid_argument("site_index(): coordinate " + std::to_string(i + 1) +
                                  " out of range");
    idx += stride * (coord[i] - 1);
    stride *= spec.dims[i];
  }
  return idx;
}

std::vector<int> site_coordinates(const LatticeSpec& spec, long index) {
  if (index < 0 || index >= spec.site_count())
    throw std::invalid_argument("site_coordinates(): index out of range");
  std::vector<int> coord(spec.dims.size());
  for (std::size_t i = 0; i < spec.dims.size(); ++i) {
    coord[i] = static_cast<int>(index % spec.dims[i]) + 1;
    index /= spec.dims[i];
  }
  return coord;
}

std::vector<long> layer_sites(const LatticeSpec& spec, int layer) {
  if (layer < 1 || layer > spec.dims.back())
    throw std::invalid_argument("layer_sites(): layer out of range");
  const long n = spec.transverse_count();
  std::vector<long> rows(n);
  for (long r = 0; r < n; ++r) rows[r] = r + n * (layer - 1);
  return rows;
}

std::vector<Bond> lattice_bonds(const LatticeSpec& spec) {
  validate(spec);
  const long m = spec.site_count();
  const int d = spec.dimension();
  std::vector<Bond> bonds;
  for (long idx = 0; idx < m; ++idx) {
    const std::vector<int> coord = site_coordinates(spec, idx);
    for (int i = 0; i < d; ++i) {
      const int li = spec.dims[i];
      const bool periodic = (i + 1 < d);
      std::vector<int> next = coord;
      if (coord[i] < li) {
        next[i] = coord[i] + 1;
      } else if (periodic && li >= 3) {
        next[i] = 1;  // wrap bond; absent for L_i = 2 (it would double the bond)
      } else {
        continue;
      }
      const long jdx = site_index(spec, next);
      bonds.push_back({std::min(idx, jdx), std::max(idx, jdx), spec.couplings[i]});
    }
  }
  return bonds;
}

double onsite_energy(const LatticeSpec& spec, long index) {
  if (spec.omega_profile.empty()) return spec.omega;
  const std::vector<int> coord = site_coordinates(spec, index);
  return spec.omega_profile[coord[spec.dimension() - 1] - 1];
}

Eigen::MatrixXd build_hopping_matrix(const LatticeSpec& spec) {
  if (spec.statistics == Statistics::Spin)
    throw std::invalid_argument(
        "build_hopping_matrix(): spin lattices are not quadratic; "
        "use build_spin_sector_hamiltonian");

  const long m = spec.site_count();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (long idx = 0; idx < m; ++idx) h(idx, idx) = onsite_energy(spec, idx);
  for (const Bond& b : lattice_bonds(spec)) {
    h(b.a, b.b) += b.g;
    h(b.b, b.a) += b.g;
  }
  return h;
}

double bose_occupation(double omega_eff, double temperature) {
  if (temperature <= 0.0)
    throw std::invalid_argument("bose_occupation(): temperature must be positive");
  if (omega_eff <= 0.0)
    throw std::invalid_argument("bose_occupation(): omega_eff must be positive");
  const double x = omega_eff / temperature;
  if (x > 700.0) return 0.0;  // exp(x) overflows double; the occupation underflows
  return 1.0 / std::expm1(x);
}

}  // namespace latticeflux
