#include "latticeflux/sector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace latticeflux {

namespace {

// Exact binomial; saturates at LONG_MAX / 2 to keep the budget check safe.
long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (1L << 62)) return 1L << 62;
  }
  return r;
}

}  // namespace

SectorBasis::SectorBasis(int n_sites, int n_excitations, long budget)
    : n_sites_(n_sites), n_excitations_(n_excitations) {
  if (n_sites < 1 || n_sites > 64)
    throw std::invalid_argument("SectorBasis: need 1 <= n_sites <= 64");
  if (n_excitations < 0 || n_excitations > n_sites)
    throw std::invalid_argument("SectorBasis: need 0 <= n_excitations <= n_sites");
  const long dim = binomial(n_sites, n_excitations);
  if (dim > budget)
    throw std::invalid_argument("SectorBasis: sector dimension " + std::to_string(dim) +
                                " exceeds budget " + std::to_string(budget));
  masks_.reserve(dim);
  if (n_excitations == 0) {
    masks_.push_back(0);
    return;
  }
  // Gosper's hack walks the n-bit subsets in increasing order; the loop is
  // counted by the known dimension so no 2^M limit value is ever formed
  // (which would overflow at M = 64).
  std::uint64_t v = n_excitations == 64 ? ~std::uint64_t{0}
                                        : (std::uint64_t{1} << n_excitations) - 1;
  for (long i = 0; i < dim; ++i) {
    masks_.push_back(v);
    if (i + 1 == dim) break;
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  }
}

long SectorBasis::index_of(std::uint64_t mask) const {
  const auto it = std::lower_bound(masks_.begin(), masks_.end(), mask);
  if (it == masks_.end() || *it != mask) return -1;
  return static_cast<long>(it - masks_.begin());
}

std::vector<int> SectorBasis::occupied_sites(std::uint64_t mask) const {
  std::vector<int> sites;
  for (int i = 1; i <= n_sites_; ++i)
    if (occupied(mask, i)) sites.push_back(i);
  return sites;
}

Eigen::SparseMatrix<double> build_sector_hamiltonian(
    const SectorBasis& basis, const std::vector<Bond>& bonds,
    const std::vector<double>& onsite) {
  if (onsite.size() != static_cast<std::size_t>(basis.sites()))
    throw std::invalid_argument("build_sector_hamiltonian(): one on-site energy per site");
  const long dim = basis.dimension();
  const int m = basis.sites();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(dim * (bonds.size() + 1));
  for (long k = 0; k < dim; ++k) {
    const std::uint64_t mask = basis.mask(k);
    double diag = 0.0;
    for (int i = 1; i <= m; ++i)
      if (basis.occupied(mask, i)) diag += onsite[i - 1];
    if (diag != 0.0) trip.emplace_back(k, k, diag);
    for (const Bond& b : bonds) {
      // Bond rows are 0-based; sites are 1-based.
      const std::uint64_t bit_a = SectorBasis::site_bit(static_cast<int>(b.a) + 1, m);
      const std::uint64_t bit_b = SectorBasis::site_bit(static_cast<int>(b.b) + 1, m);
      const bool occ_a = mask & bit_a;
      const bool occ_b = mask & bit_b;
      if (occ_a == occ_b) continue;
      const std::uint64_t other = mask ^ bit_a ^ bit_b;
      if (other < mask) continue;  // add each pair once, symmetrize below
      const long j = basis.index_of(other);
      trip.emplace_back(k, j, b.g);
      trip.emplace_back(j, k, b.g);
    }
  }
  Eigen::SparseMatrix<double> h(dim, dim);
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

Eigen::SparseMatrix<double> build_spin_sector_hamiltonian(const LatticeSpec& spec,
                                                          int n_excitations, long budget) {
  validate(spec);
  if (spec.statistics != Statistics::Spin)
    throw std::invalid_argument(
        "build_spin_sector_hamiltonian(): spec.statistics must be Spin");
  const long m = spec.site_count();
  if (m > 64)
    throw std::invalid_argument("build_spin_sector_hamiltonian(): at most 64 sites");
  SectorBasis basis(static_cast<int>(m), n_excitations, budget);
  std::vector<double> onsite(m);
  for (long i = 0; i < m; ++i) onsite[i] = onsite_energy(spec, i);
  return build_sector_hamiltonian(basis, lattice_bonds(spec), onsite);
}

}  // namespace latticeflux
