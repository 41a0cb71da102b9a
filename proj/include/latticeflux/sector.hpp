#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "latticeflux/lattice.hpp"

namespace latticeflux {

/**
 * Configuration basis of a fixed excitation-number sector on M ≤ 64 sites (one mask bit per site).
 *
 * A configuration is a bitmask in which site i (1-based) occupies bit
 * (M − i), so site 1 is the most significant bit and the full-space basis
 * index of a configuration equals its mask. Masks are stored ascending,
 * which orders the basis canonically; index_of is a binary search.
 */
class SectorBasis {
 public:
  SectorBasis(int n_sites, int n_excitations, long budget = kDefaultBudget);

  int sites() const { return n_sites_; }
  int excitations() const { return n_excitations_; }
  long dimension() const { return static_cast<long>(masks_.size()); }

  std::uint64_t mask(long index) const { return masks_[index]; }
  const std::vector<std::uint64_t>& masks() const { return masks_; }

  // Index of the configuration, or -1 when it lies outside the sector.
  long index_of(std::uint64_t mask) const;

  static std::uint64_t site_bit(int site, int n_sites) {
    return std::uint64_t{1} << (n_sites - site);
  }
  bool occupied(std::uint64_t mask, int site) const {
    return mask & site_bit(site, n_sites_);
  }

  // Occupied sites of a configuration, ascending.
  std::vector<int> occupied_sites(std::uint64_t mask) const;

  static constexpr long kDefaultBudget = 1L << 21;

 private:
  int n_sites_;
  int n_excitations_;
  std::vector<std::uint64_t> masks_;
};

/**
 * Hamiltonian of the n-excitation sector of a spin lattice: diagonal
 * entries are the summed on-site energies of the occupied sites (n·omega
 * for uniform lattices), and every nearest-neighbour bond contributes its
 * coupling between configurations that differ by moving one excitation
 * across that bond. Hermitian and real by construction; excitation number
 * is conserved because the builder never leaves the sector.
 */
Eigen::SparseMatrix<double> build_spin_sector_hamiltonian(
    const LatticeSpec& spec, int n_excitations,
    long budget = SectorBasis::kDefaultBudget);

// Same matrix over an already-built basis, from an explicit bond list.
Eigen::SparseMatrix<double> build_sector_hamiltonian(
    const SectorBasis& basis, const std::vector<Bond>& bonds,
    const std::vector<double>& onsite);

}  // namespace latticeflux
