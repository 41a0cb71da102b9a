#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "latticeflux/sector.hpp"

namespace latticeflux {

/** Amplitudes over one excitation sector of a 2L-site ladder. */
struct SectorState {
  SectorBasis basis;
  Eigen::VectorXcd amplitudes;
};

/**
 * One rung of a product pattern: empty, doubly occupied, or the
 * single-excitation superposition (|top⟩ + e^{iφ}|bottom⟩)/√2 with
 * top = 2r−1, bottom = 2r. φ = 0 and φ = π are the symmetric and
 * antisymmetric combinations written S and T in pattern strings.
 */
struct RungFactor {
  enum class Kind { Empty, Full, Bell };
  Kind kind = Kind::Empty;
  std::complex<double> bottom_phase{1.0, 0.0};

  static RungFactor empty() { return {Kind::Empty, {1.0, 0.0}}; }
  static RungFactor full() { return {Kind::Full, {1.0, 0.0}}; }
  static RungFactor bell(double phi);
  static RungFactor from_char(char c);  // O, I, S, T
};

// e^{iφ} with the φ = 0, ±π cases kept exact.
std::complex<double> unit_phase(double phi);

SectorState pattern_state(const std::vector<RungFactor>& rungs);
SectorState pattern_state(const std::string& pattern);

// "STST…" or "TSTS…" of the given length.
std::string alternating_pattern(char start, int length);

/** Alternating background of length−1 rungs starting with S or T, with a
 * doubly occupied rung inserted at 1-based position (length 2 gives the
 * four states IS, SI, IT, TI).
 */
SectorState insertion_state(char background_start, int position, int length);

/** (σ^+_top σ^+_top' + e^{iφ} σ^+_bot σ^+_bot')|vac⟩/√2 on two adjacent
 * central rungs: both excitations on the same leg, superposed between the
 * legs. Not a rung product; its ballistic character depends on φ.
 */
SectorState two_exciton_state(double phi, int length);

// O…O S A_φ S A_φ O…O centered, four excitations.
SectorState four_exciton_state(double phi, int length);

// O…O S T S O…O centered, three excitations.
SectorState defect_triplet_state(int length);

// Full-space vector of length 2^(2L); the basis index of a configuration
// is its mask. Capped at 2L ≤ 14.
Eigen::VectorXcd embed_full_space(const SectorState& state);

// Inverse of embed_full_space for vectors supported on one sector; mixed
// excitation numbers are rejected.
SectorState project_to_sector(const Eigen::Ref<const Eigen::VectorXcd>& full, int n_sites);

// |ket⟩⟨bra| between two rung patterns, on the full 2^(2L) space.
Eigen::SparseMatrix<std::complex<double>> pattern_projector(const std::string& ket,
                                                            const std::string& bra);

/**
 * The four edge jump operators of the alternating-pattern subspace:
 * injection replaces the first rung of each parity family with I, and
 * extraction turns a terminal I back into the family pattern,
 *
 *   |I,alt_S(2..L)⟩⟨alt_S|,  |I,alt_T(2..L)⟩⟨alt_T|,
 *   |alt_S⟩⟨alt_S(1..L−1),I|,  |alt_T⟩⟨alt_T(1..L−1),I|.
 *
 * All four map states that pass the ballistic check onto states that
 * pass it.
 */
std::vector<Eigen::SparseMatrix<std::complex<double>>> edge_jump_operators(int length);

}  // namespace latticeflux
