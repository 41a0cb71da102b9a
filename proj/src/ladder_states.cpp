#include "latticeflux/ladder_states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latticeflux {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct Branch {
  std::uint64_t mask = 0;
  std::complex<double> amp{1.0, 0.0};
};

int excitations_of(const std::vector<RungFactor>& rungs) {
  int n = 0;
  for (const RungFactor& r : rungs)
    n += r.kind == RungFactor::Kind::Full ? 2 : r.kind == RungFactor::Kind::Bell ? 1 : 0;
  return n;
}

}  // namespace

std::complex<double> unit_phase(double phi) {
  if (phi == 0.0) return {1.0, 0.0};
  if (std::abs(std::abs(phi) - std::numbers::pi) < 1e-15) return {-1.0, 0.0};
  return std::polar(1.0, phi);
}

RungFactor RungFactor::bell(double phi) { return {Kind::Bell, unit_phase(phi)}; }

RungFactor RungFactor::from_char(char c) {
  switch (c) {
    case 'O': return empty();
    case 'I': return full();
    case 'S': return bell(0.0);
    case 'T': return bell(std::numbers::pi);
    default: throw std::invalid_argument("RungFactor::from_char(): pattern chars are O, I, S, T");
  }
}

SectorState pattern_state(const std::vector<RungFactor>& rungs) {
  const int length = static_cast<int>(rungs.size());
  if (length < 1) throw std::invalid_argument("pattern_state(): empty pattern");
  const int m = 2 * length;
  const int n = excitations_of(rungs);

  std::vector<Branch> branches{Branch{}};
  for (int r = 1; r <= length; ++r) {
    const RungFactor& factor = rungs[r - 1];
    const std::uint64_t top = SectorBasis::site_bit(2 * r - 1, m);
    const std::uint64_t bottom = SectorBasis::site_bit(2 * r, m);
    if (factor.kind == RungFactor::Kind::Empty) continue;
    if (factor.kind == RungFactor::Kind::Full) {
      for (Branch& b : branches) b.mask |= top | bottom;
      continue;
    }
    std::vector<Branch> next;
    next.reserve(2 * branches.size());
    for (const Branch& b : branches) {
      next.push_back({b.mask | top, b.amp * kInvSqrt2});
      next.push_back({b.mask | bottom, b.amp * kInvSqrt2 * factor.bottom_phase});
    }
    branches = std::move(next);
  }

  SectorState state{SectorBasis(m, n), Eigen::VectorXcd::Zero(0)};
  state.amplitudes = Eigen::VectorXcd::Zero(state.basis.dimension());
  for (const Branch& b : branches) state.amplitudes[state.basis.index_of(b.mask)] += b.amp;
  return state;
}

SectorState pattern_state(const std::string& pattern) {
  std::vector<RungFactor> rungs;
  rungs.reserve(pattern.size());
  for (char c : pattern) rungs.push_back(RungFactor::from_char(c));
  return pattern_state(rungs);
}

std::string alternating_pattern(char start, int length) {
  if (start != 'S' && start != 'T')
    throw std::invalid_argument("alternating_pattern(): start must be S or T");
  std::string p(length, 'S');
  for (int r = 0; r < length; ++r) p[r] = (r % 2 == 0) == (start == 'S') ? 'S' : 'T';
  return p;
}

SectorState insertion_state(char background_start, int position, int length) {
  if (length < 2) throw std::invalid_argument("insertion_state(): length must be >= 2");
  if (position < 1 || position > length)
    throw std::invalid_argument("insertion_state(): position out of range");
  std::string pattern = alternating_pattern(background_start, length - 1);
  pattern.insert(pattern.begin() + (position - 1), 'I');
  return pattern_state(pattern);
}

SectorState two_exciton_state(double phi, int length) {
  if (length < 2) throw std::invalid_argument("two_exciton_state(): length must be >= 2");
  const int m = 2 * length;
  const int r0 = length / 2;  // rungs r0, r0+1 straddle the middle
  const std::uint64_t top_pair = SectorBasis::site_bit(2 * r0 - 1, m) |
                                 SectorBasis::site_bit(2 * r0 + 1, m);
  const std::uint64_t bottom_pair = SectorBasis::site_bit(2 * r0, m) |
                                    SectorBasis::site_bit(2 * r0 + 2, m);
  SectorState state{SectorBasis(m, 2), Eigen::VectorXcd::Zero(0)};
  state.amplitudes = Eigen::VectorXcd::Zero(state.basis.dimension());
  state.amplitudes[state.basis.index_of(top_pair)] = kInvSqrt2;
  state.amplitudes[state.basis.index_of(bottom_pair)] = kInvSqrt2 * unit_phase(phi);
  return state;
}

SectorState four_exciton_state(double phi, int length) {
  if (length < 5) throw std::invalid_argument("four_exciton_state(): length must be >= 5");
  const int start = (length - 4) / 2 + 1;
  std::vector<RungFactor> rungs(length, RungFactor::empty());
  rungs[start - 1] = RungFactor::bell(0.0);
  rungs[start] = RungFactor::bell(phi);
  rungs[start + 1] = RungFactor::bell(0.0);
  rungs[start + 2] = RungFactor::bell(phi);
  return pattern_state(rungs);
}

SectorState defect_triplet_state(int length) {
  if (length < 3) throw std::invalid_argument("defect_triplet_state(): length must be >= 3");
  const int start = (length - 3) / 2 + 1;
  std::vector<RungFactor> rungs(length, RungFactor::empty());
  rungs[start - 1] = RungFactor::bell(0.0);
  rungs[start] = RungFactor::bell(std::numbers::pi);
  rungs[start + 1] = RungFactor::bell(0.0);
  return pattern_state(rungs);
}

Eigen::VectorXcd embed_full_space(const SectorState& state) {
  const int m = state.basis.sites();
  if (m > 14) throw std::invalid_argument("embed_full_space(): more than 14 sites");
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(1L << m);
  for (long k = 0; k < state.basis.dimension(); ++k)
    full[static_cast<long>(state.basis.mask(k))] = state.amplitudes[k];
  return full;
}

SectorState project_to_sector(const Eigen::Ref<const Eigen::VectorXcd>& full, int n_sites) {
  if (full.size() != (1L << n_sites))
    throw std::invalid_argument("project_to_sector(): vector is not a full-space vector");
  int n = -1;
  for (long mask = 0; mask < full.size(); ++mask) {
    if (full[mask] == std::complex<double>{0.0, 0.0}) continue;
    const int pop = static_cast<int>(__builtin_popcountll(static_cast<unsigned long long>(mask)));
    if (n == -1) n = pop;
    if (pop != n)
      throw std::invalid_argument("project_to_sector(): support spans several sectors");
  }
  if (n == -1) throw std::invalid_argument("project_to_sector(): zero vector");
  SectorState state{SectorBasis(n_sites, n), Eigen::VectorXcd::Zero(0)};
  state.amplitudes = Eigen::VectorXcd::Zero(state.basis.dimension());
  for (long k = 0; k < state.basis.dimension(); ++k)
    state.amplitudes[k] = full[static_cast<long>(state.basis.mask(k))];
  return state;
}

Eigen::SparseMatrix<std::complex<double>> pattern_projector(const std::string& ket,
                                                            const std::string& bra) {
  if (ket.size() != bra.size())
    throw std::invalid_argument("pattern_projector(): patterns must have equal length");
  const SectorState k = pattern_state(ket);
  const SectorState b = pattern_state(bra);
  const long dim = 1L << (2 * static_cast<int>(ket.size()));
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  for (long i = 0; i < k.basis.dimension(); ++i) {
    if (k.amplitudes[i] == std::complex<double>{0.0, 0.0}) continue;
    for (long j = 0; j < b.basis.dimension(); ++j) {
      if (b.amplitudes[j] == std::complex<double>{0.0, 0.0}) continue;
      triplets.emplace_back(static_cast<long>(k.basis.mask(i)),
                            static_cast<long>(b.basis.mask(j)),
                            k.amplitudes[i] * std::conj(b.amplitudes[j]));
    }
  }
  Eigen::SparseMatrix<std::complex<double>> op(dim, dim);
  op.setFromTriplets(triplets.begin(), triplets.end());
  return op;
}

std::vector<Eigen::SparseMatrix<std::complex<double>>> edge_jump_operators(int length) {
  if (length < 2) throw std::invalid_argument("edge_jump_operators(): length must be >= 2");
  std::vector<Eigen::SparseMatrix<std::complex<double>>> ops;
  ops.reserve(4);
  for (char start : {'S', 'T'}) {
    std::string full = alternating_pattern(start, length);
    std::string injected = full;
    injected[0] = 'I';
    ops.push_back(pattern_projector(injected, full));
  }
  for (char start : {'S', 'T'}) {
    std::string full = alternating_pattern(start, length);
    std::string drained = full;
    drained[length - 1] = 'I';
    ops.push_back(pattern_projector(full, drained));
  }
  return ops;
}

}  // namespace latticeflux
