#include "latticeflux/msd.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "latticeflux/sector.hpp"

namespace latticeflux {

Eigen::VectorXd sector_occupations(const SectorState& state) {
  const int m = state.basis.sites();
  Eigen::VectorXd occ = Eigen::VectorXd::Zero(m);
  for (long k = 0; k < state.basis.dimension(); ++k) {
    const double p = std::norm(state.amplitudes(k));
    if (p == 0.0) continue;
    const std::uint64_t mask = state.basis.mask(k);
    for (int s = 1; s <= m; ++s)
      if (mask & SectorBasis::site_bit(s, m)) occ(s - 1) += p;
  }
  return occ;
}

MsdSeries msd_evolution(const LatticeSpec& spec, const SectorState& initial, double t_max,
                        double dt, const KrylovOptions& opt, double guard) {
  validate(spec);
  if (dt <= 0.0 || t_max < 0.0)
    throw std::invalid_argument("msd_evolution(): need dt > 0 and t_max >= 0");
  const long m = spec.site_count();
  if (initial.basis.sites() != m)
    throw std::invalid_argument("msd_evolution(): state basis does not match the lattice");

  // Rung coordinate of every site, and the frozen center.
  Eigen::VectorXd rung(m);
  for (long i = 0; i < m; ++i) rung(i) = site_coordinates(spec, i).back();
  const Eigen::VectorXd occ0 = sector_occupations(initial);
  const double total = occ0.sum();
  if (total <= 0.0) throw std::invalid_argument("msd_evolution(): initial state is empty");
  const double center = rung.dot(occ0) / total;

  // msd and the boundary guard are both linear in the per-config weight,
  // so one pass over the basis per grid point suffices.
  const long dim = initial.basis.dimension();
  const int last_rung = spec.transport_length();
  const int mi = static_cast<int>(m);
  Eigen::VectorXd spread_weight(dim);
  Eigen::VectorXd edge_weight(dim);
  for (long k = 0; k < dim; ++k) {
    const std::uint64_t mask = initial.basis.mask(k);
    double w = 0.0;
    double e = 0.0;
    for (int s = 1; s <= mi; ++s) {
      if (!(mask & SectorBasis::site_bit(s, mi))) continue;
      const double d = rung(s - 1) - center;
      w += d * d;
      if (rung(s - 1) == 1 || rung(s - 1) == last_rung) e += 1.0;
    }
    spread_weight(k) = w;
    edge_weight(k) = e;
  }

  std::vector<double> onsite(m);
  for (long i = 0; i < m; ++i) onsite[i] = onsite_energy(spec, i);
  const Eigen::SparseMatrix<double> h =
      build_sector_hamiltonian(initial.basis, lattice_bonds(spec), onsite);

  const long n_steps = static_cast<long>(std::floor(t_max / dt + 0.5 + 1e-12));
  MsdSeries series;
  series.center = center;
  std::vector<double> msd_values;
  msd_values.reserve(n_steps + 1);

  Eigen::VectorXcd psi = initial.amplitudes;
  const double norm0 = psi.norm();
  double energy0 = 0.0;
  for (long k = 0; k <= n_steps; ++k) {
    if (k > 0) {
      int used = 0;
      psi = krylov_step(h, psi, dt, opt, &used);
      series.evolve.max_krylov_dim = std::max(series.evolve.max_krylov_dim, used);
      series.evolve.max_norm_drift =
          std::max(series.evolve.max_norm_drift, std::abs(psi.norm() - norm0));
    }
    const Eigen::VectorXd p = psi.cwiseAbs2();
    const double energy = psi.real().dot(h * psi.real().eval()) + psi.imag().dot(h * psi.imag().eval());
    if (k == 0) energy0 = energy;
    series.evolve.max_energy_drift =
        std::max(series.evolve.max_energy_drift, std::abs(energy - energy0));
    if (edge_weight.dot(p) >= guard) {
      series.boundary_truncated_at = k;
      break;
    }
    msd_values.push_back(spread_weight.dot(p));
  }

  const long n = static_cast<long>(msd_values.size());
  series.times = dt * Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
  series.msd.resize(n);
  for (long i = 0; i < n; ++i) series.msd(i) = msd_values[i];
  series.curvature = Eigen::VectorXd::Zero(std::max<long>(n - 2, 0));
  for (long i = 0; i + 2 < n; ++i)
    series.curvature(i) = (series.msd(i + 2) - 2.0 * series.msd(i + 1) + series.msd(i)) / (dt * dt);
  return series;
}

namespace {

template <typename Fold>
double fold_window(const MsdSeries& series, double t_lo, double t_hi, Fold&& fold) {
  bool hit = false;
  for (long i = 0; i < series.curvature.size(); ++i) {
    const double t = series.times(i + 1);
    if (t < t_lo || t > t_hi) continue;
    fold(series.curvature(i));
    hit = true;
  }
  if (!hit)
    throw std::invalid_argument("plateau window holds no curvature point");
  return 0.0;
}

}  // namespace

double plateau_max_deviation(const MsdSeries& series, double t_lo, double t_hi,
                             double reference) {
  double worst = 0.0;
  fold_window(series, t_lo, t_hi,
              [&](double c) { worst = std::max(worst, std::abs(c - reference)); });
  return worst;
}

double plateau_mean(const MsdSeries& series, double t_lo, double t_hi) {
  double sum = 0.0;
  long count = 0;
  fold_window(series, t_lo, t_hi, [&](double c) {
    sum += c;
    ++count;
  });
  return sum / static_cast<double>(count);
}

}  // namespace latticeflux
