#include "latticeflux/liouville.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/SVD>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

#include "latticeflux/strings.hpp"

namespace latticeflux {

namespace {

using Complex = std::complex<double>;
using Sparse = Eigen::SparseMatrix<Complex>;

Sparse sparse_identity(long dim) {
  Sparse id(dim, dim);
  id.setIdentity();
  return id;
}

// a at one site of a bosonic chain, a|k⟩ = √k |k−1⟩ truncated at n_max.
Sparse bose_lowering_local(int n_max) {
  Sparse a(n_max + 1, n_max + 1);
  for (int k = 1; k <= n_max; ++k) a.insert(k - 1, k) = std::sqrt(double(k));
  a.makeCompressed();
  return a;
}

// Site s (0-based) as the s-th Kronecker factor, site 0 slowest, matching
// the fermionic bit convention where site 1 is the most significant bit.
Sparse embed_boson(const Sparse& local, int site, int n_sites) {
  const long d = local.rows();
  Sparse out = sparse_identity(1);
  for (int j = 0; j < n_sites; ++j) {
    Sparse next = j == site ? local : sparse_identity(d);
    out = Eigen::kroneckerProduct(out, next).eval();
  }
  return out;
}

std::vector<Sparse> lowering_operators(const LatticeSpec& spec, int n_max, long dim_cap) {
  const int n_sites = static_cast<int>(spec.site_count());
  std::vector<Sparse> ops;
  ops.reserve(n_sites);
  if (spec.statistics == Statistics::Fermion) {
    if (n_sites > 14)
      throw std::invalid_argument("build_liouvillian(): fermionic lattice exceeds 14 sites");
    if ((1L << n_sites) > dim_cap)
      throw std::invalid_argument("build_liouvillian(): Hilbert space exceeds the cap");
    for (int s = 1; s <= n_sites; ++s)
      ops.push_back(matrix_representation(fermi_term(1.0, {{s, FermiKind::Annihilate}}), n_sites));
    return ops;
  }
  if (n_max < 1)
    throw std::invalid_argument("build_liouvillian(): bosonic systems need n_max >= 1");
  double dim = 1.0;
  for (int j = 0; j < n_sites; ++j) dim *= n_max + 1;
  if (dim > double(dim_cap))
    throw std::invalid_argument("build_liouvillian(): Hilbert space exceeds the cap");
  const Sparse local = bose_lowering_local(n_max);
  for (int s = 0; s < n_sites; ++s) ops.push_back(embed_boson(local, s, n_sites));
  return ops;
}

void append_dissipator(Sparse& generator, const Sparse& jump, const Sparse& id) {
  const Sparse decay = (jump.adjoint() * jump).eval();
  generator += Sparse(Eigen::kroneckerProduct(jump.conjugate(), jump));
  generator -= Sparse(0.5 * Sparse(Eigen::kroneckerProduct(id, decay)));
  generator -= Sparse(0.5 * Sparse(Eigen::kroneckerProduct(Sparse(decay.transpose()), id)));
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, long dim) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

Eigen::VectorXcd vec(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

// Trace of (sparse A)·(dense B) without forming the product.
Complex trace_product(const Sparse& a, const Eigen::Ref<const Eigen::MatrixXcd>& b) {
  Complex acc = 0.0;
  for (int col = 0; col < a.outerSize(); ++col)
    for (Sparse::InnerIterator it(a, col); it; ++it) acc += it.value() * b(col, it.row());
  return acc;
}

// Generator dimensions at or below this go through the dense SVD path,
// which also certifies kernel uniqueness.
constexpr long kDenseKernelLimit = 2048;

Eigen::VectorXcd dense_kernel(const Sparse& generator) {
  const Eigen::MatrixXcd g(generator);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g, Eigen::ComputeFullV);
  const Eigen::VectorXd sigma = svd.singularValues();
  const long m = sigma.size();
  const double tiny = 1e-10 * sigma[0];
  long kernel_dim = 0;
  for (long k = 0; k < m; ++k)
    if (sigma[k] < tiny) ++kernel_dim;
  if (kernel_dim == 0)
    throw std::runtime_error("oracle_steady_state(): generator has no kernel at this tolerance");
  if (kernel_dim > 1)
    throw std::runtime_error("oracle_steady_state(): stationary state is degenerate");
  return svd.matrixV().col(m - 1);
}

Eigen::VectorXcd sparse_kernel(const Sparse& generator, long dim) {
  // Rank is dim²−1 for a relaxing system; trading the first row for the
  // trace functional Σ ρ_ii = 1 pins the kernel vector directly.
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(generator.nonZeros() + dim);
  for (int col = 0; col < generator.outerSize(); ++col)
    for (Sparse::InnerIterator it(generator, col); it; ++it)
      if (it.row() != 0) triplets.emplace_back(it.row(), it.col(), it.value());
  for (long i = 0; i < dim; ++i)
    triplets.emplace_back(0, i * dim + i, Complex{1.0, 0.0});
  Sparse pinned(generator.rows(), generator.cols());
  pinned.setFromTriplets(triplets.begin(), triplets.end());
  pinned.makeCompressed();

  Eigen::SparseLU<Sparse> lu(pinned);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("oracle_steady_state(): sparse factorization failed");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(generator.rows());
  rhs[0] = 1.0;
  return lu.solve(rhs);
}

}  // namespace

LiouvilleSystem build_liouvillian(const LatticeSpec& spec, const BathSpec& baths, int n_max,
                                  long dim_cap) {
  validate(spec);
  validate(baths);
  if (spec.statistics == Statistics::Spin)
    throw std::invalid_argument("build_liouvillian(): spin lattices have no quadratic form");

  LiouvilleSystem system;
  system.lowering = lowering_operators(spec, n_max, dim_cap);
  const long dim = system.lowering.front().rows();
  system.hilbert_dim = dim;

  Sparse h(dim, dim);
  for (long i = 0; i < spec.site_count(); ++i)
    h += onsite_energy(spec, i) *
         Sparse(system.lowering[i].adjoint() * system.lowering[i]);
  for (const Bond& bond : lattice_bonds(spec)) {
    const Sparse hop = (system.lowering[bond.a].adjoint() * system.lowering[bond.b]).eval();
    h += bond.g * hop;
    h += bond.g * Sparse(hop.adjoint());
  }
  h.makeCompressed();
  system.hamiltonian = h;

  auto attach = [&](const std::vector<long>& sites, double rate, double occ,
                    std::vector<Sparse>& jumps) {
    for (long b : sites) {
      const double down = rate * (occ + 1.0);
      const double up = rate * occ;
      if (down > 0.0) jumps.push_back(Sparse(std::sqrt(down) * system.lowering[b]));
      if (up > 0.0) jumps.push_back(Sparse(std::sqrt(up) * system.lowering[b].adjoint()));
    }
  };
  attach(layer_sites(spec, 1), baths.rate_in, baths.occ_in, system.jumps_in);
  attach(layer_sites(spec, spec.transport_length()), baths.rate_out, baths.occ_out,
         system.jumps_out);

  const Sparse id = sparse_identity(dim);
  Sparse generator(dim * dim, dim * dim);
  generator = Complex{0.0, -1.0} *
              Sparse(Sparse(Eigen::kroneckerProduct(id, h)) -
                     Sparse(Eigen::kroneckerProduct(Sparse(h.transpose()), id)));
  for (const Sparse& jump : system.jumps_in) append_dissipator(generator, jump, id);
  for (const Sparse& jump : system.jumps_out) append_dissipator(generator, jump, id);
  generator.makeCompressed();
  system.generator = generator;
  return system;
}

Eigen::MatrixXcd apply_generator(const LiouvilleSystem& system,
                                 const Eigen::Ref<const Eigen::MatrixXcd>& rho) {
  return unvec(system.generator * vec(rho), system.hilbert_dim);
}

Eigen::MatrixXcd dissipator(const Sparse& jump, const Eigen::Ref<const Eigen::MatrixXcd>& rho) {
  const Eigen::MatrixXcd j_rho = jump * rho;
  const Eigen::MatrixXcd decay_rho = jump.adjoint() * j_rho;
  return j_rho * Eigen::MatrixXcd(jump.adjoint()) -
         0.5 * (decay_rho + decay_rho.adjoint());
}

Eigen::MatrixXcd oracle_steady_state(const LiouvilleSystem& system) {
  const long dim = system.hilbert_dim;
  Eigen::VectorXcd v = system.generator.rows() <= kDenseKernelLimit
                           ? dense_kernel(system.generator)
                           : sparse_kernel(system.generator, dim);

  Eigen::MatrixXcd rho = unvec(v, dim);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double trace = rho.trace().real();
  if (std::abs(trace) < 1e-12)
    throw std::runtime_error("oracle_steady_state(): kernel vector is traceless");
  rho /= trace;

  const double residual = generator_residual(system, rho);
  if (residual > 1e-8)
    throw std::runtime_error("oracle_steady_state(): stationarity residual too large");
  return rho;
}

double generator_residual(const LiouvilleSystem& system,
                          const Eigen::Ref<const Eigen::MatrixXcd>& rho) {
  const Eigen::VectorXcd v = vec(rho);
  return (system.generator * v).norm() / v.norm();
}

Eigen::MatrixXcd oracle_correlations(const LiouvilleSystem& system,
                                     const Eigen::Ref<const Eigen::MatrixXcd>& rho) {
  const long n = static_cast<long>(system.lowering.size());
  Eigen::MatrixXcd c(n, n);
  for (long k = 0; k < n; ++k) {
    // C_jk = Tr(rho a_j† a_k) = Tr(a_j† · (a_k rho))
    const Eigen::MatrixXcd m = system.lowering[k] * rho;
    for (long j = 0; j < n; ++j)
      c(j, k) = trace_product(Sparse(system.lowering[j].adjoint()), m);
  }
  return c;
}

Eigen::VectorXd oracle_occupations(const LiouvilleSystem& system,
                                   const Eigen::Ref<const Eigen::MatrixXcd>& rho) {
  const long n = static_cast<long>(system.lowering.size());
  Eigen::VectorXd occ(n);
  for (long i = 0; i < n; ++i) {
    const Eigen::MatrixXcd m = system.lowering[i] * rho;
    occ[i] = trace_product(Sparse(system.lowering[i].adjoint()), m).real();
  }
  return occ;
}

FluxReport oracle_flux(const LiouvilleSystem& system,
                       const Eigen::Ref<const Eigen::MatrixXcd>& rho) {
  auto side = [&](const std::vector<Sparse>& jumps) {
    double j = 0.0;
    for (const Sparse& jump : jumps)
      j += trace_product(system.hamiltonian, dissipator(jump, rho)).real();
    return j;
  };
  FluxReport report;
  report.j_in = side(system.jumps_in);
  report.j_out = side(system.jumps_out);
  report.residual = std::abs(report.j_in + report.j_out);
  return report;
}

Eigen::MatrixXcd propagate(const LiouvilleSystem& system,
                           const Eigen::Ref<const Eigen::MatrixXcd>& rho0, double time,
                           double dt) {
  if (!(time >= 0.0) || !(dt > 0.0))
    throw std::invalid_argument("propagate(): time must be >= 0 and dt > 0");
  const long steps = std::max<long>(1, static_cast<long>(std::ceil(time / dt)));
  const double h = time / double(steps);
  Eigen::VectorXcd v = vec(rho0);
  for (long s = 0; s < steps; ++s) {
    const Eigen::VectorXcd k1 = system.generator * v;
    const Eigen::VectorXcd k2 = system.generator * (v + 0.5 * h * k1);
    const Eigen::VectorXcd k3 = system.generator * (v + 0.5 * h * k2);
    const Eigen::VectorXcd k4 = system.generator * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return unvec(v, system.hilbert_dim);
}

}  // namespace latticeflux
