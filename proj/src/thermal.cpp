#include "spinstar/thermal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "spinstar/errors.hpp"

namespace spinstar {

namespace {

constexpr double kWeightFloor = 1e-300;

void symmetrize_and_normalize(Matrix& a) {
  a = 0.5 * (a + a.adjoint()).eval();
  const double tr = a.trace().real();
  if (!(tr > 0)) throw NumericalError("state has non-positive trace");
  a /= tr;
}

// Mixture sum_j w_j |v_j><v_j| over the columns with nonzero weight.
Matrix weighted_projector_sum(const Matrix& vecs, const std::vector<double>& w) {
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < w.size(); ++j)
    if (w[j] > 0) cols.push_back(static_cast<Eigen::Index>(j));
  Matrix scaled(vecs.rows(), static_cast<Eigen::Index>(cols.size()));
  Matrix plain(vecs.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    plain.col(kk) = vecs.col(cols[k]);
    scaled.col(kk) = vecs.col(cols[k]) * w[static_cast<std::size_t>(cols[k])];
  }
  return scaled * plain.adjoint();
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix entries, Trusted) : entries_(std::move(entries)) {}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() ||
      !is_power_of_two(static_cast<std::size_t>(entries_.rows())))
    throw std::invalid_argument("density matrix must be square with power-of-two dimension");
  const double defect = hermiticity_defect(entries_);
  if (defect > kHermitianTol)
    throw NumericalError("density matrix is not Hermitian (defect " + std::to_string(defect) +
                         ")");
  const cplx tr = entries_.trace();
  if (std::abs(tr - cplx{1.0, 0.0}) > kTraceTol)
    throw NumericalError("density matrix trace is " + std::to_string(tr.real()) + ", not 1");
}

DensityMatrix DensityMatrix::from_matrix(Matrix entries) {
  DensityMatrix rho(std::move(entries));
  const double lo = rho.min_eigenvalue();
  if (lo < kPositivityFloor)
    throw NumericalError("density matrix has negative eigenvalue " + std::to_string(lo));
  return rho;
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-12) throw std::invalid_argument("state must be normalized");
  Matrix p = psi * psi.adjoint();
  symmetrize_and_normalize(p);
  return DensityMatrix(std::move(p));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("invalid qubit count");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim), Trusted{});
}

int DensityMatrix::n_qubits() const { return std::countr_zero(dim()); }

double DensityMatrix::min_eigenvalue() const { return eigvalsh(entries_).minCoeff(); }

Temperature::Temperature(double value) : t(value) {
  if (!std::isfinite(value) || value < 0)
    throw std::invalid_argument("temperature must be finite and non-negative");
}

DensityMatrix gibbs_state(const SpectralDecomposition& spec, double t, double energy_scale) {
  if (!(t > 0) || !std::isfinite(t)) throw std::invalid_argument("gibbs_state needs t > 0");
  if (!(energy_scale > 0)) throw std::invalid_argument("energy scale must be positive");
  if (spec.size() == 0) throw std::invalid_argument("gibbs_state: empty spectrum");
  const double lo = spec.eigenvalues.minCoeff();
  const double beta = 1.0 / (t * energy_scale);
  std::vector<double> w(spec.size());
  double z = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double x = std::exp(-(spec.eigenvalues(static_cast<Eigen::Index>(i)) - lo) * beta);
    w[i] = x < kWeightFloor ? 0.0 : x;
    z += w[i];
  }
  for (double& x : w) x /= z;
  Matrix rho = weighted_projector_sum(spec.eigenvectors, w);
  symmetrize_and_normalize(rho);
  return DensityMatrix(std::move(rho));
}

DensityMatrix gibbs_state(const HermitianOperator& h, Temperature temp, double energy_scale) {
  const SpectralDecomposition spec = eigh(h);
  if (temp.is_zero()) return zero_temperature_state(spec);
  return gibbs_state(spec, temp.t, energy_scale);
}

DensityMatrix zero_temperature_state(const SpectralDecomposition& spec, double tol) {
  const GroundManifold g = ground_manifold(spec, tol);
  Matrix rho = g.basis * g.basis.adjoint() / static_cast<double>(g.degeneracy);
  symmetrize_and_normalize(rho);
  return DensityMatrix(std::move(rho));
}

DensityMatrix zero_temperature_state(const SpectralDecomposition& spec) {
  if (spec.size() == 0) throw std::invalid_argument("zero_temperature_state: empty spectrum");
  return zero_temperature_state(spec, default_degeneracy_tolerance(spec.eigenvalues.minCoeff()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep, int n_qubits) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: nothing to keep");
  if (n_qubits < 1 || rho.dim() != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("partial_trace: qubit count does not match the state");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("partial_trace: duplicate qubit index");
  if (kept.front() < 0 || kept.back() >= n_qubits)
    throw std::invalid_argument("partial_trace: qubit index out of range");

  std::vector<int> traced;
  for (int q = 0; q < n_qubits; ++q)
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  // Full-register offsets of each reduced (kept) index and each traced configuration.
  auto scatter = [n_qubits](std::size_t local, const std::vector<int>& qubits) {
    const int width = static_cast<int>(qubits.size());
    std::size_t full = 0;
    for (int p = 0; p < width; ++p)
      if (local & bit_of(p, width)) full |= bit_of(qubits[static_cast<std::size_t>(p)], n_qubits);
    return full;
  };
  const std::size_t dk = std::size_t{1} << nk;
  const std::size_t dt = std::size_t{1} << nt;
  std::vector<std::size_t> kept_off(dk), traced_off(dt);
  for (std::size_t i = 0; i < dk; ++i) kept_off[i] = scatter(i, kept);
  for (std::size_t i = 0; i < dt; ++i) traced_off[i] = scatter(i, traced);

  const Matrix& a = rho.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      cplx s{};
      for (std::size_t e = 0; e < dt; ++e)
        s += a(static_cast<Eigen::Index>(kept_off[r] | traced_off[e]),
               static_cast<Eigen::Index>(kept_off[c] | traced_off[e]));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s;
    }
  symmetrize_and_normalize(out);
  return DensityMatrix(std::move(out));
}

ThermalSolution solve_thermal(const SpinStarParams& params, Temperature temp, Solver solver) {
  params.validate();
  const HermitianOperator h = build_hamiltonian(params);
  const int n = params.n_qubits();
  const SpectralDecomposition spec =
      solver == Solver::blocked ? spectrum_blocked(h, sector_map(n)) : eigh(h);
  const GroundManifold g = ground_manifold(spec);
  const DensityMatrix full = temp.is_zero() ? zero_temperature_state(spec, g.tolerance)
                                            : gibbs_state(spec, temp.t, params.omega);
  std::vector<int> peripheral(static_cast<std::size_t>(params.m));
  std::iota(peripheral.begin(), peripheral.end(), 1);
  return ThermalSolution{partial_trace(full, peripheral, n), g.energy, g.degeneracy};
}

DensityMatrix reduced_thermal_state(const SpinStarParams& params, Temperature temp,
                                    Solver solver) {
  return solve_thermal(params, temp, solver).reduced;
}

}  // namespace spinstar
