#include "spinstar/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "spinstar/errors.hpp"

namespace spinstar {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kBlockTol = 1e-10;

}  // namespace

SpectralDecomposition eigh(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigh requires a square matrix");
  const double defect = hermiticity_defect(a);
  if (defect > kHermitianTol)
    throw NumericalError("eigh: input is not Hermitian (defect " + std::to_string(defect) + ")");
  SpectralDecomposition out;
  if (a.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("eigh: solver did not converge");
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  return out;
}

Eigen::VectorXd eigvalsh(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigvalsh requires a square matrix");
  const double defect = hermiticity_defect(a);
  if (defect > kHermitianTol)
    throw NumericalError("eigvalsh: input is not Hermitian (defect " + std::to_string(defect) +
                         ")");
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigvalsh: solver did not converge");
  return solver.eigenvalues();
}

SpectralDecomposition spectrum_blocked(const HermitianOperator& op, const SectorMap& sectors) {
  const Matrix& a = op.matrix();
  const auto dim = static_cast<std::size_t>(a.rows());
  if (dim != (std::size_t{1} << sectors.n_qubits))
    throw std::invalid_argument("sector map does not match operator dimension");

  std::vector<int> label_of(dim, -1);
  for (const auto& s : sectors.sectors)
    for (std::size_t i : s.indices) label_of[i] = s.excitations;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if (label_of[r] != label_of[c] &&
          std::abs(a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) > kBlockTol)
        throw NumericalError("operator couples sectors " + std::to_string(label_of[r]) + " and " +
                             std::to_string(label_of[c]));

  struct Pair {
    double value;
    int label;
    std::size_t local;
    Vector vec;
  };
  std::vector<Pair> pairs;
  pairs.reserve(dim);
  for (const auto& s : sectors.sectors) {
    if (s.indices.empty()) continue;
    const SpectralDecomposition block = eigh(restrict_to_sector(a, s.indices));
    for (Eigen::Index j = 0; j < block.eigenvalues.size(); ++j) {
      Vector full = Vector::Zero(static_cast<Eigen::Index>(dim));
      for (std::size_t r = 0; r < s.indices.size(); ++r)
        full(static_cast<Eigen::Index>(s.indices[r])) =
            block.eigenvectors(static_cast<Eigen::Index>(r), j);
      pairs.push_back({block.eigenvalues(j), s.excitations, static_cast<std::size_t>(j),
                       std::move(full)});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return std::tie(x.value, x.label, x.local) < std::tie(y.value, y.label, y.local);
  });

  SpectralDecomposition out;
  const auto n = static_cast<Eigen::Index>(pairs.size());
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(static_cast<Eigen::Index>(dim), n);
  std::vector<int> labels(pairs.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& p = pairs[static_cast<std::size_t>(j)];
    out.eigenvalues(j) = p.value;
    out.eigenvectors.col(j) = p.vec;
    labels[static_cast<std::size_t>(j)] = p.label;
  }
  out.sector_labels = std::move(labels);
  return out;
}

std::array<double, 16> analytic_spectrum_m3(double omega, double epsilon, double eta) {
  const double r = std::sqrt(3.0 * epsilon * epsilon + eta * eta);
  std::array<double, 16> v{
      eta - r - omega,     -2.0 * omega,          -epsilon - eta,      -epsilon - eta,
      -2.0 * (epsilon - eta), epsilon - eta,      epsilon - eta,       2.0 * (epsilon + eta),
      -eta - omega,        -eta - omega,          eta + r - omega,     2.0 * omega,
      -eta + omega,        -eta + omega,          eta - r + omega,     eta + r + omega,
  };
  std::sort(v.begin(), v.end());
  return v;
}

Vector analytic_psi1_m3(double epsilon, double eta) {
  const double r = std::sqrt(3.0 * epsilon * epsilon + eta * eta);
  constexpr int n = 4;
  Vector psi = Vector::Zero(16);
  psi(static_cast<Eigen::Index>(bit_of(0, n))) = eta + r;
  for (int k = 1; k <= 3; ++k) psi(static_cast<Eigen::Index>(bit_of(k, n))) = -epsilon;
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("psi1 is undefined for epsilon = eta = 0");
  return psi / norm;
}

double default_degeneracy_tolerance(double lambda_min) {
  return 1e-9 * std::max(1.0, std::abs(lambda_min));
}

GroundManifold ground_manifold(const SpectralDecomposition& spec, double tol) {
  if (spec.size() == 0) throw std::invalid_argument("ground_manifold: empty spectrum");
  if (!(tol > 0)) throw std::invalid_argument("ground_manifold: tolerance must be positive");
  const double lo = spec.eigenvalues.minCoeff();
  std::vector<Eigen::Index> members;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
    if (spec.eigenvalues(i) <= lo + tol) members.push_back(i);

  GroundManifold g;
  g.energy = lo;
  g.tolerance = tol;
  g.degeneracy = static_cast<int>(members.size());
  g.basis.resize(spec.eigenvectors.rows(), static_cast<Eigen::Index>(members.size()));
  for (std::size_t j = 0; j < members.size(); ++j) {
    g.basis.col(static_cast<Eigen::Index>(j)) = spec.eigenvectors.col(members[j]);
    if (spec.sector_labels)
      g.sector_labels.push_back((*spec.sector_labels)[static_cast<std::size_t>(members[j])]);
  }
  return g;
}

GroundManifold ground_manifold(const SpectralDecomposition& spec) {
  if (spec.size() == 0) throw std::invalid_argument("ground_manifold: empty spectrum");
  return ground_manifold(spec, default_degeneracy_tolerance(spec.eigenvalues.minCoeff()));
}

}  // namespace spinstar
