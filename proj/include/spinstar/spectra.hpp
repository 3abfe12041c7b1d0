#pragma once

#include <array>
#include <optional>
#include <vector>

#include "spinstar/operators.hpp"

namespace spinstar {

// Eigenpairs in ascending eigenvalue order; column i of `eigenvectors` is the
// unit eigenvector for eigenvalues[i].
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;
  std::optional<std::vector<int>> sector_labels;  // excitation count per eigenpair

  std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
};

struct GroundManifold {
  double energy = 0.0;
  int degeneracy = 0;
  Matrix basis;  // dim x degeneracy, orthonormal columns
  double tolerance = 0.0;
  std::vector<int> sector_labels;  // empty when the spectrum is unlabelled
};

// Dense Hermitian eigendecomposition. Throws NumericalError if `a` deviates
// from Hermiticity by more than 1e-10 per entry.
SpectralDecomposition eigh(const Matrix& a);
inline SpectralDecomposition eigh(const HermitianOperator& a) { return eigh(a.matrix()); }

// Eigenvalues only, ascending.
Eigen::VectorXd eigvalsh(const Matrix& a);

// Diagonalizes each excitation sector separately and embeds the eigenvectors
// back into the full space. Ties in the sorted output are broken by sector
// label, then by position inside the sector. Throws NumericalError if `op`
// couples different sectors by more than 1e-10.
SpectralDecomposition spectrum_blocked(const HermitianOperator& op, const SectorMap& sectors);

// Closed-form spectrum of the m = 3 spin star, ascending.
std::array<double, 16> analytic_spectrum_m3(double omega, double epsilon, double eta);

// Normalized closed-form ground vector of the m = 3 star on the eta < omega
// branch: (eta + r)|1>_0|000> - epsilon |0>_0 (|100> + |010> + |001>), with
// r = sqrt(3 epsilon^2 + eta^2).
Vector analytic_psi1_m3(double epsilon, double eta);

// 1e-9 * max(1, |lambda_min|).
double default_degeneracy_tolerance(double lambda_min);

GroundManifold ground_manifold(const SpectralDecomposition& spec, double tol);
GroundManifold ground_manifold(const SpectralDecomposition& spec);

}  // namespace spinstar
