#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace spinstar {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Basis index i encodes |q_0 q_1 ... q_{n-1}> with qubit 0 stored in the most
// significant bit. For the spin star, qubit 0 is the central spin and qubits
// 1..m are the peripheral spins in ring order.
inline std::size_t bit_of(int qubit, int n_qubits) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

// Physical parameters in natural units (hbar = k_B = 1).
struct SpinStarParams {
  int m = 3;           // number of peripheral spins
  double omega = 1.0;  // common natural frequency
  double epsilon = 0;  // central <-> peripheral coupling
  double eta = 0;      // peripheral ring coupling

  int n_qubits() const { return m + 1; }
  std::size_t dim() const { return std::size_t{1} << n_qubits(); }

  // Throws std::invalid_argument unless m >= 2, omega > 0 and all finite.
  void validate() const;
};

// Dense square matrix that is Hermitian to 1e-12 per entry and whose
// dimension is a power of two.
class HermitianOperator {
 public:
  static constexpr double kTolerance = 1e-12;

  HermitianOperator() = default;
  // Throws std::invalid_argument on a non-square or non power-of-two matrix
  // and NumericalError if the matrix is not Hermitian to `tol`.
  explicit HermitianOperator(Matrix entries, double tol = kTolerance);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Matrix entries_;
};

double hermiticity_defect(const Matrix& a);
bool is_power_of_two(std::size_t n);

enum class PauliKind { z, plus, minus, x, y };

// Single-site operator embedded in the n-qubit space. sigma_z|1> = +|1>,
// sigma_+|0> = |1>. Plus and minus are not Hermitian, hence the plain Matrix.
Matrix pauli_operator(int site, PauliKind kind, int n_qubits);

// Spin-star Hamiltonian with ring couplings among the peripheral spins,
// using the cyclic closure sigma_{m+1} = sigma_1. Assembled directly from
// basis bit flips.
HermitianOperator build_hamiltonian(const SpinStarParams& params);

// N = sum_k |1><1|_k, diagonal with entries popcount(i).
Matrix excitation_number_operator(int n_qubits);

// Permutation unitary moving the state of peripheral spin k onto spin k+1
// (cyclic over the ring). With include_central the register has m+1 qubits
// and qubit 0 is left alone; otherwise it holds the m peripheral spins only.
Matrix peripheral_rotation(int m, bool include_central);

struct Sector {
  int excitations = 0;
  std::vector<std::size_t> indices;  // ascending
};

struct SectorMap {
  int n_qubits = 0;
  std::vector<Sector> sectors;  // sectors[k].excitations == k
};

SectorMap sector_map(int n_qubits);

// Submatrix on the given rows/columns, preserving the order of `sector`.
// Sector sizes are binomial, so the block is returned as a plain Matrix.
// Throws std::invalid_argument on out-of-range or duplicate indices.
Matrix restrict_to_sector(const Matrix& op, const std::vector<std::size_t>& sector);

}  // namespace spinstar
