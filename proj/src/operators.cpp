#include "spinstar/operators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "spinstar/errors.hpp"

namespace spinstar {

void SpinStarParams::validate() const {
  if (m < 2) throw std::invalid_argument("m must be at least 2, got " + std::to_string(m));
  if (!std::isfinite(omega) || omega <= 0)
    throw std::invalid_argument("omega must be a finite positive number");
  if (!std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be finite");
  if (!std::isfinite(eta)) throw std::invalid_argument("eta must be finite");
}

bool is_power_of_two(std::size_t n) { return n != 0 && std::has_single_bit(n); }

double hermiticity_defect(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix entries, double tol) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("HermitianOperator requires a square matrix");
  if (!is_power_of_two(static_cast<std::size_t>(entries_.rows())))
    throw std::invalid_argument("HermitianOperator dimension must be a power of two");
  const double defect = hermiticity_defect(entries_);
  if (defect > tol)
    throw NumericalError("matrix is not Hermitian (max |A - A^dagger| = " + std::to_string(defect) +
                         ")");
}

namespace {

Eigen::Matrix2cd single_site(PauliKind kind) {
  const cplx i{0.0, 1.0};
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  // rows/cols ordered |0>, |1>
  switch (kind) {
    case PauliKind::z:
      s(0, 0) = -1.0;
      s(1, 1) = 1.0;
      break;
    case PauliKind::plus:
      s(1, 0) = 1.0;
      break;
    case PauliKind::minus:
      s(0, 1) = 1.0;
      break;
    case PauliKind::x:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case PauliKind::y:
      s(0, 1) = i;
      s(1, 0) = -i;
      break;
  }
  return s;
}

// Adds a * (sigma_{k,+} sigma_{j,-} + sigma_{k,-} sigma_{j,+}) to h.
void add_exchange(Matrix& h, int k, int j, double a, int n_qubits) {
  const std::size_t bk = bit_of(k, n_qubits);
  const std::size_t bj = bit_of(j, n_qubits);
  const auto dim = static_cast<std::size_t>(h.rows());
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & bj) && !(i & bk)) {
      const std::size_t f = i ^ (bj | bk);
      const auto ii = static_cast<Eigen::Index>(i);
      const auto ff = static_cast<Eigen::Index>(f);
      h(ff, ii) += a;
      h(ii, ff) += a;
    }
  }
}

}  // namespace

Matrix pauli_operator(int site, PauliKind kind, int n_qubits) {
  if (n_qubits <= 0) throw std::invalid_argument("n_qubits must be positive");
  if (n_qubits > 30) throw std::invalid_argument("n_qubits too large for a dense operator");
  if (site < 0 || site >= n_qubits)
    throw std::invalid_argument("site " + std::to_string(site) + " out of range for " +
                                std::to_string(n_qubits) + " qubits");
  const Eigen::Matrix2cd s = single_site(kind);
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t mask = bit_of(site, n_qubits);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const int b = (col & mask) ? 1 : 0;
    for (int b_out = 0; b_out < 2; ++b_out) {
      const cplx v = s(b_out, b);
      if (v == cplx{}) continue;
      const std::size_t row = b_out ? (col | mask) : (col & ~mask);
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
    }
  }
  return out;
}

HermitianOperator build_hamiltonian(const SpinStarParams& params) {
  params.validate();
  const int n = params.n_qubits();
  const auto dim = static_cast<Eigen::Index>(params.dim());
  Matrix h = Matrix::Zero(dim, dim);

  for (Eigen::Index i = 0; i < dim; ++i) {
    const int up = std::popcount(static_cast<std::size_t>(i));
    h(i, i) = 0.5 * params.omega * static_cast<double>(2 * up - n);
  }
  for (int k = 1; k <= params.m; ++k) {
    add_exchange(h, k, 0, params.epsilon, n);
    add_exchange(h, k, k % params.m + 1, params.eta, n);
  }
  return HermitianOperator(std::move(h));
}

Matrix excitation_number_operator(int n_qubits) {
  if (n_qubits <= 0) throw std::invalid_argument("n_qubits must be positive");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    out(i, i) = static_cast<double>(std::popcount(static_cast<std::size_t>(i)));
  return out;
}

Matrix peripheral_rotation(int m, bool include_central) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  const int n = include_central ? m + 1 : m;
  const int first = include_central ? 1 : 0;
  const std::size_t dim = std::size_t{1} << n;
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t in = 0; in < dim; ++in) {
    std::size_t out = include_central ? (in & bit_of(0, n)) : 0;
    for (int p = 0; p < m; ++p) {
      if (in & bit_of(first + p, n)) out |= bit_of(first + (p + 1) % m, n);
    }
    u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) = 1.0;
  }
  return u;
}

SectorMap sector_map(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be at least 1");
  if (n_qubits > 30) throw std::invalid_argument("n_qubits too large");
  SectorMap map;
  map.n_qubits = n_qubits;
  map.sectors.resize(static_cast<std::size_t>(n_qubits) + 1);
  for (int k = 0; k <= n_qubits; ++k) map.sectors[static_cast<std::size_t>(k)].excitations = k;
  const std::size_t dim = std::size_t{1} << n_qubits;
  for (std::size_t i = 0; i < dim; ++i)
    map.sectors[static_cast<std::size_t>(std::popcount(i))].indices.push_back(i);
  return map;
}

Matrix restrict_to_sector(const Matrix& op, const std::vector<std::size_t>& sector) {
  const auto dim = static_cast<std::size_t>(op.rows());
  std::vector<bool> seen(dim, false);
  for (std::size_t idx : sector) {
    if (idx >= dim)
      throw std::invalid_argument("sector index " + std::to_string(idx) + " out of range");
    if (seen[idx]) throw std::invalid_argument("duplicate sector index " + std::to_string(idx));
    seen[idx] = true;
  }
  const auto n = static_cast<Eigen::Index>(sector.size());
  Matrix block(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      block(r, c) = op(static_cast<Eigen::Index>(sector[static_cast<std::size_t>(r)]),
                       static_cast<Eigen::Index>(sector[static_cast<std::size_t>(c)]));
  return block;
}

}  // namespace spinstar
