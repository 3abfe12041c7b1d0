#include "spinstar/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "spinstar/errors.hpp"
#include "spinstar/spectra.hpp"

namespace spinstar {

Bipartition Bipartition::from_part_a(std::vector<int> part_a, int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("a bipartition needs at least two qubits");
  std::sort(part_a.begin(), part_a.end());
  if (part_a.empty()) throw std::invalid_argument("part A is empty");
  if (std::adjacent_find(part_a.begin(), part_a.end()) != part_a.end())
    throw std::invalid_argument("part A has duplicate qubits");
  if (part_a.front() < 0 || part_a.back() >= n_qubits)
    throw std::invalid_argument("part A qubit index out of range");
  if (static_cast<int>(part_a.size()) == n_qubits)
    throw std::invalid_argument("part A must be a proper subset");
  Bipartition b;
  for (int q = 0; q < n_qubits; ++q)
    if (!std::binary_search(part_a.begin(), part_a.end(), q)) b.part_b.push_back(q);
  b.part_a = std::move(part_a);
  return b;
}

HermitianOperator partial_transpose(const Matrix& rho, const std::vector<int>& part_a,
                                    int n_qubits) {
  if (rho.rows() != rho.cols() ||
      static_cast<std::size_t>(rho.rows()) != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("partial_transpose: dimension does not match qubit count");
  const Bipartition cut = Bipartition::from_part_a(part_a, n_qubits);
  std::size_t mask = 0;
  for (int q : cut.part_a) mask |= bit_of(q, n_qubits);

  const auto dim = static_cast<std::size_t>(rho.rows());
  Matrix out(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t si = (i & ~mask) | (j & mask);
      const std::size_t sj = (j & ~mask) | (i & mask);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rho(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(sj));
    }
  return HermitianOperator(std::move(out));
}

HermitianOperator partial_transpose(const DensityMatrix& rho, const std::vector<int>& part_a,
                                    int n_qubits) {
  return partial_transpose(rho.matrix(), part_a, n_qubits);
}

double raw_negativity(const DensityMatrix& rho, const std::vector<int>& part_a) {
  const HermitianOperator pt = partial_transpose(rho, part_a, rho.n_qubits());
  return eigvalsh(pt.matrix()).cwiseAbs().sum() - 1.0;
}

double negativity(const DensityMatrix& rho, const std::vector<int>& part_a) {
  return clamp_negativity(raw_negativity(rho, part_a));
}

double clamp_negativity(double raw) {
  if (raw < kClampFloor)
    throw NumericalError("negativity " + std::to_string(raw) +
                         " is below the numerical floor; the state is not positive");
  return std::max(raw, 0.0);
}

double geometric_mean(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("geometric mean of nothing");
  double log_sum = 0.0;
  for (double v : values) {
    if (v < 0) throw std::invalid_argument("geometric mean of a negative value");
    if (v == 0.0) return 0.0;
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

NegativityReport multipartite_negativity(const DensityMatrix& rho, int m) {
  if (m < 2) throw std::invalid_argument("multipartite negativity needs m >= 2");
  if (rho.dim() != (std::size_t{1} << m))
    throw std::invalid_argument("state dimension does not match m = " + std::to_string(m));
  NegativityReport report;
  std::vector<double> values;
  for (int n = 0; n < m; ++n) {
    Bipartition cut = Bipartition::from_part_a({n}, m);
    const double v = negativity(rho, cut.part_a);
    values.push_back(v);
    report.per_cut.push_back({std::move(cut), v});
  }
  report.multipartite = geometric_mean(values);
  return report;
}

}  // namespace spinstar
