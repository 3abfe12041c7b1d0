#pragma once

#include <vector>

#include "spinstar/operators.hpp"
#include "spinstar/thermal.hpp"

namespace spinstar {

// Split of an n-qubit register into a nonempty proper subset and its complement.
struct Bipartition {
  std::vector<int> part_a;  // ascending
  std::vector<int> part_b;  // ascending

  // Throws std::invalid_argument unless part_a is a nonempty proper subset of
  // {0, ..., n_qubits-1} without duplicates.
  static Bipartition from_part_a(std::vector<int> part_a, int n_qubits);
};

struct CutNegativity {
  Bipartition cut;
  double value = 0.0;
};

struct NegativityReport {
  std::vector<CutNegativity> per_cut;  // one-vs-rest cuts ordered by spin index
  double multipartite = 0.0;
};

// Values of sum|lambda| - 1 in [kClampFloor, 0) are reported as 0; anything
// lower raises NumericalError.
inline constexpr double kClampFloor = -1e-9;
double clamp_negativity(double raw);

// <a b| rho^{T_A} |a' b'> = <a' b| rho |a b'>, with a the bits of part_a.
HermitianOperator partial_transpose(const DensityMatrix& rho, const std::vector<int>& part_a,
                                    int n_qubits);
HermitianOperator partial_transpose(const Matrix& rho, const std::vector<int>& part_a,
                                    int n_qubits);

// sum_i |lambda_i(rho^{T_A})| - 1 before clamping.
double raw_negativity(const DensityMatrix& rho, const std::vector<int>& part_a);
double negativity(const DensityMatrix& rho, const std::vector<int>& part_a);

// Geometric mean of the m one-spin-versus-rest negativities; exactly 0 when
// any cut vanishes. For m > 3 this is the direct generalization of the
// tripartite quantity and is not a certificate of genuine m-partite
// entanglement.
NegativityReport multipartite_negativity(const DensityMatrix& rho, int m);

// Geometric mean with the zero convention above.
double geometric_mean(const std::vector<double>& values);

}  // namespace spinstar
