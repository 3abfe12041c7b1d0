#pragma once

#include <vector>

#include "spinstar/operators.hpp"
#include "spinstar/spectra.hpp"

namespace spinstar {

// Hermitian, unit-trace, positive semidefinite operator on a register of qubits.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPositivityFloor = -1e-10;

  // Validates every invariant, including positivity (one eigendecomposition).
  static DensityMatrix from_matrix(Matrix entries);
  // |psi><psi| for a normalized state vector.
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  int n_qubits() const;
  const Matrix& matrix() const { return entries_; }
  double min_eigenvalue() const;

 private:
  struct Trusted {};
  DensityMatrix(Matrix entries, Trusted);
  explicit DensityMatrix(Matrix entries);  // checks Hermiticity and trace only

  Matrix entries_;

  friend DensityMatrix gibbs_state(const SpectralDecomposition&, double, double);
  friend DensityMatrix zero_temperature_state(const SpectralDecomposition&, double);
  friend DensityMatrix partial_trace(const DensityMatrix&, const std::vector<int>&, int);
};

// Dimensionless temperature k_B T / (hbar omega); t = 0 selects the ground
// manifold limit.
struct Temperature {
  double t = 0.0;

  explicit Temperature(double value);
  bool is_zero() const { return t == 0.0; }
};

// Normalized exp(-h / (t * energy_scale)), evaluated on the spectrum with the
// lowest eigenvalue shifted to zero. Weights below 1e-300 are dropped.
// t = 0 is routed to zero_temperature_state with the default tolerance.
DensityMatrix gibbs_state(const HermitianOperator& h, Temperature temp, double energy_scale);
DensityMatrix gibbs_state(const SpectralDecomposition& spec, double t, double energy_scale);

// Uniform mixture over the ground manifold: P / d_g.
DensityMatrix zero_temperature_state(const SpectralDecomposition& spec, double tol);
DensityMatrix zero_temperature_state(const SpectralDecomposition& spec);

// Marginal on the qubits in `keep`, in their original relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep, int n_qubits);

enum class Solver { blocked, full };

struct ThermalSolution {
  DensityMatrix reduced;  // peripheral spins after tracing out the central one
  double ground_energy = 0.0;
  int ground_degeneracy = 0;
};

// Hamiltonian -> Gibbs (or ground-manifold) state -> trace over the central spin.
ThermalSolution solve_thermal(const SpinStarParams& params, Temperature temp,
                              Solver solver = Solver::blocked);
DensityMatrix reduced_thermal_state(const SpinStarParams& params, Temperature temp,
                                    Solver solver = Solver::blocked);

}  // namespace spinstar
