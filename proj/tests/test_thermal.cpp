#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "spinstar/entanglement.hpp"
#include "spinstar/errors.hpp"
#include "spinstar/operators.hpp"
#include "spinstar/spectra.hpp"
#include "spinstar/thermal.hpp"

using namespace spinstar;

namespace {

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

void check_state(const DensityMatrix& rho) {
  CHECK(hermiticity_defect(rho.matrix()) <= 1e-12);
  CHECK(std::abs(rho.matrix().trace() - cplx(1.0)) <= 1e-12);
  CHECK(rho.min_eigenvalue() >= -1e-10);
}

}  // namespace

TEST_CASE("Temperature validation") {
  CHECK_NOTHROW(Temperature(0.0));
  CHECK(Temperature(0.0).is_zero());
  CHECK_THROWS_AS(Temperature{-0.1}, std::invalid_argument);
  CHECK_THROWS_AS(Temperature{INFINITY}, std::invalid_argument);
}

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS_AS(DensityMatrix::from_matrix(Matrix::Identity(2, 2)), NumericalError);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(neg), NumericalError);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(Matrix::Identity(3, 3) / 3.0), std::invalid_argument);
  CHECK_NOTHROW(DensityMatrix::from_matrix(Matrix::Identity(4, 4) / 4.0));
}

TEST_CASE("gibbs_state limits") {
  SUBCASE("flat Hamiltonian gives the identity") {
    const HermitianOperator zero(Matrix::Zero(8, 8));
    const DensityMatrix rho = gibbs_state(zero, Temperature(0.3), 1.0);
    CHECK(max_abs(rho.matrix() - Matrix::Identity(8, 8) / 8.0) < 1e-15);
  }
  SUBCASE("very high temperature flattens any spectrum") {
    const HermitianOperator h = build_hamiltonian({3, 1, 2.5, 0.7});
    const DensityMatrix rho = gibbs_state(h, Temperature(1e6), 1.0);
    CHECK(max_abs(rho.matrix() - Matrix::Identity(16, 16) / 16.0) <= 1e-5);
  }
  SUBCASE("low temperature populates psi1") {
    // Gap to the next level from the closed form is 0.30277563773; the
    // excited population at t = 0.01 is ~7.1e-14.
    const auto closed = analytic_spectrum_m3(1, 1, 0.5);
    CHECK(closed[1] - closed[0] == doctest::Approx(0.302775637732).epsilon(1e-10));
    const DensityMatrix rho = gibbs_state(build_hamiltonian({3, 1, 1, 0.5}), Temperature(0.01), 1.0);
    const Vector psi1 = analytic_psi1_m3(1, 0.5);
    const double pop = (psi1.adjoint() * rho.matrix() * psi1)(0, 0).real();
    CHECK(pop > 1 - 1e-6);
  }
  SUBCASE("energy scale divides the exponent") {
    const HermitianOperator h = build_hamiltonian({3, 2, 1, 0.5});
    const DensityMatrix a = gibbs_state(h, Temperature(0.25), 2.0);
    const Matrix ref = oracle::gibbs(h.matrix(), 0.5);
    CHECK(max_abs(a.matrix() - ref) < 1e-12);
  }
  SUBCASE("t = 0 routes to the ground manifold") {
    const HermitianOperator h = build_hamiltonian({3, 1, 1, 2});
    const DensityMatrix a = gibbs_state(h, Temperature(0.0), 1.0);
    CHECK(max_abs(a.matrix() - zero_temperature_state(eigh(h)).matrix()) < 1e-14);
  }
  CHECK_THROWS_AS(gibbs_state(eigh(build_hamiltonian({3, 1, 1, 1})), 0.1, 0.0),
                  std::invalid_argument);
}

TEST_CASE("gibbs_state equals V diag(w) V^dagger") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 5);
  for (int k = 0; k < 20; ++k) {
    const double t = 0.05 + u(rng);
    const HermitianOperator h = build_hamiltonian({4, 1, u(rng), u(rng)});
    const SpectralDecomposition s = eigh(h);
    const DensityMatrix rho = gibbs_state(s, t, 1.0);
    Eigen::VectorXd w = (-(s.eigenvalues.array() - s.eigenvalues.minCoeff()) / t).exp();
    w /= w.sum();
    const Matrix ref = s.eigenvectors * w.cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();
    CHECK(max_abs(rho.matrix() - ref) <= 1e-12);
    check_state(rho);
  }
}

TEST_CASE("zero_temperature_state") {
  SUBCASE("pure ground state") {
    const SpectralDecomposition s = eigh(build_hamiltonian({3, 1, 1, 0.5}));
    const DensityMatrix rho = zero_temperature_state(s);
    const Vector g = s.eigenvectors.col(0);
    CHECK(max_abs(rho.matrix() - g * g.adjoint()) < 1e-14);
  }
  SUBCASE("plateau projector is independent of the couplings") {
    const DensityMatrix a = zero_temperature_state(eigh(build_hamiltonian({3, 1, 1, 2})));
    const DensityMatrix b = zero_temperature_state(eigh(build_hamiltonian({3, 1, 1, 4.5})));
    CHECK(max_abs(a.matrix() - b.matrix()) < 1e-10);
    const Eigen::VectorXd ev = eigvalsh(a.matrix());
    int quarter = 0;
    for (double x : ev) quarter += std::abs(x - 0.25) < 1e-10;
    CHECK(quarter == 4);
  }
  SUBCASE("continuity with low-temperature Gibbs states away from crossings") {
    for (double eta : {0.3, 0.6, 1.5, 2.5}) {
      const HermitianOperator h = build_hamiltonian({3, 1, 1, eta});
      const SpectralDecomposition s = eigh(h);
      const DensityMatrix cold = gibbs_state(s, 1e-4, 1.0);
      CHECK(max_abs(cold.matrix() - zero_temperature_state(s).matrix()) <= 1e-6);
    }
  }
}

TEST_CASE("partial_trace") {
  SUBCASE("Bell marginal is maximally mixed") {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1 / std::sqrt(2.0);
    const DensityMatrix rho = DensityMatrix::pure(bell);
    const DensityMatrix r = partial_trace(rho, {1}, 2);
    CHECK(max_abs(r.matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-15);
  }
  SUBCASE("product states factor exactly") {
    std::mt19937_64 rng(2);
    const Matrix a = oracle::random_density(rng, 2);
    const Matrix b = oracle::random_density(rng, 4);
    const DensityMatrix ab = DensityMatrix::from_matrix(oracle::kron(a, b));
    CHECK(max_abs(partial_trace(ab, {0}, 3).matrix() - a) < 1e-14);
    CHECK(max_abs(partial_trace(ab, {1, 2}, 3).matrix() - b) < 1e-14);
    // keep order is normalized to the original qubit order
    CHECK(max_abs(partial_trace(ab, {2, 1}, 3).matrix() - b) < 1e-14);
  }
  SUBCASE("tracing the central spin matches block summation") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 10; ++k) {
      const Matrix m = oracle::random_density(rng, 16);
      const DensityMatrix rho = DensityMatrix::from_matrix(m);
      const DensityMatrix r = partial_trace(rho, {1, 2, 3}, 4);
      CHECK(max_abs(r.matrix() - oracle::trace_first(m)) < 1e-14);
      CHECK(std::abs(r.matrix().trace() - cplx(1.0)) < 1e-12);
    }
  }
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
  CHECK_THROWS_AS(partial_trace(mixed, {}, 3), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(mixed, {3}, 3), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(mixed, {0, 0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(mixed, {0}, 2), std::invalid_argument);
}

TEST_CASE("reduced_thermal_state examples") {
  SUBCASE("uncoupled spins thermalize independently") {
    const double t = 0.7;
    const double p = std::exp(1 / (2 * t)) / (std::exp(1 / (2 * t)) + std::exp(-1 / (2 * t)));
    Matrix one = Matrix::Zero(2, 2);
    one(0, 0) = p;
    one(1, 1) = 1 - p;
    const Matrix expected = oracle::kron(oracle::kron(one, one), one);
    const DensityMatrix r = reduced_thermal_state({3, 1, 0, 0}, Temperature(t));
    CHECK(max_abs(r.matrix() - expected) < 1e-14);
    CHECK(multipartite_negativity(r, 3).multipartite == 0.0);
  }
  SUBCASE("psi1 regime is a mixture of |000> and the W combination") {
    const DensityMatrix r = reduced_thermal_state({3, 1, 1, 0.5}, Temperature(0.01));
    const double big = 0.5 + std::sqrt(3.25);
    const double norm2 = big * big + 3.0;
    Matrix expected = Matrix::Zero(8, 8);
    expected(0, 0) = big * big / norm2;  // |000>
    for (int i : {1, 2, 4})
      for (int j : {1, 2, 4}) expected(i, j) = 1.0 / norm2;
    CHECK(max_abs(r.matrix() - expected) < 1e-10);
    const Eigen::VectorXd ev = eigvalsh(r.matrix());
    CHECK(ev(5) < 1e-10);  // rank 2
    CHECK(ev(6) > 0.1);
  }
  SUBCASE("plateau states coincide") {
    const DensityMatrix a = reduced_thermal_state({3, 1, 1, 1.5}, Temperature(0.01));
    const DensityMatrix b = reduced_thermal_state({3, 1, 1, 2}, Temperature(0.01));
    const DensityMatrix c = reduced_thermal_state({3, 1, 1, 3}, Temperature(0.01));
    CHECK(max_abs(a.matrix() - b.matrix()) <= 1e-6);
    CHECK(max_abs(b.matrix() - c.matrix()) <= 1e-6);
    CHECK(max_abs(a.matrix() - c.matrix()) <= 1e-6);
  }
  SUBCASE("matches the Kronecker-product reference") {
    for (int m : {2, 3, 4}) {
      const Matrix ref = oracle::trace_first(oracle::gibbs(oracle::hamiltonian(m, 1, 0.8, 1.3), 0.2));
      const DensityMatrix r = reduced_thermal_state({m, 1, 0.8, 1.3}, Temperature(0.2));
      CHECK(max_abs(r.matrix() - ref) < 1e-12);
    }
  }
}

TEST_CASE("thermal invariants") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0, 10);
  std::uniform_real_distribution<double> lt(-2, 1);
  for (int m : {2, 3, 4, 5}) {
    const Matrix rot = peripheral_rotation(m, false);
    for (int k = 0; k < 6; ++k) {
      const SpinStarParams p{m, 1, u(rng), u(rng)};
      const double t = std::pow(10.0, lt(rng));
      const DensityMatrix r = reduced_thermal_state(p, Temperature(t));
      check_state(r);
      CHECK(max_abs(rot * r.matrix() * rot.adjoint() - r.matrix()) <= 1e-12);
      const DensityMatrix full = reduced_thermal_state(p, Temperature(t), Solver::full);
      CHECK(max_abs(r.matrix() - full.matrix()) <= 1e-10);
    }
    // distance to I/2^m shrinks with t and is below 1e-3 at t = 1e3
    const auto d = Eigen::Index{1} << m;
    const Matrix flat = Matrix::Identity(d, d) / static_cast<double>(d);
    double previous = INFINITY;
    for (double t : {1.0, 10.0, 100.0, 1e3}) {
      const double dist = max_abs(reduced_thermal_state({m, 1, 1, 1}, Temperature(t)).matrix() - flat);
      CHECK(dist < previous);
      previous = dist;
    }
    CHECK(previous <= 1e-3);
  }
}
