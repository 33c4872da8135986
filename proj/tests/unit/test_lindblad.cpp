#include <doctest.h>

#include <cmath>

#include "kerr/lindblad.hpp"
#include "random_params.hpp"

using kerr::Complex;
using kerr::ModelParams;

namespace {

ModelParams bistable_point(double omega) {
  ModelParams p;
  p.delta_c = 5;
  p.chi = -0.25;
  p.omega = omega;
  p.gamma = 1;
  return p;
}

Eigen::MatrixXcd random_density(oracle::Rng& rng, int side) {
  Eigen::MatrixXcd g(side, side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      g(r, c) = Complex(oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1));
    }
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace();
}

kerr::Liouvillian from_dense(const Eigen::MatrixXcd& m, int cutoff) {
  return {m.sparseView(), cutoff};
}

}  // namespace

TEST_CASE("amplitude damping generator at cutoff one") {
  ModelParams p;
  const auto l = kerr::build_liouvillian(p, 1).dense();
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  // Column-stacked (rho00, rho10, rho01, rho11).
  expected(0, 3) = 1;
  expected(3, 3) = -1;
  expected(1, 1) = -0.5;
  expected(2, 2) = -0.5;
  CHECK((l - expected).norm() < 1e-15);
  Eigen::VectorXcd vacuum = Eigen::VectorXcd::Zero(4);
  vacuum(0) = 1;
  CHECK((l * vacuum).norm() == 0);
}

TEST_CASE("superoperator action equals the direct evaluation") {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    ModelParams p = trial % 2 ? oracle::random_twophoton(rng) : oracle::random_linear(rng);
    const int cutoff = 4 + trial % 5;
    const Eigen::MatrixXcd rho = random_density(rng, cutoff + 1);
    const auto l = kerr::build_liouvillian(p, cutoff);
    const Eigen::VectorXcd image =
        l.matrix * Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
    const Eigen::MatrixXcd direct = kerr::lindblad_rhs(p, rho);
    const Eigen::Map<const Eigen::MatrixXcd> vectorized(image.data(), cutoff + 1, cutoff + 1);
    CHECK((vectorized - direct).cwiseAbs().maxCoeff() <= 1e-12 * (1 + direct.norm()));
  }
}

TEST_CASE("trace functional annihilates the generator") {
  oracle::Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const ModelParams p = oracle::random_twophoton(rng);
    const int cutoff = 12;
    const Eigen::MatrixXcd l = kerr::build_liouvillian(p, cutoff).dense();
    Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(l.cols());
    for (int m = 0; m <= cutoff; ++m) t(m * (cutoff + 2)) = 1;
    CHECK((t * l).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("dark states") {
  SUBCASE("no Hamiltonian") {
    ModelParams p;
    const auto rho = kerr::steady_state(kerr::build_liouvillian(p, 6));
    CHECK(std::abs(rho.entries(0, 0) - 1.0) < 1e-14);
    CHECK(rho.entries.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("undriven Kerr resonator") {
    ModelParams p = bistable_point(0);
    p.kappa = 0.3;
    const auto rho = kerr::steady_state(kerr::build_liouvillian(p, 10));
    CHECK(std::abs(kerr::correlation_from_rho(rho, 1, 1)) < 1e-14);
  }
}

TEST_CASE("sparse and dense solves agree") {
  oracle::Rng rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    const ModelParams p = oracle::random_twophoton(rng);
    const auto l = kerr::build_liouvillian(p, 14);
    const auto a = kerr::steady_state(l, kerr::LinearSolver::sparse_lu);
    const auto b = kerr::steady_state(l, kerr::LinearSolver::dense_lu);
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("solved states are density matrices") {
  oracle::Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const ModelParams p = trial % 2 ? oracle::random_twophoton(rng) : oracle::random_linear(rng);
    const auto rho = kerr::steady_state(kerr::build_liouvillian(p, 24));
    const auto& d = rho.diagnostics;
    CHECK(d.hermiticity_error <= 1e-10);
    CHECK(d.trace_error <= 1e-10);
    CHECK(d.min_eigenvalue >= -1e-8);
    CHECK(d.purity <= 1 + 1e-10);
    CHECK(d.residual <= 1e-9 * d.liouvillian_max);
    CHECK((rho.entries - rho.entries.adjoint()).norm() == 0);
  }
}

TEST_CASE("cutoff convergence at the bistable point") {
  const Complex n60 = kerr::correlation_from_rho(
      kerr::steady_state(kerr::build_liouvillian(bistable_point(4), 60)), 1, 1);
  const Complex n80 = kerr::correlation_from_rho(
      kerr::steady_state(kerr::build_liouvillian(bistable_point(4), 80)), 1, 1);
  CHECK(std::abs(n60 - n80) < 1e-8);
}

TEST_CASE("correlations from a density matrix") {
  kerr::DensityMatrix rho;
  rho.cutoff = 8;
  rho.entries = Eigen::MatrixXcd::Zero(9, 9);
  rho.entries(3, 3) = 1;
  CHECK(kerr::correlation_from_rho(rho, 0, 0) == Complex(1, 0));
  CHECK(std::abs(kerr::correlation_from_rho(rho, 1, 1) - 3.0) < 1e-14);
  CHECK(std::abs(kerr::correlation_from_rho(rho, 2, 2) - 6.0) < 1e-13);
  CHECK(kerr::correlation_from_rho(rho, 0, 1) == Complex(0, 0));
  CHECK_THROWS_AS(kerr::correlation_from_rho(rho, 3, 2), kerr::CutoffTooSmall);
  CHECK_THROWS_AS(kerr::correlation_from_rho(rho, -1, 0), kerr::InvalidParams);

  // Coherent-state coherence: rho_{10} = rho_{01}^* = c.
  rho.entries.setZero();
  rho.entries(0, 0) = 0.5;
  rho.entries(1, 1) = 0.5;
  rho.entries(1, 0) = Complex(0.2, 0.1);
  rho.entries(0, 1) = Complex(0.2, -0.1);
  CHECK(std::abs(kerr::correlation_from_rho(rho, 0, 1) - Complex(0.2, 0.1)) < 1e-15);
}

TEST_CASE("adaptive cutoff") {
  SUBCASE("weak drive settles early") {
    const auto c = kerr::adaptive_cutoff(bistable_point(0.1), kerr::moment_observable(1, 1), 1e-8);
    CHECK(c.cutoff <= 32);
    CHECK(c.check_cutoff == 2 * c.cutoff);
  }
  SUBCASE("no drive settles at the first cutoff") {
    const auto c = kerr::adaptive_cutoff(bistable_point(0), kerr::moment_observable(1, 1), 1e-8);
    CHECK(c.cutoff == 16);
    CHECK(std::abs(c.value) < 1e-14);
  }
  SUBCASE("strong drive records its certificate") {
    const auto c = kerr::adaptive_cutoff(bistable_point(8), kerr::moment_observable(1, 1), 1e-8);
    CHECK(c.history.size() >= 2);
    CHECK(std::abs(c.value - c.check_value) <= 1e-8 * std::abs(c.check_value));
  }
  SUBCASE("cap reached") {
    CHECK_THROWS_AS(kerr::adaptive_cutoff(bistable_point(8), kerr::moment_observable(1, 1),
                                          1e-8, 8, 8),
                    kerr::NonConvergence);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(kerr::adaptive_cutoff(bistable_point(1), kerr::moment_observable(1, 1), 0),
                    kerr::InvalidParams);
  }
}

TEST_CASE("failure modes of the solve") {
  SUBCASE("a null vector that is not hermitian") {
    // L = 1 - vec(X) e_0^T has kernel vec(X).
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(2, 2);
    x(0, 0) = 1;
    x(0, 1) = 0.5;
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Identity(4, 4);
    l.col(0) -= Eigen::Map<const Eigen::VectorXcd>(x.data(), 4);
    CHECK_THROWS_AS(kerr::steady_state(from_dense(l, 1)), kerr::InvariantViolation);
  }
  SUBCASE("a degenerate generator") {
    const auto zero = from_dense(Eigen::MatrixXcd::Zero(9, 9), 2);
    CHECK_THROWS_AS(kerr::steady_state(zero, kerr::LinearSolver::dense_lu),
                    kerr::SingularSystem);
    CHECK_THROWS_AS(kerr::steady_state(zero, kerr::LinearSolver::sparse_lu),
                    kerr::SingularSystem);
  }
  SUBCASE("cutoff and shape checks") {
    CHECK_THROWS_AS(kerr::build_liouvillian(bistable_point(1), 0), kerr::InvalidParams);
    const auto wrong = from_dense(Eigen::MatrixXcd::Identity(4, 4), 3);
    CHECK_THROWS_AS(kerr::steady_state(wrong), kerr::InvalidParams);
  }
}
