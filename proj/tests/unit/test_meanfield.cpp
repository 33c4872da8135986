#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cubic.hpp"
#include "kerr/meanfield.hpp"
#include "meanfield_ode.hpp"

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

oracle::FieldParams field(const ModelParams& p) {
  return {p.delta_c, p.chi, p.omega, p.gamma};
}

}  // namespace

TEST_CASE("cubic coefficients") {
  const auto c = kerr::meanfield_cubic(bistable_point(4));
  CHECK(c[0] == 1.0);
  CHECK(c[1] == -20.0);
  CHECK(c[2] == 101.0);
  CHECK(c[3] == -64.0);
}

TEST_CASE("branches agree with companion-matrix roots over the drive sweep") {
  for (int j = 0; j <= 160; ++j) {
    const ModelParams p = bistable_point(0.05 * j);
    const auto branches = kerr::photon_number_branches(p);
    std::vector<double> reference = oracle::companion_real_roots(kerr::meanfield_cubic(p));
    std::erase_if(reference, [](double n) { return n < 0; });
    if (p.omega == 0) reference = {0.0};
    CAPTURE(p.omega);
    REQUIRE(branches.size() == reference.size());
    for (std::size_t b = 0; b < branches.size(); ++b) {
      CHECK(std::abs(branches[b].n - reference[b]) <= 1e-9 * std::max(reference[b], 1e-300));
    }
  }
}

TEST_CASE("known three-branch point") {
  const auto branches = kerr::photon_number_branches(bistable_point(4));
  REQUIRE(branches.size() == 3);
  CHECK(branches[0].n == doctest::Approx(0.737).epsilon(1e-3));
  CHECK(branches[1].n == doctest::Approx(7.189).epsilon(1e-3));
  CHECK(branches[2].n == doctest::Approx(12.074).epsilon(1e-3));
  CHECK(branches[0].stable);
  CHECK_FALSE(branches[1].stable);
  CHECK(branches[2].stable);
  for (const auto& b : branches) {
    CHECK(std::norm(b.a0) == doctest::Approx(b.n).epsilon(1e-12));
    // a0 is a fixed point of the field equation.
    CHECK(std::abs(oracle::field_rate(field(bistable_point(4)), b.a0)) < 1e-10);
  }
}

TEST_CASE("stability agrees with time integration") {
  for (double omega : {1.0, 3.0, 4.0, 5.5, 7.0}) {
    const ModelParams p = bistable_point(omega);
    for (const auto& b : kerr::photon_number_branches(p)) {
      const Complex kick(1e-4, -0.5e-4);
      const Complex later = oracle::integrate_field(field(p), b.a0 + kick, 40.0);
      const double drift = std::abs(later - b.a0);
      CAPTURE(omega);
      CAPTURE(b.n);
      if (b.stable) {
        CHECK(drift < 1e-6);
      } else {
        CHECK(drift > 1e-2);
      }
    }
  }
}

TEST_CASE("linearization eigenvalues match a finite-difference Jacobian") {
  for (double omega : {0.5, 2.5, 4.0, 6.0}) {
    const ModelParams p = bistable_point(omega);
    for (const auto& b : kerr::photon_number_branches(p)) {
      const double h = 1e-6;
      Eigen::Matrix2d jac;
      const Complex steps[2] = {Complex(h, 0), Complex(0, h)};
      for (int c = 0; c < 2; ++c) {
        const Complex d = (oracle::field_rate(field(p), b.a0 + steps[c]) -
                           oracle::field_rate(field(p), b.a0 - steps[c])) /
                          (2 * h);
        jac(0, c) = d.real();
        jac(1, c) = d.imag();
      }
      Eigen::EigenSolver<Eigen::Matrix2d> solver(jac);
      std::vector<double> re = {solver.eigenvalues()(0).real(), solver.eigenvalues()(1).real()};
      std::sort(re.begin(), re.end());
      CHECK(b.eigenvalues[0].real() == doctest::Approx(re[0]).epsilon(1e-6));
      CHECK(b.eigenvalues[1].real() == doctest::Approx(re[1]).epsilon(1e-6));
    }
  }
}

TEST_CASE("branch count profile across the sweep is 1, 3, 1") {
  std::vector<double> grid;
  for (int j = 0; j <= 800; ++j) grid.push_back(0.01 * j);
  const auto rows = kerr::sweep_drive(bistable_point(0), grid);
  std::vector<std::size_t> profile;
  for (const auto& row : rows) {
    if (profile.empty() || profile.back() != row.branches.size()) {
      profile.push_back(row.branches.size());
    }
    if (row.branches.size() == 3) {
      CHECK(std::count_if(row.branches.begin(), row.branches.end(),
                          [](const auto& b) { return !b.stable; }) == 1);
    }
  }
  CHECK(profile == std::vector<std::size_t>{1, 3, 1});
}

TEST_CASE("special cases") {
  SUBCASE("no drive") {
    const auto branches = kerr::photon_number_branches(bistable_point(0));
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].n == 0);
    CHECK(branches[0].stable);
  }
  SUBCASE("no nonlinearity") {
    ModelParams p = bistable_point(2);
    p.chi = 0;
    const auto branches = kerr::photon_number_branches(p);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].n == doctest::Approx(4 * 4.0 / (4 * 25.0 + 1)).epsilon(1e-14));
  }
  SUBCASE("two-photon terms are out of scope") {
    ModelParams p = bistable_point(2);
    p.kappa = 0.1;
    CHECK_THROWS_AS(kerr::photon_number_branches(p), kerr::UnsupportedModel);
  }
  SUBCASE("negative drive grid") {
    const std::vector<double> grid = {1, -1};
    CHECK_THROWS_AS(kerr::sweep_drive(bistable_point(0), grid), kerr::InvalidParams);
  }
  SUBCASE("near a saddle-node the merging roots are flagged") {
    // Scan for the left edge of the three-branch window.
    double lo = 1.0, hi = 3.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (kerr::photon_number_branches(bistable_point(mid)).size() == 3 ? hi : lo) = mid;
    }
    const auto branches = kerr::photon_number_branches(bistable_point(hi));
    REQUIRE(branches.size() == 3);
    CHECK((branches[1].degenerate || branches[2].degenerate));
  }
}
