#include "kerr/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "kerr/parallel.hpp"

namespace kerr {
namespace {

double evaluate(const std::array<double, 4>& c, double n) {
  return ((c[0] * n + c[1]) * n + c[2]) * n + c[3];
}

double derivative(const std::array<double, 4>& c, double n) {
  return (3 * c[0] * n + 2 * c[1]) * n + c[2];
}

double newton_polish(const std::array<double, 4>& c, double root) {
  const double slope = derivative(c, root);
  if (slope == 0) return root;
  const double candidate = root - evaluate(c, root) / slope;
  return std::abs(evaluate(c, candidate)) <= std::abs(evaluate(c, root))
             ? candidate
             : root;
}

// Real roots of c0 n^3 + c1 n^2 + c2 n + c3 (c0 != 0), ascending.
std::vector<double> real_cubic_roots(const std::array<double, 4>& c) {
  const double a = c[1] / c[0];
  const double b = c[2] / c[0];
  const double d = c[3] / c[0];
  const double shift = a / 3;
  const double p = b - a * a / 3;
  const double q = 2 * a * a * a / 27 - a * b / 3 + d;
  const double disc = -(4 * p * p * p + 27 * q * q);

  std::vector<double> roots;
  if (disc >= 0 && p < 0) {
    const double amplitude = 2 * std::sqrt(-p / 3);
    const double argument =
        std::clamp(3 * q / (2 * p) * std::sqrt(-3 / p), -1.0, 1.0);
    const double phi = std::acos(argument) / 3;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(amplitude * std::cos(phi - 2 * std::numbers::pi * k / 3) -
                      shift);
    }
  } else {
    // Single real root; pick the cube-root branch free of cancellation.
    const double sq = std::sqrt(std::max(q * q / 4 + p * p * p / 27, 0.0));
    const double u = std::cbrt(-q / 2 - std::copysign(sq, q));
    const double t = u != 0 ? u - p / (3 * u) : 0.0;
    roots.push_back(t - shift);
  }
  for (double& root : roots) root = newton_polish(c, root);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::array<double, 4> meanfield_cubic(const ModelParams& p) {
  return {16 * p.chi * p.chi, 16 * p.chi * p.delta_c,
          4 * p.delta_c * p.delta_c + p.gamma * p.gamma,
          -4 * p.omega * p.omega};
}

std::vector<MeanFieldBranch> photon_number_branches(const ModelParams& params) {
  params.validate();
  if (params.has_two_photon_terms()) {
    throw UnsupportedModel(
        "mean-field branches cover only the coherently driven model");
  }
  std::vector<double> roots;
  if (params.omega == 0) {
    roots = {0.0};
  } else if (params.chi == 0) {
    const auto c = meanfield_cubic(params);
    roots = {-c[3] / c[2]};
  } else {
    for (double root : real_cubic_roots(meanfield_cubic(params))) {
      if (root > 0) roots.push_back(root);
    }
  }

  std::vector<MeanFieldBranch> branches;
  const Complex i(0, 1);
  for (double n : roots) {
    MeanFieldBranch branch;
    branch.n = n;
    branch.a0 = -2.0 * i * params.omega /
                (2 * params.delta_c - i * params.gamma + 4 * params.chi * n);
    branches.push_back(classify_stability(branch, params));
  }
  for (std::size_t j = 1; j < branches.size(); ++j) {
    const double gap = branches[j].n - branches[j - 1].n;
    if (gap <= 1e-7 * std::max(branches[j].n, branches[j - 1].n)) {
      branches[j].degenerate = branches[j - 1].degenerate = true;
    }
  }
  return branches;
}

MeanFieldBranch classify_stability(MeanFieldBranch branch,
                                   const ModelParams& params) {
  const Complex i(0, 1);
  const double shift = params.delta_c + 4 * params.chi * branch.n;
  Eigen::Matrix2cd jacobian;
  jacobian << -i * shift - params.gamma / 2,
      -2.0 * i * params.chi * branch.a0 * branch.a0,
      2.0 * i * params.chi * std::conj(branch.a0) * std::conj(branch.a0),
      i * shift - params.gamma / 2;
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(jacobian, false);
  const auto& ev = solver.eigenvalues();
  branch.eigenvalues = {ev(0), ev(1)};
  if (branch.eigenvalues[0].real() > branch.eigenvalues[1].real()) {
    std::swap(branch.eigenvalues[0], branch.eigenvalues[1]);
  }
  const double scale = jacobian.cwiseAbs().maxCoeff();
  const double largest = branch.eigenvalues[1].real();
  branch.marginal = std::abs(largest) <= 1e-12 * scale;
  branch.stable = !branch.marginal && largest < 0;
  return branch;
}

std::vector<MeanFieldSweepRow> sweep_drive(const ModelParams& params,
                                           std::span<const double> omega_grid) {
  for (double omega : omega_grid) {
    if (!(omega >= 0)) throw InvalidParams("drive grid values must be >= 0");
  }
  return parallel_map(omega_grid.size(), [&](std::size_t j) {
    ModelParams point = params;
    point.omega = omega_grid[j];
    return MeanFieldSweepRow{point.omega, photon_number_branches(point)};
  });
}

}  // namespace kerr
