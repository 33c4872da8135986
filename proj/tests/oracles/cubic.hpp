// Real roots of a cubic from the eigenvalues of its companion matrix.
#ifndef KERR_TESTS_CUBIC_HPP
#define KERR_TESTS_CUBIC_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

namespace oracle {

/// Roots of c3 n^3 + c2 n^2 + c1 n + c0 with |Im| below `imag_tol` times the
/// root size, polished by Newton steps in long double, ascending.
inline std::vector<double> companion_real_roots(const std::array<double, 4>& c,
                                                double imag_tol = 1e-6) {
  using Mat = Eigen::Matrix<long double, 3, 3>;
  Mat companion = Mat::Zero();
  companion(1, 0) = 1;
  companion(2, 1) = 1;
  // Column 2 holds -c0/c3, -c1/c3, -c2/c3 from the top.
  companion(0, 2) = -static_cast<long double>(c[3]) / c[0];
  companion(1, 2) = -static_cast<long double>(c[2]) / c[0];
  companion(2, 2) = -static_cast<long double>(c[1]) / c[0];
  Eigen::EigenSolver<Mat> solver(companion, false);
  std::vector<double> roots;
  for (int j = 0; j < 3; ++j) {
    const auto lambda = solver.eigenvalues()(j);
    if (std::abs(lambda.imag()) > imag_tol * std::max<long double>(1, std::abs(lambda))) {
      continue;
    }
    long double n = lambda.real();
    for (int it = 0; it < 8; ++it) {
      const long double f = ((c[0] * n + c[1]) * n + c[2]) * n + c[3];
      const long double df = (3 * c[0] * n + 2 * c[1]) * n + c[2];
      if (df == 0) break;
      n -= f / df;
    }
    roots.push_back(static_cast<double>(n));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace oracle

#endif  // KERR_TESTS_CUBIC_HPP
