#include "kerr/wavefunction.hpp"

#include <algorithm>
#include <string>

namespace kerr {

Complex amplitude_moment(const SteadyWavefunction& psi, int l, int k,
                         double* abs_scale) {
  const int top = psi.truncation - std::max(l, k);
  Complex sum(0, 0);
  double magnitude = 0;
  for (int m = 0; m <= top; ++m) {
    double weight = 1;
    for (int j = 1; j <= l; ++j) weight *= std::sqrt(double(m + j));
    for (int j = 1; j <= k; ++j) weight *= std::sqrt(double(m + j));
    const Complex term =
        std::conj(psi.amplitudes(m + l)) * psi.amplitudes(m + k) * weight;
    sum += term;
    magnitude += std::abs(term);
  }
  const double field_factor = std::pow(2.0, -0.5 * (l + k));
  if (abs_scale) *abs_scale = magnitude * field_factor;
  return sum * field_factor;
}

double cross_check(Complex series, Complex amplitude, double abs_scale,
                   double rel_tol, const char* what) {
  const double difference = std::abs(series - amplitude);
  const double magnitude = std::max(std::abs(series), std::abs(amplitude));
  const double relative = magnitude > 0 ? difference / magnitude : 0.0;
  if (difference <= rel_tol * magnitude || difference <= 1e-13 * abs_scale) {
    return relative;
  }
  throw CrossCheckFailure(std::string(what) +
                          ": series and amplitude-sum evaluations differ by " +
                          std::to_string(relative) + " (relative)");
}

}  // namespace kerr
