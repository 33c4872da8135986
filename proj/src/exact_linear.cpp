#include "kerr/exact_linear.hpp"

#include <cmath>
#include <limits>

#include "kerr/parallel.hpp"

namespace kerr {
namespace {

void require_linear_model(const ModelParams& params) {
  params.validate();
  if (params.has_two_photon_terms()) {
    throw UnsupportedModel(
        "exact_linear handles only the coherently driven model");
  }
  if (params.chi == 0) throw InvalidParams("exact_linear requires chi != 0");
}

void require_moment_order(int l, int k) {
  if (l < 0 || k < 0 || l > kMaxMomentOrder || k > kMaxMomentOrder) {
    throw InvalidParams("moment orders must lie in [0, 16]");
  }
}

Complex power(Complex base, int exponent) {
  Complex result(1, 0);
  for (int j = 0; j < exponent; ++j) result *= base;
  return result;
}

int settle_index(Complex x) {
  return static_cast<int>(std::ceil(std::max(0.0, 1.0 - x.real()))) + 1;
}

}  // namespace

SteadyWavefunction wavefunction_linear(const ModelParams& params,
                                       const TruncationOptions& options) {
  require_linear_model(params);
  const auto [epsilon, x] = derive_linear(params);
  return detail::grow_wavefunction(
      [&](int m, const std::vector<Complex>& beta, double) {
        const Complex pole = x + double(m - 1);
        if (pole == Complex(0, 0)) {
          throw PoleError("wavefunction_linear: x + m - 1 vanishes");
        }
        return std::sqrt(2.0 / m) * epsilon / pole * beta.back();
      },
      settle_index(x), options);
}

CorrelationResult correlation_linear(const ModelParams& params, int l, int k) {
  require_linear_model(params);
  require_moment_order(l, k);
  const auto [epsilon, x] = derive_linear(params);
  const Complex xc = std::conj(x);
  const Complex argument(2 * std::norm(epsilon), 0);

  const auto denominator = hyp0f2(xc, x, argument);
  const auto numerator = hyp0f2(xc + double(l), x + double(k), argument);
  if (!denominator.converged || !numerator.converged) {
    throw NonConvergence("correlation_linear: 0F2 series did not converge");
  }
  const Complex prefactor = power(std::conj(epsilon), l) * power(epsilon, k) /
                            (pochhammer(xc, l) * pochhammer(x, k));

  CorrelationResult result;
  result.l = l;
  result.k = k;
  result.series_value = prefactor * numerator.value / denominator.value;

  TruncationOptions options;
  options.extra_terms = 2 * (l + k) + 8;
  const SteadyWavefunction psi = wavefunction_linear(params, options);
  double abs_scale = 0;
  result.amplitude_value = amplitude_moment(psi, l, k, &abs_scale);

  const double norm_mismatch =
      std::abs(denominator.value.real() - psi.norm_constant) /
      psi.norm_constant;
  if (!(norm_mismatch <= 1e-9)) {
    throw CrossCheckFailure(
        "correlation_linear: 0F2 normalization disagrees with sum |beta|^2");
  }
  result.cross_check_error =
      cross_check(result.series_value, result.amplitude_value, abs_scale, 1e-9,
                  "correlation_linear");
  result.value = result.series_value;
  result.terms_used = std::max(numerator.terms_used, psi.truncation + 1);
  result.converged = psi.converged;
  return result;
}

std::vector<ExactSweepRow> sweep_drive_exact(const ModelParams& params,
                                             std::span<const double> omega_grid,
                                             int l, int k) {
  for (double omega : omega_grid) {
    if (!(omega >= 0)) throw InvalidParams("drive grid values must be >= 0");
  }
  return parallel_map(omega_grid.size(), [&](std::size_t j) {
    ModelParams point = params;
    point.omega = omega_grid[j];
    ExactSweepRow row;
    row.omega = point.omega;
    row.n_exact = correlation_linear(point, 1, 1).value.real();
    row.a = correlation_linear(point, 0, 1).value;
    const double pairs = correlation_linear(point, 2, 2).value.real();
    row.g2 = row.n_exact > 0 ? pairs / (row.n_exact * row.n_exact)
                             : std::numeric_limits<double>::quiet_NaN();
    row.moment = correlation_linear(point, l, k).value;
    return row;
  });
}

}  // namespace kerr
