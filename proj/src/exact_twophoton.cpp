#include "kerr/exact_twophoton.hpp"

#include <cmath>
#include <limits>

#include "kerr/exact_linear.hpp"
#include "kerr/parallel.hpp"

namespace kerr {
namespace {

enum class Route { linear, two_photon };

Route select_route(const ModelParams& params) {
  params.validate();
  if (params.lambda != Complex(0, 0)) {
    if (params.chi == 0 && params.kappa == 0) {
      throw InvalidParams("two-photon solution needs chi or kappa nonzero");
    }
    return Route::two_photon;
  }
  if (params.kappa == 0) return Route::linear;
  throw UnsupportedModel(
      "two-photon loss without two-photon drive has no closed form here; "
      "use the Lindblad steady-state solver");
}

int settle_index(Complex z) {
  return static_cast<int>(std::ceil(std::max(0.0, 1.0 - z.real()))) + 1;
}

}  // namespace

SteadyWavefunction wavefunction_twophoton(const ModelParams& params,
                                          DisplacementBranch branch,
                                          const TruncationOptions& options) {
  if (select_route(params) == Route::linear) {
    return wavefunction_linear(params, options);
  }
  const auto [lambda, y, z] = derive_twophoton(params, branch);
  // prefix_m = (-lambda)^m / sqrt(m!) up to the overflow rescale.
  Complex prefix(1, 0);
  double applied_scale = 1;
  return detail::grow_wavefunction(
      [&](int m, const std::vector<Complex>&, double scale) {
        prefix *= -lambda / std::sqrt(double(m));
        if (scale != applied_scale) {
          prefix *= scale / applied_scale;
          applied_scale = scale;
        }
        return prefix * hyp2f1_terminating(m, y, z);
      },
      settle_index(z), options);
}

SteadyWavefunction wavefunction_via_three_term(const ModelParams& params,
                                               const TruncationOptions& options) {
  params.validate();
  const Complex i(0, 1);
  const Complex detuning = 2.0 * params.delta_c - i * params.gamma;
  const Complex nonlinear = 2.0 * params.chi - i * params.kappa;
  const int settle =
      nonlinear == Complex(0, 0) ? 1 : settle_index(detuning / nonlinear);
  const Complex one_photon = -i * 2.0 * std::sqrt(2.0) * params.omega;
  return detail::grow_wavefunction(
      [&](int m, const std::vector<Complex>& beta, double) {
        const Complex coefficient =
            (detuning + nonlinear * double(m - 1)) * std::sqrt(double(m));
        if (coefficient == Complex(0, 0)) {
          throw PoleError("wavefunction_via_three_term: vanishing coefficient");
        }
        Complex rhs = one_photon * beta[m - 1];
        if (m >= 2) {
          rhs -= 2.0 * params.lambda * std::sqrt(double(m - 1)) * beta[m - 2];
        }
        return rhs / coefficient;
      },
      settle, options);
}

CorrelationResult correlation_twophoton(const ModelParams& params, int l,
                                        int k, DisplacementBranch branch) {
  if (select_route(params) == Route::linear) {
    return correlation_linear(params, l, k);
  }
  if (l < 0 || k < 0 || l > kMaxMomentOrder || k > kMaxMomentOrder) {
    throw InvalidParams("moment orders must lie in [0, 16]");
  }
  TruncationOptions options;
  options.extra_terms = 2 * (l + k) + 8;
  const SteadyWavefunction psi = wavefunction_twophoton(params, branch, options);
  const auto [lambda, y, z] = derive_twophoton(params, branch);

  // F_j = (-lambda)^j 2F1(-j, y; z; 2), j = 0..M.
  const int top = psi.truncation;
  std::vector<Complex> coefficients(top + 1);
  Complex power(1, 0);
  for (int j = 0; j <= top; ++j) {
    coefficients[j] = power * hyp2f1_terminating(j, y, z);
    power *= -lambda;
  }

  Complex series(0, 0);
  double norm = 0;
  double inverse_factorial = 1;
  for (int m = 0; m <= top; ++m) {
    if (m > 0) inverse_factorial /= m;
    norm += inverse_factorial * std::norm(coefficients[m]);
    if (m + std::max(l, k) <= top) {
      series += inverse_factorial * std::conj(coefficients[m + l]) *
                coefficients[m + k];
    }
  }
  if (!std::isfinite(norm) || !std::isfinite(std::abs(series))) {
    throw NonConvergence("correlation_twophoton: series overflowed");
  }

  CorrelationResult result;
  result.l = l;
  result.k = k;
  result.series_value = series / (norm * std::pow(2.0, 0.5 * (l + k)));
  double abs_scale = 0;
  result.amplitude_value = amplitude_moment(psi, l, k, &abs_scale);
  result.cross_check_error =
      cross_check(result.series_value, result.amplitude_value, abs_scale, 1e-9,
                  "correlation_twophoton");
  result.value = result.amplitude_value;
  result.terms_used = top + 1;
  result.converged = psi.converged;
  return result;
}

std::vector<ResonancePrediction> resonance_predictions(int n_max,
                                                       const ModelParams& params) {
  if (n_max < 1) throw InvalidParams("resonance_predictions: n_max must be >= 1");
  const bool coherent = params.omega != 0;
  const bool pair = params.lambda != Complex(0, 0);
  std::vector<ResonancePrediction> out;
  for (int n = 1; n <= n_max; ++n) {
    ResonancePrediction p;
    p.order = n;
    p.detuning_over_chi = -double(n - 1);
    p.allowed = coherent || (pair && n % 2 == 0);
    out.push_back(p);
  }
  return out;
}

ResonanceScan resonance_scan(const ModelParams& params,
                             std::span<const double> detuning_over_chi) {
  if (params.chi == 0) {
    throw InvalidParams("resonance_scan: detuning is measured in units of chi");
  }
  ResonanceScan scan;
  scan.rows = parallel_map(detuning_over_chi.size(), [&](std::size_t j) {
    ModelParams point = params;
    point.delta_c = detuning_over_chi[j] * params.chi;
    ResonanceScanRow row;
    row.delta_c_over_chi = detuning_over_chi[j];
    row.n_exact = correlation_twophoton(point, 1, 1).value.real();
    const double pairs = correlation_twophoton(point, 2, 2).value.real();
    row.g2 = row.n_exact > 0 ? pairs / (row.n_exact * row.n_exact)
                             : std::numeric_limits<double>::quiet_NaN();
    return row;
  });
  for (std::size_t j = 1; j + 1 < scan.rows.size(); ++j) {
    const double here = scan.rows[j].n_exact;
    if (here > scan.rows[j - 1].n_exact && here > scan.rows[j + 1].n_exact) {
      scan.rows[j].is_peak = true;
      scan.peaks.push_back(scan.rows[j].delta_c_over_chi);
    }
  }
  return scan;
}

}  // namespace kerr
