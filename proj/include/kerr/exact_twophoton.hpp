#ifndef KERR_EXACT_TWOPHOTON_HPP
#define KERR_EXACT_TWOPHOTON_HPP

#include <span>
#include <vector>

#include "kerr/model.hpp"
#include "kerr/wavefunction.hpp"

namespace kerr {

/// Closed form beta_m = (-lambda)^m 2F1(-m, y; z; 2) / sqrt(m!).
///
/// With no two-photon drive and no two-photon loss this delegates to
/// wavefunction_linear; two-photon loss without a two-photon drive has no
/// closed form here and raises UnsupportedModel.
SteadyWavefunction wavefunction_twophoton(
    const ModelParams& params,
    DisplacementBranch branch = DisplacementBranch::principal,
    const TruncationOptions& options = {});

/// Forward solution of the three-term recursion
///   [(2 dc - i g) + (2 chi - i kappa)(m-1)] sqrt(m) beta_m
///       = -2 i sqrt(2) omega beta_{m-1} - 2 Lambda sqrt(m-1) beta_{m-2}
/// from beta_0 = 1. Independent of the closed form.
SteadyWavefunction wavefunction_via_three_term(
    const ModelParams& params, const TruncationOptions& options = {});

/// <a^dag^l a^k> = sum_m F*_{m+l} F_{m+k} / m! / (N sqrt(2^{l+k})) with
/// F_j = (-lambda)^j 2F1(-j, y; z; 2), cross-checked against the amplitude
/// sum (which is the reported value) to 1e-9.
CorrelationResult correlation_twophoton(
    const ModelParams& params, int l, int k,
    DisplacementBranch branch = DisplacementBranch::principal);

/// Multiphoton resonance: n pump photons match n cavity photons when
/// delta_c / chi = -(n - 1).
struct ResonancePrediction {
  int order = 1;
  double detuning_over_chi = 0;
  /// Whether the drive configuration can supply n photons.
  bool allowed = false;
};

/// Orders 1..n_max. Two-photon drive only: even orders. Any coherent drive:
/// every order. No drive: none.
std::vector<ResonancePrediction> resonance_predictions(int n_max,
                                                       const ModelParams& params);

struct ResonanceScanRow {
  double delta_c_over_chi = 0;
  double n_exact = 0;
  double g2 = 0;
  bool is_peak = false;
};

struct ResonanceScan {
  std::vector<ResonanceScanRow> rows;
  /// Grid detunings of strict three-point local maxima of n_exact.
  std::vector<double> peaks;
};

/// Sweeps delta_c = grid value * chi; the other rates are kept.
ResonanceScan resonance_scan(const ModelParams& params,
                             std::span<const double> detuning_over_chi);

}  // namespace kerr

#endif  // KERR_EXACT_TWOPHOTON_HPP
