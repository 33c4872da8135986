#ifndef KERR_EXACT_LINEAR_HPP
#define KERR_EXACT_LINEAR_HPP

#include <span>
#include <vector>

#include "kerr/model.hpp"
#include "kerr/wavefunction.hpp"

namespace kerr {

/// Largest moment order accepted by the correlation functions.
inline constexpr int kMaxMomentOrder = 16;

/// Steady state of the coherently driven Kerr resonator from
///   beta_m = sqrt(2/m) eps / (x + m - 1) beta_{m-1},  beta_0 = 1.
/// Requires chi != 0 and no two-photon terms.
SteadyWavefunction wavefunction_linear(const ModelParams& params,
                                       const TruncationOptions& options = {});

/// <a^dag^l a^k> = conj(eps)^l eps^k / ((x*)_l (x)_k)
///               * 0F2(x*+l, x+k; 2|eps|^2) / 0F2(x*, x; 2|eps|^2),
/// cross-checked against the amplitude sum to 1e-9.
CorrelationResult correlation_linear(const ModelParams& params, int l, int k);

struct ExactSweepRow {
  double omega = 0;
  double n_exact = 0;  // <a^dag a>
  Complex a;           // <a>
  double g2 = 0;       // <a^dag^2 a^2> / <a^dag a>^2, NaN at zero occupation
  Complex moment;      // requested <a^dag^l a^k>
};

/// `params.omega` is replaced by each grid value.
std::vector<ExactSweepRow> sweep_drive_exact(const ModelParams& params,
                                             std::span<const double> omega_grid,
                                             int l = 1, int k = 1);

}  // namespace kerr

#endif  // KERR_EXACT_LINEAR_HPP
