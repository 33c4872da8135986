#ifndef KERR_WAVEFUNCTION_HPP
#define KERR_WAVEFUNCTION_HPP

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "kerr/specfun.hpp"

namespace kerr {

/// Steady state |0>_q (x) sum_m beta_m |m>_cl of the generalized
/// Hamiltonian, stored as normalized classical-field Fock amplitudes.
struct SteadyWavefunction {
  Eigen::VectorXcd amplitudes;
  /// Highest stored Fock index M.
  int truncation = 0;
  /// Estimated normalized weight beyond M.
  double tail_mass = 0;
  /// sum |beta_m|^2 before normalization, with beta_0 = 1.
  double norm_constant = 1;
  bool converged = false;
};

struct TruncationOptions {
  double tail_tolerance = 1e-16;
  int consecutive = 3;
  int max_terms = 4096;
  /// Amplitudes kept past the stopping point (room for high moments).
  int extra_terms = 0;
};

/// Steady-state moment <a^dag^l a^k> with its convergence diagnostics.
struct CorrelationResult {
  Complex value;
  int l = 0;
  int k = 0;
  int terms_used = 0;
  bool converged = false;
  /// Closed-form / series evaluation.
  Complex series_value;
  /// Direct sum over the stored amplitudes.
  Complex amplitude_value;
  double cross_check_error = 0;
};

namespace detail {

/// Grows beta_0 = 1, beta_1, ... with `amplitude_at(m, previous, scale)`
/// until |beta_m|^2 < tol * sum for `consecutive` indices in a row past
/// `settle_index`, past which the amplitudes decay monotonically. Stored
/// amplitudes are rescaled on overflow; `scale` is the factor currently
/// applied to them, which closed-form callbacks must apply too.
template <typename AmplitudeAt>
SteadyWavefunction grow_wavefunction(AmplitudeAt&& amplitude_at,
                                     int settle_index,
                                     const TruncationOptions& options) {
  std::vector<Complex> beta{Complex(1, 0)};
  double total = 1;
  double scale = 1;
  double log_scale = 0;
  int small_run = 0;
  int stop_at = -1;
  for (int m = 1;; ++m) {
    if (m > options.max_terms) {
      throw NonConvergence("steady-state amplitudes did not decay within " +
                           std::to_string(options.max_terms) + " Fock states");
    }
    Complex next = amplitude_at(m, beta, scale);
    beta.push_back(next);
    const double weight = std::norm(next);
    total += weight;
    if (!std::isfinite(total)) {
      throw NonConvergence("steady-state amplitudes overflowed");
    }
    if (std::abs(next) > 1e150) {
      for (auto& b : beta) b *= 1e-150;
      total *= 1e-300;
      scale *= 1e-150;
      log_scale += 150 * std::log(10.0);
    }
    if (stop_at < 0) {
      small_run = (m > settle_index && weight < options.tail_tolerance * total)
                      ? small_run + 1
                      : 0;
      if (small_run >= options.consecutive) stop_at = m;
    }
    if (stop_at >= 0 && m >= stop_at + options.extra_terms) break;
  }

  SteadyWavefunction psi;
  psi.truncation = static_cast<int>(beta.size()) - 1;
  psi.amplitudes.resize(psi.truncation + 1);
  for (int m = 0; m <= psi.truncation; ++m) psi.amplitudes(m) = beta[m];
  const double norm = psi.amplitudes.norm();
  psi.norm_constant = norm * norm * std::exp(2 * log_scale);
  psi.amplitudes /= norm;
  const double last = std::norm(psi.amplitudes(psi.truncation));
  const double before = std::norm(psi.amplitudes(psi.truncation - 1));
  const double ratio = before > 0 ? std::min(last / before, 0.5) : 0.0;
  psi.tail_mass = last * ratio / (1 - ratio);
  psi.converged = true;
  return psi;
}

}  // namespace detail

/// 2^{-(l+k)/2} sum_m conj(beta_{m+l}) beta_{m+k} sqrt((m+l)! (m+k)!) / m!,
/// the physical moment carried by classical-field amplitudes. `abs_scale`
/// receives the same sum over absolute values.
Complex amplitude_moment(const SteadyWavefunction& psi, int l, int k,
                         double* abs_scale = nullptr);

/// Throws CrossCheckFailure unless the two values agree to `rel_tol`, or to
/// 1e-13 of `abs_scale` (the rounding floor of the amplitude sum).
double cross_check(Complex series, Complex amplitude, double abs_scale,
                   double rel_tol, const char* what);

}  // namespace kerr

#endif  // KERR_WAVEFUNCTION_HPP
