#ifndef KERR_MODEL_HPP
#define KERR_MODEL_HPP

#include <string>

#include "kerr/specfun.hpp"

namespace kerr {

/// Driven-dissipative Kerr resonator, hbar = 1, all rates in one frequency
/// unit.
///
///   H = delta_c a^dag a + chi a^dag^2 a^2 + i omega (a^dag - a)
///       + (lambda a^dag^2 + conj(lambda) a^2) / 2
///   d rho/dt = -i[H, rho] + gamma D[a] rho + kappa D[a^2] rho
struct ModelParams {
  double delta_c = 0;  // cavity minus pump frequency
  double chi = 0;      // Kerr nonlinearity
  double omega = 0;    // coherent drive amplitude
  double gamma = 1;    // one-photon loss
  Complex lambda = 0;  // two-photon drive amplitude
  double kappa = 0;    // two-photon loss

  /// Throws InvalidParams unless gamma > 0, kappa >= 0, omega >= 0 and every
  /// field is finite.
  void validate() const;

  bool has_two_photon_terms() const { return lambda != Complex(0, 0) || kappa != 0; }

  /// Multiplies every rate by s.
  ModelParams scaled(double s) const;
};

struct LinearDerived {
  Complex epsilon;  // omega / (i chi)
  Complex x;        // (2 delta_c - i gamma) / (2 chi)
};

enum class DisplacementBranch { principal, negated };

struct TwoPhotonDerived {
  Complex lambda_disp;  // displacement of the classical field
  Complex y;
  Complex z;
};

LinearDerived derive_linear(const ModelParams& params);

/// lambda_disp = i sqrt(2 Lambda / (2 chi - i kappa)) on the principal square
/// root branch (or its negative), then y and z from it.
TwoPhotonDerived derive_twophoton(
    const ModelParams& params,
    DisplacementBranch branch = DisplacementBranch::principal);

/// Frequency unit in which ratio-form parameters are expressed.
enum class FrequencyUnit { absolute, gamma, chi };

FrequencyUnit parse_unit(const std::string& name);
std::string to_string(FrequencyUnit unit);

/// One-line `key=value` summary with every field at 17 significant digits.
std::string describe(const ModelParams& params);

}  // namespace kerr

#endif  // KERR_MODEL_HPP
