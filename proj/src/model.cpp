#include "kerr/model.hpp"

#include <cmath>

#include "kerr/format.hpp"

namespace kerr {

void ModelParams::validate() const {
  const bool finite = std::isfinite(delta_c) && std::isfinite(chi) &&
                      std::isfinite(omega) && std::isfinite(gamma) &&
                      std::isfinite(lambda.real()) &&
                      std::isfinite(lambda.imag()) && std::isfinite(kappa);
  if (!finite) throw InvalidParams("model parameters must be finite");
  if (!(gamma > 0)) throw InvalidParams("gamma must be positive");
  if (kappa < 0) throw InvalidParams("kappa must be nonnegative");
  if (omega < 0) throw InvalidParams("omega must be nonnegative");
}

ModelParams ModelParams::scaled(double s) const {
  ModelParams out = *this;
  out.delta_c *= s;
  out.chi *= s;
  out.omega *= s;
  out.gamma *= s;
  out.lambda *= s;
  out.kappa *= s;
  return out;
}

LinearDerived derive_linear(const ModelParams& params) {
  if (params.chi == 0) {
    throw InvalidParams("derive_linear: chi must be nonzero");
  }
  const Complex i(0, 1);
  return {params.omega / (i * params.chi),
          (2.0 * params.delta_c - i * params.gamma) / (2.0 * params.chi)};
}

TwoPhotonDerived derive_twophoton(const ModelParams& params,
                                  DisplacementBranch branch) {
  const Complex i(0, 1);
  const Complex nonlinear = 2.0 * params.chi - i * params.kappa;
  if (nonlinear == Complex(0, 0)) {
    throw InvalidParams("derive_twophoton: 2 chi - i kappa vanishes");
  }
  if (params.lambda == Complex(0, 0)) {
    throw InvalidParams("derive_twophoton: two-photon drive is zero");
  }
  Complex lambda_disp = i * std::sqrt(2.0 * params.lambda / nonlinear);
  if (branch == DisplacementBranch::negated) lambda_disp = -lambda_disp;
  const Complex detuning = 2.0 * params.delta_c - i * params.gamma;
  const Complex y =
      (-i * 2.0 * std::sqrt(2.0) * params.omega + lambda_disp * detuning) /
      (2.0 * lambda_disp * nonlinear);
  return {lambda_disp, y, detuning / nonlinear};
}

FrequencyUnit parse_unit(const std::string& name) {
  if (name == "absolute" || name.empty()) return FrequencyUnit::absolute;
  if (name == "gamma") return FrequencyUnit::gamma;
  if (name == "chi") return FrequencyUnit::chi;
  throw InvalidParams("unknown frequency unit '" + name + "'");
}

std::string to_string(FrequencyUnit unit) {
  switch (unit) {
    case FrequencyUnit::gamma:
      return "gamma";
    case FrequencyUnit::chi:
      return "chi";
    case FrequencyUnit::absolute:
      break;
  }
  return "absolute";
}

std::string describe(const ModelParams& params) {
  return "delta_c=" + format_real(params.delta_c) +
         " chi=" + format_real(params.chi) +
         " omega=" + format_real(params.omega) +
         " gamma=" + format_real(params.gamma) +
         " lambda_re=" + format_real(params.lambda.real()) +
         " lambda_im=" + format_real(params.lambda.imag()) +
         " kappa=" + format_real(params.kappa);
}

}  // namespace kerr
