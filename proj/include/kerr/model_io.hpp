#ifndef KERR_MODEL_IO_HPP
#define KERR_MODEL_IO_HPP

#include <filesystem>

#include <json.hpp>

#include "kerr/model.hpp"

namespace kerr {

/// Reads a flat parameter object.
///
/// Absolute form uses the keys delta_c, chi, omega, gamma, lambda_re,
/// lambda_im, kappa (gamma required, the rest default to 0).
///
/// Ratio form declares `"unit": "gamma"` or `"unit": "chi"`; every other rate
/// is then given as `<name>_over_<unit>` and the anchor rate equals `scale`
/// (default 1). Unknown keys are rejected.
ModelParams params_from_json(const nlohmann::json& object);

/// Absolute-form object accepted back by params_from_json.
nlohmann::json params_to_json(const ModelParams& params);

ModelParams load_params(const std::filesystem::path& path);

}  // namespace kerr

#endif  // KERR_MODEL_IO_HPP
