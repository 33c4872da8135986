#include "kerr/model_io.hpp"

#include <array>
#include <fstream>
#include <set>
#include <string>

namespace kerr {
namespace {

constexpr std::array<const char*, 7> kFieldNames = {
    "delta_c", "chi", "omega", "gamma", "lambda_re", "lambda_im", "kappa"};

double& field(ModelParams& params, std::string_view name, double& lambda_re,
              double& lambda_im) {
  if (name == "delta_c") return params.delta_c;
  if (name == "chi") return params.chi;
  if (name == "omega") return params.omega;
  if (name == "gamma") return params.gamma;
  if (name == "lambda_re") return lambda_re;
  if (name == "lambda_im") return lambda_im;
  return params.kappa;
}

double number(const nlohmann::json& value, const std::string& key) {
  if (!value.is_number()) {
    throw InvalidParams("parameter '" + key + "' must be a number");
  }
  return value.get<double>();
}

}  // namespace

ModelParams params_from_json(const nlohmann::json& object) {
  if (!object.is_object()) {
    throw InvalidParams("parameter file must hold a JSON object");
  }
  FrequencyUnit unit = FrequencyUnit::absolute;
  if (object.contains("unit")) {
    if (!object["unit"].is_string()) throw InvalidParams("'unit' must be a string");
    unit = parse_unit(object["unit"].get<std::string>());
  }
  const std::string suffix =
      unit == FrequencyUnit::absolute ? "" : "_over_" + to_string(unit);
  const std::string anchor = unit == FrequencyUnit::absolute ? "" : to_string(unit);

  double scale = 1;
  if (object.contains("scale")) {
    if (unit == FrequencyUnit::absolute) {
      throw InvalidParams("'scale' requires a ratio unit");
    }
    scale = number(object["scale"], "scale");
  }

  ModelParams params;
  params.gamma = 0;
  double lambda_re = 0;
  double lambda_im = 0;
  std::set<std::string> known = {"unit", "scale"};
  bool gamma_given = false;
  for (const char* name : kFieldNames) {
    if (name == anchor) {
      field(params, name, lambda_re, lambda_im) = scale;
      if (anchor == "gamma") gamma_given = true;
      continue;
    }
    const std::string key = std::string(name) + suffix;
    known.insert(key);
    if (object.contains(key)) {
      field(params, name, lambda_re, lambda_im) = scale * number(object[key], key);
      if (std::string_view(name) == "gamma") gamma_given = true;
    }
  }
  for (const auto& item : object.items()) {
    if (!known.contains(item.key())) {
      throw InvalidParams("unknown parameter key '" + item.key() + "'");
    }
  }
  if (!gamma_given) throw InvalidParams("gamma must be specified");
  params.lambda = Complex(lambda_re, lambda_im);
  params.validate();
  return params;
}

nlohmann::json params_to_json(const ModelParams& params) {
  return {{"delta_c", params.delta_c},
          {"chi", params.chi},
          {"omega", params.omega},
          {"gamma", params.gamma},
          {"lambda_re", params.lambda.real()},
          {"lambda_im", params.lambda.imag()},
          {"kappa", params.kappa}};
}

ModelParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open parameter file " + path.string());
  nlohmann::json object;
  try {
    in >> object;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams("malformed parameter file " + path.string() + ": " + e.what());
  }
  return params_from_json(object);
}

}  // namespace kerr
