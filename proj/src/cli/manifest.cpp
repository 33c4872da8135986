#include <cmath>
#include <set>

#include "kerr/cli.hpp"
#include "kerr/model_io.hpp"

namespace kerr::cli {
namespace {

using nlohmann::json;

const std::set<std::string> kCommands = {"meanfield-sweep", "exact-sweep",
                                         "resonance-scan", "validate", "residual"};

double number_at(const json& object, const char* key) {
  if (!object.contains(key) || !object[key].is_number()) {
    throw InvalidParams(std::string("manifest: '") + key + "' must be a number");
  }
  return object[key].get<double>();
}

int integer_at(const json& object, const char* key, int fallback) {
  if (!object.contains(key)) return fallback;
  if (!object[key].is_number_integer()) {
    throw InvalidParams(std::string("manifest: '") + key + "' must be an integer");
  }
  return object[key].get<int>();
}

json grid_to_json(const GridSpec& grid) {
  if (!grid.values.empty()) return {{"values", grid.values}};
  json out = json::object();
  if (grid.start) out["start"] = *grid.start;
  if (grid.stop) out["stop"] = *grid.stop;
  if (grid.step) out["step"] = *grid.step;
  return out;
}

GridSpec grid_from_json(const json& object) {
  if (!object.is_object()) throw InvalidParams("manifest: 'grid' must be an object");
  GridSpec grid;
  if (object.contains("values")) {
    for (const auto& v : object["values"]) {
      if (!v.is_number()) throw InvalidParams("manifest: grid values must be numbers");
      grid.values.push_back(v.get<double>());
    }
    return grid;
  }
  if (object.contains("start")) grid.start = number_at(object, "start");
  if (object.contains("stop")) grid.stop = number_at(object, "stop");
  if (object.contains("step")) grid.step = number_at(object, "step");
  return grid;
}

json point_to_json(const ValidationPoint& point) {
  json observables = json::array();
  for (auto [l, k] : point.observables) observables.push_back({l, k});
  return {{"id", point.id},
          {"params", params_to_json(point.params)},
          {"observables", observables}};
}

ValidationPoint point_from_json(const json& object, std::size_t index) {
  if (!object.is_object() || !object.contains("params")) {
    throw InvalidParams("validation point " + std::to_string(index) +
                        " needs a 'params' object");
  }
  ValidationPoint point;
  point.id = object.value("id", "p" + std::to_string(index));
  point.params = params_from_json(object["params"]);
  if (object.contains("observables")) {
    point.observables.clear();
    for (const auto& pair : object["observables"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer()) {
        throw InvalidParams("observables must be [l, k] integer pairs");
      }
      point.observables.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    if (point.observables.empty()) {
      throw InvalidParams("validation point '" + point.id + "' lists no observables");
    }
  }
  return point;
}

}  // namespace

std::vector<double> GridSpec::expand() const {
  if (!values.empty()) {
    for (double v : values) {
      if (!std::isfinite(v)) throw InvalidParams("grid values must be finite");
    }
    return values;
  }
  if (!start || !stop || !step) {
    throw InvalidParams("grid needs start, stop and step, or explicit values");
  }
  if (!(*step > 0) || !std::isfinite(*start) || !std::isfinite(*stop)) {
    throw InvalidParams("grid step must be > 0 and the bounds finite");
  }
  const double span = (*stop - *start) / *step;
  if (span < -1e-9) throw InvalidParams("grid is empty (stop < start)");
  const long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  if (count > 10000000) throw InvalidParams("grid has more than 1e7 points");
  std::vector<double> out(count);
  for (long j = 0; j < count; ++j) out[j] = *start + double(j) * *step;
  return out;
}

json manifest_to_json(const RunManifest& manifest) {
  json out = {{"command", manifest.command},
              {"params", params_to_json(manifest.params)},
              {"unit", to_string(manifest.unit)},
              {"scale", manifest.scale},
              {"output", manifest.output_path},
              {"format", manifest.format}};
  if (manifest.command == "validate") {
    json points = json::array();
    for (const auto& p : manifest.points) points.push_back(point_to_json(p));
    out["points"] = points;
    out["tol"] = manifest.tol;
  } else if (manifest.command == "residual") {
    out["cutoff_cl"] = manifest.cutoffs.first;
    out["cutoff_q"] = manifest.cutoffs.second;
    out["interior"] = manifest.interior;
    out["lowering"] =
        manifest.lowering == LoweringForm::consistent ? "consistent" : "literal";
  } else {
    out["grid"] = grid_to_json(manifest.grid);
    if (manifest.command == "exact-sweep") {
      out["l"] = manifest.l;
      out["k"] = manifest.k;
    }
  }
  return out;
}

RunManifest manifest_from_json(const json& document) {
  const json& object =
      document.is_object() && document.contains("manifest") ? document["manifest"]
                                                            : document;
  if (!object.is_object()) throw InvalidParams("manifest must be a JSON object");
  RunManifest manifest;
  manifest.command = object.value("command", "");
  if (!kCommands.contains(manifest.command)) {
    throw InvalidParams("manifest: unknown command '" + manifest.command + "'");
  }
  if (object.contains("params")) manifest.params = params_from_json(object["params"]);
  if (object.contains("unit")) {
    manifest.unit = parse_unit(object["unit"].get<std::string>());
  }
  if (object.contains("scale")) manifest.scale = number_at(object, "scale");
  manifest.output_path = object.value("output", "");
  manifest.format = object.value("format", "csv");
  if (object.contains("grid")) manifest.grid = grid_from_json(object["grid"]);
  manifest.l = integer_at(object, "l", 1);
  manifest.k = integer_at(object, "k", 1);
  if (object.contains("points")) manifest.points = points_from_json(object["points"]);
  if (object.contains("tol")) manifest.tol = number_at(object, "tol");
  manifest.cutoffs.first = integer_at(object, "cutoff_cl", manifest.cutoffs.first);
  manifest.cutoffs.second = integer_at(object, "cutoff_q", manifest.cutoffs.second);
  manifest.interior = integer_at(object, "interior", manifest.interior);
  const std::string lowering = object.value("lowering", "consistent");
  if (lowering != "consistent" && lowering != "literal") {
    throw InvalidParams("manifest: lowering must be consistent or literal");
  }
  manifest.lowering =
      lowering == "literal" ? LoweringForm::literal : LoweringForm::consistent;
  return manifest;
}

std::vector<ValidationPoint> points_from_json(const json& document) {
  const json& list = document.is_object() && document.contains("points")
                         ? document["points"]
                         : document;
  if (!list.is_array()) {
    throw InvalidParams("validation manifest must be a JSON list of points");
  }
  std::vector<ValidationPoint> points;
  for (std::size_t j = 0; j < list.size(); ++j) {
    points.push_back(point_from_json(list[j], j));
  }
  if (points.empty()) throw InvalidParams("validation manifest lists no points");
  return points;
}

}  // namespace kerr::cli
