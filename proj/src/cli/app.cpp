#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "kerr/cli.hpp"
#include "kerr/model_io.hpp"

namespace kerr::cli {
namespace {

using nlohmann::json;

// Rate flags shared by the model-driven subcommands.
struct RateFlags {
  std::map<std::string, std::optional<double>> values;
  std::string unit;

  void attach(CLI::App* app, const std::vector<std::pair<std::string, std::string>>& flags) {
    for (const auto& [flag, field] : flags) {
      app->add_option("--" + flag, values[field], field + " (absolute, or a multiple of the unit)");
    }
    app->add_option("--unit", unit, "read every rate as a multiple of gamma or chi")
        ->check(CLI::IsMember({"gamma", "chi"}));
  }

  // Returns the resolved parameters and the unit scale.
  std::pair<ModelParams, double> resolve(FrequencyUnit* unit_out) const {
    const FrequencyUnit frequency_unit =
        unit.empty() ? FrequencyUnit::absolute : parse_unit(unit);
    *unit_out = frequency_unit;
    json object = json::object();
    double scale = 1;
    if (frequency_unit != FrequencyUnit::absolute) {
      const std::string anchor = to_string(frequency_unit);
      object["unit"] = anchor;
      if (auto it = values.find(anchor); it != values.end() && it->second) {
        scale = *it->second;
      }
      object["scale"] = scale;
    }
    const std::string suffix = frequency_unit == FrequencyUnit::absolute
                                   ? ""
                                   : "_over_" + to_string(frequency_unit);
    for (const auto& [field, value] : values) {
      if (!value) continue;
      if (field == to_string(frequency_unit)) continue;
      object[field + suffix] = *value;
    }
    return {params_from_json(object), scale};
  }
};

struct AxisFlags {
  std::optional<double> from, to, step;
  std::vector<double> values;

  void attach(CLI::App* app, const std::string& name) {
    app->add_option("--" + name + "-from", from, name + " grid start");
    app->add_option("--" + name + "-to", to, name + " grid stop (inclusive)");
    app->add_option("--" + name + "-step", step, name + " grid step");
    app->add_option("--" + name + "-values", values, name + " explicit grid")
        ->delimiter(',');
  }

  GridSpec spec(double scale) const {
    GridSpec grid;
    for (double v : values) grid.values.push_back(scale * v);
    if (from) grid.start = scale * *from;
    if (to) grid.stop = scale * *to;
    if (step) grid.step = scale * *step;
    return grid;
  }
};

const std::vector<std::pair<std::string, std::string>> kSweepRates = {
    {"delta-c", "delta_c"}, {"chi", "chi"}, {"gamma", "gamma"}};

const std::vector<std::pair<std::string, std::string>> kAllRates = {
    {"delta-c", "delta_c"},   {"chi", "chi"},
    {"gamma", "gamma"},       {"omega", "omega"},
    {"lambda2", "lambda_re"}, {"lambda2-im", "lambda_im"},
    {"kappa", "kappa"}};

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Steady states of the driven-dissipative Kerr resonator"};
  app.require_subcommand(1);

  RunManifest manifest;
  std::string output;
  std::string format = "csv";

  RateFlags meanfield_rates;
  AxisFlags meanfield_axis;
  auto* meanfield = app.add_subcommand("meanfield-sweep", "mean-field branches over a drive grid");
  meanfield_rates.attach(meanfield, kSweepRates);
  meanfield_axis.attach(meanfield, "omega");

  RateFlags exact_rates;
  AxisFlags exact_axis;
  auto* exact = app.add_subcommand("exact-sweep", "exact moments over a drive grid");
  exact_rates.attach(exact, kSweepRates);
  exact_axis.attach(exact, "omega");
  exact->add_option("--l", manifest.l, "creation power of the reported moment");
  exact->add_option("--k", manifest.k, "annihilation power of the reported moment");

  RateFlags scan_rates;
  AxisFlags scan_axis;
  auto* scan = app.add_subcommand("resonance-scan",
                                  "exact photon number over a detuning grid in units of chi");
  scan_rates.attach(scan, {{"chi", "chi"}, {"gamma", "gamma"}, {"omega", "omega"},
                           {"lambda2", "lambda_re"}, {"lambda2-im", "lambda_im"},
                           {"kappa", "kappa"}});
  scan_axis.attach(scan, "delta");

  std::string points_path;
  auto* validate = app.add_subcommand("validate", "compare exact moments with the Lindblad oracle");
  validate->add_option("--manifest", points_path, "JSON list of parameter points")->required();
  validate->add_option("--tol", manifest.tol, "relative tolerance");

  RateFlags residual_rates;
  std::string params_path;
  std::string lowering = "consistent";
  auto* residual = app.add_subcommand(
      "residual", "apply the generalized Hamiltonian to the exact steady state");
  residual_rates.attach(residual, kAllRates);
  residual->add_option("--params", params_path, "parameter JSON file (overrides rate flags)");
  residual->add_option("--cutoff-cl", manifest.cutoffs.first, "classical-field cutoff");
  residual->add_option("--cutoff-q", manifest.cutoffs.second, "quantum-field cutoff");
  residual->add_option("--interior", manifest.interior, "largest classical index checked");
  residual->add_option("--lowering", lowering)->check(CLI::IsMember({"consistent", "literal"}));

  std::string manifest_path;
  auto* run = app.add_subcommand("run", "execute a JSON run manifest or a previous JSON output");
  run->add_option("manifest", manifest_path, "manifest file")->required();

  for (auto* sub : {meanfield, exact, scan, validate, residual}) {
    sub->add_option("-o,--output", output, "output file")->required();
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  }
  run->add_option("-o,--output", output, "output file (overrides the manifest)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (run->parsed()) {
      std::ifstream in(manifest_path);
      if (!in) throw InvalidParams("cannot open manifest " + manifest_path);
      manifest = manifest_from_json(json::parse(in));
      if (!output.empty()) manifest.output_path = output;
      return execute(manifest, std::cerr);
    }

    manifest.output_path = output;
    manifest.format = format;
    if (meanfield->parsed() || exact->parsed()) {
      manifest.command = meanfield->parsed() ? "meanfield-sweep" : "exact-sweep";
      const RateFlags& rates = meanfield->parsed() ? meanfield_rates : exact_rates;
      const AxisFlags& axis = meanfield->parsed() ? meanfield_axis : exact_axis;
      std::tie(manifest.params, manifest.scale) = rates.resolve(&manifest.unit);
      manifest.grid = axis.spec(manifest.scale);
    } else if (scan->parsed()) {
      manifest.command = "resonance-scan";
      std::tie(manifest.params, manifest.scale) = scan_rates.resolve(&manifest.unit);
      manifest.grid = scan_axis.spec(1.0);
    } else if (validate->parsed()) {
      manifest.command = "validate";
      std::ifstream in(points_path);
      if (!in) throw InvalidParams("cannot open manifest " + points_path);
      manifest.points = points_from_json(json::parse(in));
    } else {
      manifest.command = "residual";
      manifest.lowering =
          lowering == "literal" ? LoweringForm::literal : LoweringForm::consistent;
      if (!params_path.empty()) {
        manifest.params = load_params(params_path);
      } else {
        // Defaults: the bistable point delta_c = 5, chi = -0.25, omega = 4 (gamma = 1).
        RateFlags rates = residual_rates;
        const std::map<std::string, double> defaults = {
            {"delta_c", 5}, {"chi", -0.25}, {"omega", 4}, {"gamma", 1}};
        if (rates.unit.empty()) {
          for (const auto& [field, value] : defaults) {
            if (!rates.values[field]) rates.values[field] = value;
          }
        }
        std::tie(manifest.params, manifest.scale) = rates.resolve(&manifest.unit);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kUsageError;
  }
  return execute(manifest, std::cerr);
}

}  // namespace kerr::cli
