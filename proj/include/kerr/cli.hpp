#ifndef KERR_CLI_HPP
#define KERR_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kerr/keldysh.hpp"
#include "kerr/model.hpp"

namespace kerr::cli {

enum ExitCode : int { kSuccess = 0, kComputationError = 1, kUsageError = 2 };

/// Either start, stop, step (inclusive of stop up to rounding) or an explicit
/// list of values.
struct GridSpec {
  std::optional<double> start, stop, step;
  std::vector<double> values;

  /// Throws InvalidParams for a malformed axis or an empty grid.
  std::vector<double> expand() const;
};

struct ValidationPoint {
  std::string id;
  ModelParams params;
  std::vector<std::pair<int, int>> observables{{1, 1}};
};

struct RunManifest {
  std::string command;
  /// Absolute rates; ratio-form input is resolved on the way in.
  ModelParams params;
  FrequencyUnit unit = FrequencyUnit::absolute;
  double scale = 1;
  /// omega for the sweeps, delta_c / chi for resonance-scan.
  GridSpec grid;
  std::string output_path;
  std::string format = "csv";

  int l = 1, k = 1;

  std::vector<ValidationPoint> points;
  double tol = 1e-6;

  Cutoffs cutoffs{60, 4};
  int interior = 50;
  LoweringForm lowering = LoweringForm::consistent;
};

nlohmann::json manifest_to_json(const RunManifest& manifest);

/// Accepts the object written by manifest_to_json, or any output JSON
/// document carrying it under "manifest".
RunManifest manifest_from_json(const nlohmann::json& document);

/// Validation manifest: a JSON list of {"id", "params", "observables"}
/// entries, or an object holding that list under "points".
std::vector<ValidationPoint> points_from_json(const nlohmann::json& document);

/// Runs the manifest, writing the artifact only when every step succeeded.
/// Returns an ExitCode; diagnostics go to `err`.
int execute(const RunManifest& manifest, std::ostream& err);

/// Parses the command line and runs it.
int main_entry(int argc, char** argv);

}  // namespace kerr::cli

#endif  // KERR_CLI_HPP
