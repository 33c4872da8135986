#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "kerr/cli.hpp"
#include "kerr/exact_linear.hpp"
#include "kerr/exact_twophoton.hpp"
#include "kerr/format.hpp"
#include "kerr/lindblad.hpp"
#include "kerr/meanfield.hpp"
#include "kerr/parallel.hpp"

namespace kerr::cli {
namespace {

using nlohmann::json;

// A table held as text cells for CSV and as numbers for JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

json real(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

std::string cell(const json& value) {
  if (value.is_null()) return "nan";
  if (value.is_boolean()) return value.get<bool>() ? "1" : "0";
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number()) return format_real(value.get<double>());
  return value.get<std::string>();
}

std::string header_line(const RunManifest& manifest) {
  std::string line = "# command=" + manifest.command;
  if (manifest.command == "validate") {
    return line + " points=" + std::to_string(manifest.points.size()) +
           " tol=" + format_real(manifest.tol);
  }
  line += " " + describe(manifest.params);
  if (manifest.unit != FrequencyUnit::absolute) {
    line += " unit=" + to_string(manifest.unit) + " scale=" + format_real(manifest.scale);
  }
  if (manifest.command == "exact-sweep") {
    line += " l=" + std::to_string(manifest.l) + " k=" + std::to_string(manifest.k);
  }
  return line;
}

std::string render(const RunManifest& manifest, const Table& table) {
  std::ostringstream out;
  if (manifest.format == "json") {
    json rows = json::array();
    for (const auto& row : table.rows) rows.push_back(row);
    json document = {{"manifest", manifest_to_json(manifest)},
                     {"columns", table.columns},
                     {"rows", rows}};
    out << document.dump(2) << "\n";
    return out.str();
  }
  out << header_line(manifest) << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell(row[c]);
    out << "\n";
  }
  return out.str();
}

Table meanfield_table(const RunManifest& manifest) {
  const std::vector<double> grid = manifest.grid.expand();
  Table table{{"omega", "branch_count", "branch_index", "n", "re_a0", "im_a0",
               "stable", "degenerate"},
              {}};
  for (const auto& row : sweep_drive(manifest.params, grid)) {
    const auto count = static_cast<int>(row.branches.size());
    for (int b = 0; b < count; ++b) {
      const auto& branch = row.branches[b];
      table.rows.push_back({real(row.omega), count, b, real(branch.n),
                            real(branch.a0.real()), real(branch.a0.imag()),
                            branch.stable, branch.degenerate});
    }
  }
  return table;
}

Table exact_table(const RunManifest& manifest) {
  const std::vector<double> grid = manifest.grid.expand();
  Table table{{"omega", "n_exact", "re_a", "im_a", "g2", "re_corr", "im_corr"}, {}};
  for (const auto& row :
       sweep_drive_exact(manifest.params, grid, manifest.l, manifest.k)) {
    table.rows.push_back({real(row.omega), real(row.n_exact), real(row.a.real()),
                          real(row.a.imag()), real(row.g2), real(row.moment.real()),
                          real(row.moment.imag())});
  }
  return table;
}

Table resonance_table(const RunManifest& manifest) {
  const std::vector<double> grid = manifest.grid.expand();
  Table table{{"delta_c_over_chi", "n_exact", "g2", "is_peak"}, {}};
  for (const auto& row : resonance_scan(manifest.params, grid).rows) {
    table.rows.push_back(
        {real(row.delta_c_over_chi), real(row.n_exact), real(row.g2), row.is_peak});
  }
  return table;
}

struct ValidationRow {
  std::string point_id;
  std::string observable;
  Complex exact;
  Complex oracle;
  double rel_err = 0;
  int cutoff = 0;
  bool pass = false;
};

Table validate_table(const RunManifest& manifest, bool* all_pass) {
  if (manifest.points.empty()) throw InvalidParams("validate: no points given");
  if (!(manifest.tol > 0)) throw InvalidParams("validate: tol must be > 0");
  struct Task {
    const ValidationPoint* point;
    int l, k;
  };
  std::vector<Task> tasks;
  for (const auto& point : manifest.points) {
    for (auto [l, k] : point.observables) tasks.push_back({&point, l, k});
  }
  // The oracle is certified two orders tighter than the comparison.
  const double oracle_tol = std::min(1e-8, 1e-2 * manifest.tol);
  const auto rows = parallel_map(tasks.size(), [&](std::size_t j) {
    const Task& task = tasks[j];
    ValidationRow row;
    row.point_id = task.point->id;
    row.observable = "l" + std::to_string(task.l) + "k" + std::to_string(task.k);
    row.exact = correlation_twophoton(task.point->params, task.l, task.k).value;
    const CutoffCertificate certificate = adaptive_cutoff(
        task.point->params, moment_observable(task.l, task.k), oracle_tol);
    row.oracle = certificate.check_value;
    row.cutoff = certificate.check_cutoff;
    const double difference = std::abs(row.exact - row.oracle);
    const double magnitude = std::max(std::abs(row.exact), std::abs(row.oracle));
    row.rel_err = magnitude > 0 ? difference / magnitude : 0.0;
    row.pass = row.rel_err <= manifest.tol || difference <= 1e-12;
    return row;
  });

  Table table{{"point_id", "observable", "exact", "oracle", "rel_err", "cutoff", "pass",
               "im_exact", "im_oracle"},
              {}};
  *all_pass = true;
  for (const auto& row : rows) {
    *all_pass = *all_pass && row.pass;
    table.rows.push_back({row.point_id, row.observable, real(row.exact.real()),
                          real(row.oracle.real()), real(row.rel_err), row.cutoff,
                          row.pass, real(row.exact.imag()), real(row.oracle.imag())});
  }
  return table;
}

std::string residual_report(const RunManifest& manifest) {
  const ModelParams& params = manifest.params;
  const SteadyWavefunction psi = params.has_two_photon_terms()
                                     ? wavefunction_twophoton(params)
                                     : wavefunction_linear(params);
  const OperatorMatrix h =
      build_generalized_hamiltonian_clq(params, manifest.cutoffs, manifest.lowering);
  const ResidualReport report = steady_residual(h, psi, manifest.interior);
  json document = {
      {"manifest", manifest_to_json(manifest)},
      {"residual_norm", report.residual_norm},
      {"relative_residual", report.residual_norm / report.psi_norm},
      {"edge_norm", report.edge_norm},
      {"psi_norm", report.psi_norm},
      {"interior_cut", report.interior_cut},
      {"cutoffs", {{"cl", report.cutoffs.first}, {"q", report.cutoffs.second}}},
      {"wavefunction_truncation", psi.truncation}};
  return document.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  out << contents;
  out.close();
  if (!out) throw std::ios_base::failure("failed writing " + path);
}

}  // namespace

int execute(const RunManifest& manifest, std::ostream& err) {
  bool all_pass = true;
  std::string contents;
  try {
    if (manifest.output_path.empty()) throw InvalidParams("no output path given");
    if (manifest.format != "csv" && manifest.format != "json") {
      throw InvalidParams("format must be csv or json");
    }
    if (manifest.command == "meanfield-sweep") {
      contents = render(manifest, meanfield_table(manifest));
    } else if (manifest.command == "exact-sweep") {
      contents = render(manifest, exact_table(manifest));
    } else if (manifest.command == "resonance-scan") {
      contents = render(manifest, resonance_table(manifest));
    } else if (manifest.command == "validate") {
      contents = render(manifest, validate_table(manifest, &all_pass));
    } else if (manifest.command == "residual") {
      contents = residual_report(manifest);
    } else {
      throw InvalidParams("unknown command '" + manifest.command + "'");
    }
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const UnsupportedModel& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kComputationError;
  }

  try {
    write_file(manifest.output_path, contents);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  if (!all_pass) {
    err << "validate: at least one comparison exceeded tol; see "
        << manifest.output_path << "\n";
    return kComputationError;
  }
  return kSuccess;
}

}  // namespace kerr::cli
