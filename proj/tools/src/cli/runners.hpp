#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "ringpairs/cw.hpp"
#include "ringpairs/pulsed.hpp"

namespace ringpairs::cli {

struct Cell {
  std::size_t index = 0;
  double radius_um = 0.0, width_nm = 0.0, height_nm = 0.0;
};

// Radius outermost, then width, then height.
std::vector<Cell> geometry_cells(const RunConfig& config);

struct ListedResonance {
  std::string role;
  std::string family;
  int m = 0;
  double omega = 0.0;
  double n_eff = 0.0;
  double group_index = 0.0;
};

struct CellSetup {
  Cell cell;
  RingGeometry ring{1.0};
  std::vector<ListedResonance> resonances;
  std::vector<CoupledTriple> triples;  // ascending |bin mismatch| at the pump resonance
  CwPump pump;
};

CellSetup setup_cell(const RunConfig& config, const Cell& cell);

Table resonance_table(const std::vector<CellSetup>& cells);
Table triple_table(const std::vector<CellSetup>& cells);

struct CwRun {
  Table rates;
  nlohmann::json details;
};
CwRun run_cw(const RunConfig& config, int threads);

// log10 efficiency laid out as heights (rows) by widths (columns), one table per radius.
std::vector<std::pair<double, Table>> efficiency_maps(const RunConfig& config, const Table& rates);

Table run_coupling_sweep(const RunConfig& config);

struct SpectrumRun {
  Table spectrum;
  nlohmann::json summary;
};
SpectrumRun run_spectrum(const RunConfig& config, int threads);

struct PulsedRun {
  nlohmann::json records;
  Table summary;
  Table energy_sweep;
  std::vector<std::pair<std::string, Table>> jsa;  // file name, table
};
// `decompose` false stops after the pair-regime grid (jsa command).
PulsedRun run_pulsed(const RunConfig& config, int threads, bool decompose, bool export_jsa);

// Runs one subcommand and writes its outputs plus resolved_config.yaml.
// Returns the paths written.
std::vector<std::filesystem::path> execute(const std::string& command, const RunConfig& config, int threads);

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"resonances", "rate-cw",  "spectrum",  "coupling-sweep",
                                              "jsa",        "squeeze", "sweep-grid"};
  return names;
}

}  // namespace ringpairs::cli
