#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "ringpairs/dispersion.hpp"
#include "ringpairs/types.hpp"

namespace ringpairs::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResonanceSpec {
  int m = 0;
  double wavelength_nm = 0.0;
};

struct QualitySpec {
  double intrinsic = 0.0;
  double extrinsic = 0.0;
};

struct GeometrySpec {
  std::vector<double> radius_um;
  std::vector<double> width_nm{0.0};
  std::vector<double> height_nm{0.0};
  std::string material;
};

// Quoted triple; the idler is either given or placed by the bin mismatch.
struct ExplicitTriple {
  Sign sign = Sign::plus;
  ResonanceSpec pump, signal;
  std::optional<ResonanceSpec> idler;
  double bin_mismatch_MHz = 0.0;
  double group_index = 0.0;  // 0: use n_bar
};

struct FamilySpec {
  enum class Kind { csv, constant, through };
  Kind kind = Kind::constant;
  std::string path;  // may hold {radius_um}, {width_nm}, {height_nm}
  double n_eff = 0.0;
  std::vector<ResonanceSpec> through;
  double group_index = 0.0;  // one-point fits
  bool extrapolate = false;
};

struct DispersionSpec {
  ModeFamily signal_family = ModeFamily::te0;
  ModeFamily pump_family = ModeFamily::tm0;
  FamilySpec te0, tm0;
  bool has_te0 = false, has_tm0 = false;
  double pump_min_nm = 770.0, pump_max_nm = 780.0;
  double signal_min_nm = 1500.0, signal_max_nm = 1600.0;
  double pump_target_nm = 775.0;
  int triples = 8;

  const FamilySpec& family(ModeFamily f) const { return f == ModeFamily::te0 ? te0 : tm0; }
};

struct NonlinearSpec {
  double chi2_pm_per_V = 0.0;
  double n_bar = 3.5;
  std::optional<double> a_eff_um2;
  std::optional<std::string> profile_signal, profile_idler, profile_pump;
};

struct CwSpec {
  double power_mW = 1.0;
  bool optimal_detuning = false;
  double detuning_MHz = 0.0;
};

struct PulseSpec {
  double peak_power_uW = 10.0;
  std::vector<double> durations_ps;
  double detuning_MHz = 0.0;
  std::vector<double> energy_sweep_fJ;
  double sweep_duration_ps = 0.0;  // 0: no sweep
  bool export_jsa = false;
};

struct GridConfig {
  int points = 256;
  double half_width_linewidths = 20.0;
  int max_points = 1024;
  double tolerance = 0.005;
  int schmidt_modes = 16;
};

struct SpectrumSpec {
  int points_per_bin = 10000;
  double bin_half_width_linewidths = 20.0;
};

struct RunConfig {
  std::filesystem::path source_dir;
  GeometrySpec geometry;
  std::optional<ExplicitTriple> triple;
  std::optional<DispersionSpec> dispersion;
  NonlinearSpec nonlinear;
  QualitySpec signal_q, idler_q, pump_q;
  CwSpec cw;
  std::optional<PulseSpec> pulse;
  GridConfig grid;
  SpectrumSpec spectrum;
  std::vector<double> coupling_eta;
  struct EtaRange {
    double start, stop;
    int points;
  };
  std::optional<EtaRange> coupling_range;  // echo form when eta came from a range
  std::filesystem::path output_dir = "out";
};

RunConfig parse_config(const YAML::Node& root, const std::filesystem::path& source_dir);
RunConfig parse_config_string(const std::string& text, const std::filesystem::path& source_dir = ".");
// Throws IoError when the file is missing, ConfigError when it is malformed.
RunConfig load_config(const std::filesystem::path& path);

// Every field, defaults included.
YAML::Node to_yaml(const RunConfig& config);
std::string resolved_text(const RunConfig& config);

// Substitutes {radius_um}, {width_nm} and {height_nm}; relative results are
// taken against the config directory.
std::filesystem::path expand_path(const RunConfig& config, const std::string& pattern, double radius_um,
                                  double width_nm, double height_nm);

}  // namespace ringpairs::cli
