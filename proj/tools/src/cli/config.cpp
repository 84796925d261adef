#include "cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "ringpairs/error.hpp"

namespace ringpairs::cli {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void allow_keys(const YAML::Node& node, const std::string& where, std::initializer_list<const char*> keys) {
  if (!node.IsMap()) fail(where, "expected a mapping");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& kv : node) {
    auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

template <class T>
T scalar(const YAML::Node& node, const std::string& where) {
  if (!node.IsScalar()) fail(where, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(where, "cannot read '" + node.Scalar() + "'");
  }
}

double number(const YAML::Node& node, const std::string& where) {
  double v = scalar<double>(node, where);
  if (!std::isfinite(v)) fail(where, "must be finite");
  return v;
}

double positive(const YAML::Node& node, const std::string& where) {
  double v = number(node, where);
  if (!(v > 0.0)) fail(where, "must be positive");
  return v;
}

template <class T>
void optional(const YAML::Node& parent, const char* key, const std::string& where, T& out) {
  if (auto n = parent[key]) out = scalar<T>(n, where + "." + key);
}

// Scalar, list, or {start, stop, step}.
std::vector<double> values(const YAML::Node& node, const std::string& where) {
  std::vector<double> out;
  if (node.IsScalar()) {
    out.push_back(number(node, where));
  } else if (node.IsSequence()) {
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(number(node[i], where + "[" + std::to_string(i) + "]"));
  } else if (node.IsMap()) {
    allow_keys(node, where, {"start", "stop", "step"});
    if (!node["start"] || !node["stop"] || !node["step"]) fail(where, "range needs start, stop and step");
    double start = number(node["start"], where + ".start"), stop = number(node["stop"], where + ".stop");
    double step = number(node["step"], where + ".step");
    if (!(step > 0.0)) fail(where, "step must be positive");
    if (stop < start) fail(where, "stop below start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
  } else {
    fail(where, "expected a number, list or range");
  }
  if (out.empty()) fail(where, "empty");
  return out;
}

ResonanceSpec resonance(const YAML::Node& node, const std::string& where) {
  allow_keys(node, where, {"m", "wavelength_nm"});
  if (!node["m"] || !node["wavelength_nm"]) fail(where, "needs m and wavelength_nm");
  ResonanceSpec r{scalar<int>(node["m"], where + ".m"), positive(node["wavelength_nm"], where + ".wavelength_nm")};
  if (r.m <= 0) fail(where + ".m", "must be positive");
  return r;
}

Sign sign_of(const YAML::Node& node, const std::string& where) {
  auto s = scalar<std::string>(node, where);
  if (s == "+" || s == "plus") return Sign::plus;
  if (s == "-" || s == "minus") return Sign::minus;
  fail(where, "sign must be + or -");
}

QualitySpec quality(const YAML::Node& node, const std::string& where) {
  allow_keys(node, where, {"loaded", "escape_actual", "intrinsic", "extrinsic"});
  const bool loaded = node["loaded"] || node["escape_actual"];
  const bool split = node["intrinsic"] || node["extrinsic"];
  if (loaded == split) fail(where, "give either loaded and escape_actual, or intrinsic and extrinsic");
  if (loaded) {
    if (!node["loaded"] || !node["escape_actual"]) fail(where, "needs both loaded and escape_actual");
    double q = positive(node["loaded"], where + ".loaded");
    double eta = number(node["escape_actual"], where + ".escape_actual");
    if (!(eta > 0.0 && eta < 1.0)) fail(where + ".escape_actual", "must lie in (0, 1)");
    return {q / (1.0 - eta), q / eta};
  }
  if (!node["intrinsic"] || !node["extrinsic"]) fail(where, "needs both intrinsic and extrinsic");
  return {positive(node["intrinsic"], where + ".intrinsic"), positive(node["extrinsic"], where + ".extrinsic")};
}

ModeFamily family_name(const YAML::Node& node, const std::string& where) {
  auto s = scalar<std::string>(node, where);
  try {
    return mode_family_from_string(s);
  } catch (const Error&) {
    fail(where, "unknown mode family '" + s + "'");
  }
}

FamilySpec family(const YAML::Node& node, const std::string& where) {
  allow_keys(node, where, {"csv", "n_eff", "through", "group_index", "extrapolate"});
  FamilySpec f;
  int kinds = (node["csv"] ? 1 : 0) + (node["n_eff"] ? 1 : 0) + (node["through"] ? 1 : 0);
  if (kinds != 1) fail(where, "give exactly one of csv, n_eff, through");
  optional(node, "extrapolate", where, f.extrapolate);
  if (node["csv"]) {
    f.kind = FamilySpec::Kind::csv;
    f.path = scalar<std::string>(node["csv"], where + ".csv");
  } else if (node["n_eff"]) {
    f.kind = FamilySpec::Kind::constant;
    f.n_eff = positive(node["n_eff"], where + ".n_eff");
  } else {
    f.kind = FamilySpec::Kind::through;
    const auto& list = node["through"];
    if (!list.IsSequence() || list.size() < 1 || list.size() > 2) fail(where + ".through", "one or two resonances");
    for (std::size_t i = 0; i < list.size(); ++i)
      f.through.push_back(resonance(list[i], where + ".through[" + std::to_string(i) + "]"));
    if (f.through.size() == 1) {
      if (!node["group_index"]) fail(where, "a single resonance needs group_index");
      f.group_index = positive(node["group_index"], where + ".group_index");
    } else if (node["group_index"]) {
      fail(where, "group_index only applies to single-resonance fits");
    }
  }
  return f;
}

std::pair<double, double> band(const YAML::Node& node, const std::string& where) {
  auto v = values(node, where);
  if (v.size() != 2 || !(v[0] > 0.0 && v[0] < v[1])) fail(where, "expected [low, high] with 0 < low < high");
  return {v[0], v[1]};
}

DispersionSpec dispersion(const YAML::Node& node) {
  const std::string w = "dispersion";
  allow_keys(node, w, {"signal_family", "pump_family", "te0", "tm0", "bands", "triples"});
  DispersionSpec d;
  if (node["signal_family"]) d.signal_family = family_name(node["signal_family"], w + ".signal_family");
  if (node["pump_family"]) d.pump_family = family_name(node["pump_family"], w + ".pump_family");
  if (node["te0"]) {
    d.te0 = family(node["te0"], w + ".te0");
    d.has_te0 = true;
  }
  if (node["tm0"]) {
    d.tm0 = family(node["tm0"], w + ".tm0");
    d.has_tm0 = true;
  }
  for (ModeFamily f : {d.signal_family, d.pump_family}) {
    bool present = f == ModeFamily::te0 ? d.has_te0 : d.has_tm0;
    if (!present) fail(w, "no data for family " + std::string(to_string(f)));
  }
  if (auto b = node["bands"]) {
    allow_keys(b, w + ".bands", {"pump_nm", "signal_nm", "pump_target_nm"});
    if (b["pump_nm"]) std::tie(d.pump_min_nm, d.pump_max_nm) = band(b["pump_nm"], w + ".bands.pump_nm");
    if (b["signal_nm"]) std::tie(d.signal_min_nm, d.signal_max_nm) = band(b["signal_nm"], w + ".bands.signal_nm");
    if (b["pump_target_nm"]) d.pump_target_nm = positive(b["pump_target_nm"], w + ".bands.pump_target_nm");
  }
  optional(node, "triples", w, d.triples);
  if (d.triples < 1) fail(w + ".triples", "must be at least 1");
  return d;
}

ExplicitTriple explicit_triple(const YAML::Node& node) {
  const std::string w = "triple";
  allow_keys(node, w, {"sign", "pump", "signal", "idler", "bin_mismatch_MHz", "group_index"});
  if (!node["sign"] || !node["pump"] || !node["signal"]) fail(w, "needs sign, pump and signal");
  ExplicitTriple t;
  t.sign = sign_of(node["sign"], w + ".sign");
  t.pump = resonance(node["pump"], w + ".pump");
  t.signal = resonance(node["signal"], w + ".signal");
  if (node["idler"] && node["bin_mismatch_MHz"]) fail(w, "give idler or bin_mismatch_MHz, not both");
  if (node["idler"]) {
    t.idler = resonance(node["idler"], w + ".idler");
  } else {
    if (!node["bin_mismatch_MHz"]) fail(w, "needs idler or bin_mismatch_MHz");
    t.bin_mismatch_MHz = number(node["bin_mismatch_MHz"], w + ".bin_mismatch_MHz");
  }
  if (node["group_index"]) t.group_index = positive(node["group_index"], w + ".group_index");
  return t;
}

NonlinearSpec nonlinear(const YAML::Node& node) {
  const std::string w = "nonlinear";
  allow_keys(node, w, {"chi2_pm_per_V", "n_bar", "a_eff_um2", "mode_profiles"});
  NonlinearSpec n;
  if (!node["chi2_pm_per_V"]) fail(w, "chi2_pm_per_V is required");
  n.chi2_pm_per_V = number(node["chi2_pm_per_V"], w + ".chi2_pm_per_V");
  if (n.chi2_pm_per_V < 0.0) fail(w + ".chi2_pm_per_V", "must be non-negative");
  if (node["n_bar"]) n.n_bar = positive(node["n_bar"], w + ".n_bar");
  if (static_cast<bool>(node["a_eff_um2"]) == static_cast<bool>(node["mode_profiles"]))
    fail(w, "give exactly one of a_eff_um2 and mode_profiles");
  if (node["a_eff_um2"]) {
    n.a_eff_um2 = positive(node["a_eff_um2"], w + ".a_eff_um2");
  } else {
    const auto& p = node["mode_profiles"];
    allow_keys(p, w + ".mode_profiles", {"signal", "idler", "pump"});
    if (!p["signal"] || !p["idler"] || !p["pump"]) fail(w + ".mode_profiles", "needs signal, idler and pump");
    n.profile_signal = scalar<std::string>(p["signal"], w + ".mode_profiles.signal");
    n.profile_idler = scalar<std::string>(p["idler"], w + ".mode_profiles.idler");
    n.profile_pump = scalar<std::string>(p["pump"], w + ".mode_profiles.pump");
  }
  return n;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out;
  if (n == 1) return {lo};
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

PulseSpec pulse(const YAML::Node& node) {
  const std::string w = "pulse";
  allow_keys(node, w, {"shape", "peak_power_uW", "durations_ps", "detuning_MHz", "energy_sweep", "export_jsa"});
  PulseSpec p;
  if (node["shape"] && scalar<std::string>(node["shape"], w + ".shape") != "gaussian")
    fail(w + ".shape", "only gaussian pulses are supported");
  if (node["peak_power_uW"]) {
    p.peak_power_uW = number(node["peak_power_uW"], w + ".peak_power_uW");
    if (p.peak_power_uW < 0.0) fail(w + ".peak_power_uW", "must be non-negative");
  }
  if (!node["durations_ps"]) fail(w, "durations_ps is required");
  p.durations_ps = values(node["durations_ps"], w + ".durations_ps");
  for (double t : p.durations_ps)
    if (!(t > 0.0)) fail(w + ".durations_ps", "durations must be positive");
  if (node["detuning_MHz"]) p.detuning_MHz = number(node["detuning_MHz"], w + ".detuning_MHz");
  optional(node, "export_jsa", w, p.export_jsa);
  if (auto s = node["energy_sweep"]) {
    const std::string ws = w + ".energy_sweep";
    allow_keys(s, ws, {"start_fJ", "stop_fJ", "points", "duration_ps"});
    if (!s["start_fJ"] || !s["stop_fJ"] || !s["duration_ps"]) fail(ws, "needs start_fJ, stop_fJ and duration_ps");
    double lo = positive(s["start_fJ"], ws + ".start_fJ"), hi = positive(s["stop_fJ"], ws + ".stop_fJ");
    if (hi < lo) fail(ws, "stop_fJ below start_fJ");
    int points = 25;
    optional(s, "points", ws, points);
    if (points < 1) fail(ws + ".points", "must be at least 1");
    p.energy_sweep_fJ = log_spaced(lo, hi, points);
    p.sweep_duration_ps = positive(s["duration_ps"], ws + ".duration_ps");
  }
  return p;
}

GridConfig grid(const YAML::Node& node) {
  const std::string w = "grid";
  allow_keys(node, w, {"points", "half_width_linewidths", "max_points", "tolerance", "schmidt_modes"});
  GridConfig g;
  optional(node, "points", w, g.points);
  optional(node, "max_points", w, g.max_points);
  optional(node, "schmidt_modes", w, g.schmidt_modes);
  if (node["half_width_linewidths"]) g.half_width_linewidths = positive(node["half_width_linewidths"], w + ".half_width_linewidths");
  if (node["tolerance"]) g.tolerance = positive(node["tolerance"], w + ".tolerance");
  if (g.points < 2) fail(w + ".points", "must be at least 2");
  if (g.max_points < g.points) fail(w + ".max_points", "below points");
  if (g.schmidt_modes < 1) fail(w + ".schmidt_modes", "must be at least 1");
  return g;
}

}  // namespace

RunConfig parse_config(const YAML::Node& root, const std::filesystem::path& source_dir) {
  if (!root || root.IsNull()) throw ConfigError("empty configuration");
  allow_keys(root, "config", {"geometry", "triple", "dispersion", "nonlinear", "quality", "cw_pump", "pulse", "grid",
                              "spectrum", "coupling_sweep", "output"});
  RunConfig c;
  c.source_dir = source_dir;

  if (!root["geometry"]) fail("config", "geometry is required");
  {
    const auto& g = root["geometry"];
    allow_keys(g, "geometry", {"radius_um", "width_nm", "height_nm", "material"});
    if (!g["radius_um"]) fail("geometry", "radius_um is required");
    c.geometry.radius_um = values(g["radius_um"], "geometry.radius_um");
    for (double r : c.geometry.radius_um)
      if (!(r > 0.0)) fail("geometry.radius_um", "must be positive");
    if (g["width_nm"]) c.geometry.width_nm = values(g["width_nm"], "geometry.width_nm");
    if (g["height_nm"]) c.geometry.height_nm = values(g["height_nm"], "geometry.height_nm");
    for (double v : c.geometry.width_nm)
      if (v < 0.0) fail("geometry.width_nm", "must be non-negative");
    for (double v : c.geometry.height_nm)
      if (v < 0.0) fail("geometry.height_nm", "must be non-negative");
    optional(g, "material", "geometry", c.geometry.material);
  }

  if (static_cast<bool>(root["triple"]) == static_cast<bool>(root["dispersion"]))
    fail("config", "give exactly one of triple and dispersion");
  if (root["triple"]) c.triple = explicit_triple(root["triple"]);
  if (root["dispersion"]) c.dispersion = dispersion(root["dispersion"]);

  if (!root["nonlinear"]) fail("config", "nonlinear is required");
  c.nonlinear = nonlinear(root["nonlinear"]);

  if (!root["quality"]) fail("config", "quality is required");
  {
    const auto& q = root["quality"];
    allow_keys(q, "quality", {"signal", "idler", "pump"});
    if (!q["signal"] || !q["pump"]) fail("quality", "needs signal and pump");
    c.signal_q = quality(q["signal"], "quality.signal");
    c.idler_q = q["idler"] ? quality(q["idler"], "quality.idler") : c.signal_q;
    c.pump_q = quality(q["pump"], "quality.pump");
  }

  if (auto p = root["cw_pump"]) {
    allow_keys(p, "cw_pump", {"power_mW", "detuning_MHz"});
    if (p["power_mW"]) c.cw.power_mW = positive(p["power_mW"], "cw_pump.power_mW");
    if (auto d = p["detuning_MHz"]) {
      if (d.IsScalar() && d.Scalar() == "optimal")
        c.cw.optimal_detuning = true;
      else
        c.cw.detuning_MHz = number(d, "cw_pump.detuning_MHz");
    }
  }
  if (root["pulse"]) c.pulse = pulse(root["pulse"]);
  if (root["grid"]) c.grid = grid(root["grid"]);
  if (auto s = root["spectrum"]) {
    allow_keys(s, "spectrum", {"points_per_bin", "bin_half_width_linewidths"});
    optional(s, "points_per_bin", "spectrum", c.spectrum.points_per_bin);
    if (c.spectrum.points_per_bin < 2) fail("spectrum.points_per_bin", "must be at least 2");
    if (s["bin_half_width_linewidths"])
      c.spectrum.bin_half_width_linewidths = positive(s["bin_half_width_linewidths"], "spectrum.bin_half_width_linewidths");
  }
  if (auto s = root["coupling_sweep"]) {
    allow_keys(s, "coupling_sweep", {"eta"});
    if (!s["eta"]) fail("coupling_sweep", "eta is required");
    const auto& e = s["eta"];
    if (e.IsMap() && e["points"]) {
      allow_keys(e, "coupling_sweep.eta", {"start", "stop", "points"});
      if (!e["start"] || !e["stop"]) fail("coupling_sweep.eta", "needs start, stop and points");
      double lo = number(e["start"], "coupling_sweep.eta.start"), hi = number(e["stop"], "coupling_sweep.eta.stop");
      int n = scalar<int>(e["points"], "coupling_sweep.eta.points");
      if (n < 1 || hi < lo) fail("coupling_sweep.eta", "needs points >= 1 and stop >= start");
      for (int i = 0; i < n; ++i) c.coupling_eta.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
      c.coupling_range = RunConfig::EtaRange{lo, hi, n};
    } else {
      c.coupling_eta = values(e, "coupling_sweep.eta");
    }
  } else {
    for (int i = 0; i < 1001; ++i) c.coupling_eta.push_back(0.999 * i / 1000.0);
    c.coupling_range = RunConfig::EtaRange{0.0, 0.999, 1001};
  }
  for (double eta : c.coupling_eta)
    if (!(eta >= 0.0 && eta < 1.0)) fail("coupling_sweep.eta", "values must lie in [0, 1)");
  if (auto o = root["output"]) {
    allow_keys(o, "output", {"directory"});
    if (o["directory"]) c.output_dir = scalar<std::string>(o["directory"], "output.directory");
  }
  return c;
}

RunConfig parse_config_string(const std::string& text, const std::filesystem::path& source_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("YAML: ") + e.what());
  }
  return parse_config(root, source_dir);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_string(buf.str(), path.parent_path().empty() ? "." : path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

namespace {

// Fifteen significant digits keep hand-entered values exact and readable.
YAML::Node real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return YAML::Node(std::string(buf));
}

YAML::Node resonance_node(const ResonanceSpec& r) {
  YAML::Node n;
  n["m"] = r.m;
  n["wavelength_nm"] = real(r.wavelength_nm);
  return n;
}

YAML::Node quality_node(const QualitySpec& q) {
  YAML::Node n;
  n["intrinsic"] = real(q.intrinsic);
  n["extrinsic"] = real(q.extrinsic);
  return n;
}

YAML::Node list_node(const std::vector<double>& v) {
  YAML::Node n(YAML::NodeType::Sequence);
  for (double x : v) n.push_back(real(x));
  n.SetStyle(YAML::EmitterStyle::Flow);
  return n;
}

std::string absolute(const RunConfig& c, const std::string& pattern) {
  std::filesystem::path p(pattern);
  return p.is_absolute() ? pattern : (std::filesystem::absolute(c.source_dir) / p).lexically_normal().string();
}

YAML::Node family_node(const RunConfig& c, const FamilySpec& f) {
  YAML::Node n;
  switch (f.kind) {
    case FamilySpec::Kind::csv:
      n["csv"] = absolute(c, f.path);
      break;
    case FamilySpec::Kind::constant:
      n["n_eff"] = real(f.n_eff);
      break;
    case FamilySpec::Kind::through:
      for (const auto& r : f.through) n["through"].push_back(resonance_node(r));
      if (f.through.size() == 1) n["group_index"] = real(f.group_index);
      break;
  }
  n["extrapolate"] = f.extrapolate;
  return n;
}

}  // namespace

YAML::Node to_yaml(const RunConfig& c) {
  YAML::Node root;
  root["geometry"]["radius_um"] = list_node(c.geometry.radius_um);
  root["geometry"]["width_nm"] = list_node(c.geometry.width_nm);
  root["geometry"]["height_nm"] = list_node(c.geometry.height_nm);
  root["geometry"]["material"] = c.geometry.material;
  if (c.triple) {
    auto& t = *c.triple;
    YAML::Node n;
    n["sign"] = std::string(to_string(t.sign));
    n["pump"] = resonance_node(t.pump);
    n["signal"] = resonance_node(t.signal);
    if (t.idler)
      n["idler"] = resonance_node(*t.idler);
    else
      n["bin_mismatch_MHz"] = real(t.bin_mismatch_MHz);
    n["group_index"] = real(t.group_index > 0.0 ? t.group_index : c.nonlinear.n_bar);
    root["triple"] = n;
  }
  if (c.dispersion) {
    auto& d = *c.dispersion;
    YAML::Node n;
    n["signal_family"] = std::string(to_string(d.signal_family));
    n["pump_family"] = std::string(to_string(d.pump_family));
    if (d.has_te0) n["te0"] = family_node(c, d.te0);
    if (d.has_tm0) n["tm0"] = family_node(c, d.tm0);
    n["bands"]["pump_nm"] = list_node({d.pump_min_nm, d.pump_max_nm});
    n["bands"]["signal_nm"] = list_node({d.signal_min_nm, d.signal_max_nm});
    n["bands"]["pump_target_nm"] = real(d.pump_target_nm);
    n["triples"] = d.triples;
    root["dispersion"] = n;
  }
  root["nonlinear"]["chi2_pm_per_V"] = real(c.nonlinear.chi2_pm_per_V);
  root["nonlinear"]["n_bar"] = real(c.nonlinear.n_bar);
  if (c.nonlinear.a_eff_um2) {
    root["nonlinear"]["a_eff_um2"] = real(*c.nonlinear.a_eff_um2);
  } else {
    root["nonlinear"]["mode_profiles"]["signal"] = absolute(c, *c.nonlinear.profile_signal);
    root["nonlinear"]["mode_profiles"]["idler"] = absolute(c, *c.nonlinear.profile_idler);
    root["nonlinear"]["mode_profiles"]["pump"] = absolute(c, *c.nonlinear.profile_pump);
  }
  root["quality"]["signal"] = quality_node(c.signal_q);
  root["quality"]["idler"] = quality_node(c.idler_q);
  root["quality"]["pump"] = quality_node(c.pump_q);
  root["cw_pump"]["power_mW"] = real(c.cw.power_mW);
  if (c.cw.optimal_detuning)
    root["cw_pump"]["detuning_MHz"] = "optimal";
  else
    root["cw_pump"]["detuning_MHz"] = real(c.cw.detuning_MHz);
  if (c.pulse) {
    auto& p = *c.pulse;
    YAML::Node n;
    n["shape"] = "gaussian";
    n["peak_power_uW"] = real(p.peak_power_uW);
    n["durations_ps"] = list_node(p.durations_ps);
    n["detuning_MHz"] = real(p.detuning_MHz);
    n["export_jsa"] = p.export_jsa;
    if (!p.energy_sweep_fJ.empty()) {
      n["energy_sweep"]["start_fJ"] = real(p.energy_sweep_fJ.front());
      n["energy_sweep"]["stop_fJ"] = real(p.energy_sweep_fJ.back());
      n["energy_sweep"]["points"] = static_cast<int>(p.energy_sweep_fJ.size());
      n["energy_sweep"]["duration_ps"] = real(p.sweep_duration_ps);
    }
    root["pulse"] = n;
  }
  root["grid"]["points"] = c.grid.points;
  root["grid"]["half_width_linewidths"] = real(c.grid.half_width_linewidths);
  root["grid"]["max_points"] = c.grid.max_points;
  root["grid"]["tolerance"] = real(c.grid.tolerance);
  root["grid"]["schmidt_modes"] = c.grid.schmidt_modes;
  root["spectrum"]["points_per_bin"] = c.spectrum.points_per_bin;
  root["spectrum"]["bin_half_width_linewidths"] = real(c.spectrum.bin_half_width_linewidths);
  if (c.coupling_range) {
    root["coupling_sweep"]["eta"]["start"] = real(c.coupling_range->start);
    root["coupling_sweep"]["eta"]["stop"] = real(c.coupling_range->stop);
    root["coupling_sweep"]["eta"]["points"] = c.coupling_range->points;
  } else {
    root["coupling_sweep"]["eta"] = list_node(c.coupling_eta);
  }
  root["output"]["directory"] = c.output_dir.string();
  return root;
}

std::string resolved_text(const RunConfig& config) {
  YAML::Emitter out;
  out << to_yaml(config);
  return std::string(out.c_str()) + "\n";
}

std::filesystem::path expand_path(const RunConfig& config, const std::string& pattern, double radius_um,
                                  double width_nm, double height_nm) {
  std::string s = pattern;
  auto replace = [&s](const std::string& key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos)) {
      s.replace(pos, key.size(), buf);
      pos += std::char_traits<char>::length(buf);
    }
  };
  replace("{radius_um}", radius_um);
  replace("{width_nm}", width_nm);
  replace("{height_nm}", height_nm);
  std::filesystem::path p(s);
  return p.is_absolute() ? p : config.source_dir / p;
}

}  // namespace ringpairs::cli
