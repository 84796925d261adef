#include "cli/runners.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "cli/worker_pool.hpp"
#include "ringpairs/constants.hpp"
#include "ringpairs/dispersion.hpp"
#include "ringpairs/error.hpp"
#include "ringpairs/overlap.hpp"

namespace ringpairs::cli {
namespace {

constexpr double two_pi = 2.0 * constants::pi;
constexpr double mhz = two_pi * 1e6;  // MHz (cycles) to rad/s

std::string g_format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double index_for(int m, double lambda, double radius) { return m * lambda / (two_pi * radius); }

DispersionModel build_model(const RunConfig& c, const FamilySpec& f, ModeFamily family, const Cell& cell,
                            double lmin_nm, double lmax_nm) {
  const auto extrap = f.extrapolate ? Extrapolation::linear : Extrapolation::none;
  const double radius = cell.radius_um * 1e-6, lmin = lmin_nm * 1e-9, lmax = lmax_nm * 1e-9;
  switch (f.kind) {
    case FamilySpec::Kind::csv:
      return read_dispersion_csv(expand_path(c, f.path, cell.radius_um, cell.width_nm, cell.height_nm), family, extrap);
    case FamilySpec::Kind::constant:
      return DispersionModel::constant(family, f.n_eff, lmin, lmax);
    case FamilySpec::Kind::through:
      break;
  }
  const auto& a = f.through.front();
  const double la = a.wavelength_nm * 1e-9, wa = omega_from_wavelength(la), na = index_for(a.m, la, radius);
  if (f.through.size() == 1)
    return DispersionModel::polynomial(family, PolynomialVariable::omega, wa, {na, (f.group_index - na) / wa}, lmin,
                                       lmax, extrap);
  const auto& b = f.through.back();
  const double lb = b.wavelength_nm * 1e-9, wb = omega_from_wavelength(lb), nb = index_for(b.m, lb, radius);
  if (wa == wb) throw ConfigError("dispersion fit needs two distinct wavelengths");
  return DispersionModel::polynomial(family, PolynomialVariable::omega, wa, {na, (nb - na) / (wb - wa)}, lmin, lmax,
                                     extrap);
}

std::vector<Resonance> comb_in_band(const RingGeometry& ring, const DispersionModel& model, const FamilySpec& f,
                                    double lmin_nm, double lmax_nm) {
  double lo = omega_from_wavelength(lmax_nm * 1e-9), hi = omega_from_wavelength(lmin_nm * 1e-9);
  if (!f.extrapolate) {
    lo = std::max(lo, model.omega_min());
    hi = std::min(hi, model.omega_max());
  }
  if (!(lo < hi)) return {};
  return find_resonances(ring, model, lo, hi);
}

NonlinearCoupling coupling_for(const RunConfig& c, const Cell& cell, const ResonantTriple& t, Sign sign) {
  const auto refs = ReferenceSet::uniform(c.nonlinear.n_bar);
  const Chi2Spec chi{c.nonlinear.chi2_pm_per_V * 1e-12};
  const double radius = cell.radius_um * 1e-6;
  if (c.nonlinear.a_eff_um2) return kbar_matched(chi, radius, *c.nonlinear.a_eff_um2 * 1e-12, sign, refs);
  auto load = [&](const std::string& pattern, double omega) {
    return read_mode_profile_csv(expand_path(c, pattern, cell.radius_um, cell.width_nm, cell.height_nm), omega);
  };
  auto s = load(*c.nonlinear.profile_signal, t.signal.omega);
  auto i = load(*c.nonlinear.profile_idler, t.idler.omega);
  auto p = load(*c.nonlinear.profile_pump, t.pump.omega);
  return kbar_matched(chi, radius, effective_area(s, i, p, sign, refs), sign, refs);
}

ResonanceMode mode_from(Role role, int m, double omega, double v, const QualitySpec& q, const RingGeometry& ring) {
  return make_resonance(role, m, omega, v, q.intrinsic, q.extrinsic, ring);
}

QpmTriple as_qpm(const ResonantTriple& t, Sign sign) {
  QpmTriple q;
  q.pump = {t.pump.mode_number, t.pump.omega};
  q.signal = {t.signal.mode_number, t.signal.omega};
  q.idler = {t.idler.mode_number, t.idler.omega};
  q.sign = sign;
  q.bin_mismatch = t.pump.omega - t.signal.omega - t.idler.omega;
  return q;
}

// CW carrier: fixed detuning, or the optimum for the dominant triple at resonance.
CwPump cw_pump(const RunConfig& c, const std::vector<CoupledTriple>& triples) {
  CwPump pump{0.0, c.cw.power_mW * 1e-3};
  if (triples.empty()) return pump;
  const auto& head = triples.front().triple;
  pump.omega0 = head.pump.omega + c.cw.detuning_MHz * mhz;
  if (!c.cw.optimal_detuning) return pump;
  pump.omega0 = head.pump.omega;
  auto at_resonance = total_rate(triples, pump);
  const auto& d = triples[at_resonance.dominant.value_or(0)];
  pump.omega0 = optimize_pump_detuning(as_qpm(d.triple, d.coupling.sign), decay_rates(d.triple.pump).total,
                                       decay_rates(d.triple.signal).total, decay_rates(d.triple.idler).total);
  return pump;
}

}  // namespace

std::vector<Cell> geometry_cells(const RunConfig& c) {
  std::vector<Cell> cells;
  for (double r : c.geometry.radius_um)
    for (double w : c.geometry.width_nm)
      for (double h : c.geometry.height_nm) cells.push_back({cells.size(), r, w, h});
  return cells;
}

CellSetup setup_cell(const RunConfig& c, const Cell& cell) {
  CellSetup out;
  out.cell = cell;
  out.ring = RingGeometry(cell.radius_um * 1e-6, cell.width_nm * 1e-9, cell.height_nm * 1e-9, c.geometry.material);
  const auto& ring = out.ring;

  if (c.triple) {
    const auto& e = *c.triple;
    const double ng = e.group_index > 0.0 ? e.group_index : c.nonlinear.n_bar;
    const double v = constants::c / ng;
    const double wp = omega_from_wavelength(e.pump.wavelength_nm * 1e-9);
    const double ws = omega_from_wavelength(e.signal.wavelength_nm * 1e-9);
    const double wi = e.idler ? omega_from_wavelength(e.idler->wavelength_nm * 1e-9) : wp - ws - e.bin_mismatch_MHz * mhz;
    const int mi = e.idler ? e.idler->m : e.pump.m - e.signal.m + 2 * sign_value(e.sign);
    ResonantTriple t{ring, mode_from(Role::pump, e.pump.m, wp, v, c.pump_q, ring),
                     mode_from(Role::signal, e.signal.m, ws, v, c.signal_q, ring),
                     mode_from(Role::idler, mi, wi, v, c.idler_q, ring)};
    for (const auto* m : {&t.pump, &t.signal, &t.idler})
      out.resonances.push_back({std::string(to_string(m->role)), "", m->mode_number, m->omega,
                                index_for(m->mode_number, wavelength_from_omega(m->omega), ring.radius()), ng});
    out.triples.push_back({t, coupling_for(c, cell, t, e.sign)});
  } else {
    const auto& d = *c.dispersion;
    const auto& pf = d.family(d.pump_family);
    const auto& sf = d.family(d.signal_family);
    auto pump_model = build_model(c, pf, d.pump_family, cell, d.pump_min_nm, d.pump_max_nm);
    auto signal_model = build_model(c, sf, d.signal_family, cell, d.signal_min_nm, d.signal_max_nm);
    auto pumps = comb_in_band(ring, pump_model, pf, d.pump_min_nm, d.pump_max_nm);
    auto comb = comb_in_band(ring, signal_model, sf, d.signal_min_nm, d.signal_max_nm);
    auto list = [&](const std::string& role, const DispersionModel& model, const std::vector<Resonance>& rs) {
      for (const auto& r : rs) {
        auto s = model.evaluate(r.omega);
        out.resonances.push_back({role, std::string(to_string(model.family())), r.mode_number, r.omega, s.n_eff,
                                  s.group_index()});
      }
    };
    list("pump", pump_model, pumps);
    list("signal/idler", signal_model, comb);
    if (pumps.empty() || comb.empty()) return out;
    auto pump = nearest_resonance(pumps, omega_from_wavelength(d.pump_target_nm * 1e-9));
    auto matched = enumerate_qpm_triples(pump, comb, comb, pump.omega);
    if (matched.size() > static_cast<std::size_t>(d.triples)) matched.resize(static_cast<std::size_t>(d.triples));
    auto velocity = [](const DispersionModel& m, double w) { return constants::c / m.group_index(w); };
    for (const auto& q : matched) {
      ResonantTriple t{ring,
                       mode_from(Role::pump, q.pump.mode_number, q.pump.omega, velocity(pump_model, q.pump.omega),
                                 c.pump_q, ring),
                       mode_from(Role::signal, q.signal.mode_number, q.signal.omega,
                                 velocity(signal_model, q.signal.omega), c.signal_q, ring),
                       mode_from(Role::idler, q.idler.mode_number, q.idler.omega, velocity(signal_model, q.idler.omega),
                                 c.idler_q, ring)};
      if (q.degenerate()) t.idler = t.signal;
      out.triples.push_back({t, coupling_for(c, cell, t, q.sign)});
    }
  }
  out.pump = cw_pump(c, out.triples);
  return out;
}

Table resonance_table(const std::vector<CellSetup>& cells) {
  Table t{{"cell", "radius_um", "width_nm", "height_nm", "role", "family", "m", "lambda_nm", "omega_rad_per_s",
           "n_eff", "group_index"},
          {}};
  for (const auto& s : cells)
    for (const auto& r : s.resonances)
      t.add({static_cast<long long>(s.cell.index), s.cell.radius_um, s.cell.width_nm, s.cell.height_nm, r.role,
             r.family.empty() ? std::string("-") : r.family, static_cast<long long>(r.m),
             wavelength_from_omega(r.omega) * 1e9, r.omega, r.n_eff, r.group_index});
  return t;
}

Table triple_table(const std::vector<CellSetup>& cells) {
  Table t{{"cell", "mP", "mS", "mI", "sign", "lambda_P_nm", "lambda_S_nm", "lambda_I_nm", "dw_over_2pi_Hz",
           "A_eff_um2", "degenerate"},
          {}};
  for (const auto& s : cells)
    for (const auto& ct : s.triples) {
      const auto& tr = ct.triple;
      t.add({static_cast<long long>(s.cell.index), static_cast<long long>(tr.pump.mode_number),
             static_cast<long long>(tr.signal.mode_number), static_cast<long long>(tr.idler.mode_number),
             std::string(to_string(ct.coupling.sign)), wavelength_from_omega(tr.pump.omega) * 1e9,
             wavelength_from_omega(tr.signal.omega) * 1e9, wavelength_from_omega(tr.idler.omega) * 1e9,
             tr.bin_mismatch(tr.pump.omega) / two_pi, ct.coupling.a_eff * 1e12,
             static_cast<long long>(tr.degenerate())});
    }
  return t;
}

CwRun run_cw(const RunConfig& c, int threads) {
  auto cells = geometry_cells(c);
  auto results = parallel_map(cells.size(), threads, [&](std::size_t i) {
    auto setup = setup_cell(c, cells[i]);
    return std::make_pair(setup.pump, total_rate(setup.triples, setup.pump));
  });
  CwRun run;
  run.rates.header = {"width_nm", "height_nm",   "radius_um", "mP",        "mS",         "mI",
                      "sign",     "dw_over_2pi_Hz", "A_eff_um2", "R_acac_Hz", "efficiency", "log10_efficiency"};
  run.details = nlohmann::json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& cell = cells[i];
    const auto& [pump, r] = results[i];
    nlohmann::json cell_doc{{"cell", cell.index},
                            {"radius_um", cell.radius_um},
                            {"width_nm", cell.width_nm},
                            {"height_nm", cell.height_nm},
                            {"pump_omega_rad_per_s", pump.omega0},
                            {"pump_power_W", pump.power},
                            {"R_acac_Hz", r.total_actual},
                            {"efficiency", r.efficiency},
                            {"triples", nlohmann::json::array()}};
    for (const auto& tr : r.contributions) {
      nlohmann::json rates;
      for (Channel a : channels)
        for (Channel b : channels)
          rates[std::string(to_string(a)) + std::string(to_string(b))] = tr.rates(a, b);
      cell_doc["triples"].push_back({{"mP", tr.m_pump},
                                     {"mS", tr.m_signal},
                                     {"mI", tr.m_idler},
                                     {"sign", std::string(to_string(tr.sign))},
                                     {"degenerate", tr.degenerate},
                                     {"dw_over_2pi_Hz", tr.bin_mismatch / two_pi},
                                     {"A_eff_um2", tr.a_eff * 1e12},
                                     {"vacuum_power_W", tr.vacuum_power},
                                     {"rates_Hz", rates},
                                     {"heralding", tr.heralding()}});
    }
    run.details.push_back(cell_doc);
    std::vector<Field> row{cell.width_nm, cell.height_nm, cell.radius_um};
    if (r.dominant) {
      const auto& d = r.contributions[*r.dominant];
      row.insert(row.end(), {static_cast<long long>(d.m_pump), static_cast<long long>(d.m_signal),
                             static_cast<long long>(d.m_idler), std::string(to_string(d.sign)),
                             d.bin_mismatch / two_pi, d.a_eff * 1e12});
    } else {
      row.insert(row.end(), {0LL, 0LL, 0LL, std::string("none"), 0.0, 0.0});
    }
    row.insert(row.end(), {r.total_actual, r.efficiency, std::log10(r.efficiency)});
    run.rates.add(std::move(row));
  }
  return run;
}

std::vector<std::pair<double, Table>> efficiency_maps(const RunConfig& c, const Table& rates) {
  std::vector<std::pair<double, Table>> maps;
  const auto& widths = c.geometry.width_nm;
  const auto& heights = c.geometry.height_nm;
  std::size_t row = 0;
  for (double r : c.geometry.radius_um) {
    Table t;
    t.header.push_back("height_nm");
    for (double w : widths) t.header.push_back("w" + g_format(w) + "nm");
    std::vector<std::vector<Field>> grid(heights.size(), std::vector<Field>(widths.size() + 1));
    for (std::size_t ih = 0; ih < heights.size(); ++ih) grid[ih][0] = heights[ih];
    for (std::size_t iw = 0; iw < widths.size(); ++iw)
      for (std::size_t ih = 0; ih < heights.size(); ++ih) grid[ih][iw + 1] = rates.number(row++, "log10_efficiency");
    for (auto& g : grid) t.add(std::move(g));
    maps.emplace_back(r, std::move(t));
  }
  return maps;
}

Table run_coupling_sweep(const RunConfig& c) {
  Table t{{"eta", "ratio_to_critical", "heralding"}, {}};
  for (double eta : c.coupling_eta) t.add({eta, coupling_ratio(eta), heralding_efficiency(eta)});
  return t;
}

SpectrumRun run_spectrum(const RunConfig& c, int threads) {
  auto cells = geometry_cells(c);
  struct CellSpectrum {
    std::vector<std::vector<Field>> rows;
    nlohmann::json summary;
  };
  auto parts = parallel_map(cells.size(), threads, [&](std::size_t ci) {
    auto setup = setup_cell(c, cells[ci]);
    CellSpectrum out;
    double closed = 0.0;
    for (const auto& ct : setup.triples) closed += triple_rates(ct.triple, ct.coupling, setup.pump).actual();
    // One grid per distinct signal resonance.
    std::map<int, ResonanceMode> bins;
    for (const auto& ct : setup.triples) bins.emplace(ct.triple.signal.mode_number, ct.triple.signal);
    const double half = c.spectrum.bin_half_width_linewidths;
    const auto n = static_cast<std::size_t>(c.spectrum.points_per_bin);
    double integral = 0.0;
    for (auto it = bins.rbegin(); it != bins.rend(); ++it) {
      const auto& mode = it->second;
      const double g = decay_rates(mode).total;
      std::vector<double> grid(n);
      for (std::size_t i = 0; i < n; ++i) grid[i] = mode.omega - half * g + 2.0 * half * g * double(i) / double(n - 1);
      auto f = signal_spectrum(setup.triples, setup.pump, grid, half);
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) integral += 0.5 * (f[i] + f[i - 1]) * (grid[i] - grid[i - 1]);
        out.rows.push_back({static_cast<long long>(ci), static_cast<long long>(mode.mode_number),
                            (grid[i] - mode.omega) / two_pi, wavelength_from_omega(grid[i]) * 1e9, f[i] * two_pi});
      }
    }
    out.summary = {{"cell", ci},
                   {"bins", bins.size()},
                   {"integral_Hz", integral},
                   {"closed_form_R_acac_Hz", closed},
                   {"relative_difference", closed > 0.0 ? (integral - closed) / closed : 0.0}};
    return out;
  });
  SpectrumRun run;
  run.spectrum.header = {"cell", "signal_m", "offset_over_2pi_Hz", "wavelength_nm", "density_per_s_per_Hz"};
  run.summary = nlohmann::json::array();
  for (auto& p : parts) {
    for (auto& r : p.rows) run.spectrum.add(std::move(r));
    run.summary.push_back(std::move(p.summary));
  }
  return run;
}

namespace {

struct PulsedTarget {
  CellSetup setup;
  std::size_t dominant = 0;
};

PulsedTarget pulsed_target(const RunConfig& c) {
  if (!c.pulse) throw ConfigError("the pulse section is required for pulsed commands");
  auto cells = geometry_cells(c);
  if (cells.size() != 1) throw ConfigError("pulsed commands take a single geometry");
  PulsedTarget t{setup_cell(c, cells.front()), 0};
  if (t.setup.triples.empty()) throw ConfigError("no quasi-phase-matched triple in the configured bands");
  auto r = total_rate(t.setup.triples, t.setup.pump);
  t.dominant = r.dominant.value_or(0);
  return t;
}

Table jsa_table(const JsaGrid& g, const ResonantTriple& t) {
  Table out{{"d1_over_2pi_Hz", "d2_over_2pi_Hz", "re_phi_acac", "im_phi_acac", "abs_phi_acac"}, {}};
  const auto& block = g.phi(Channel::actual, Channel::actual);
  const auto& second = g.degenerate ? t.signal : t.idler;
  for (std::size_t i = 0; i < g.k1.size(); ++i)
    for (std::size_t j = 0; j < g.k2.size(); ++j) {
      auto v = block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      out.add({(t.signal.omega_at(Channel::actual, g.k1[i]) - t.signal.omega) / two_pi,
               (second.omega_at(Channel::actual, g.k2[j]) - second.omega) / two_pi, v.real(), v.imag(), std::abs(v)});
    }
  return out;
}

std::string tau_label(double tau_ps) {
  std::string s = g_format(tau_ps);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

}  // namespace

PulsedRun run_pulsed(const RunConfig& c, int threads, bool decompose, bool export_jsa) {
  const auto target = pulsed_target(c);
  const auto& ct = target.setup.triples[target.dominant];
  const auto& p = *c.pulse;
  const bool degenerate = ct.triple.degenerate();
  RefinementPolicy policy{GridSpec{c.grid.points, c.grid.half_width_linewidths}, c.grid.max_points, c.grid.tolerance};
  auto make_pulse = [&](double tau_ps) {
    return PumpPulse::gaussian(tau_ps * 1e-12, p.peak_power_uW * 1e-6, p.detuning_MHz * mhz, ct.triple.pump);
  };
  auto solve = [&](const PumpPulse& pulse) {
    return degenerate ? solve_pulsed_degenerate(ct.triple, ct.coupling, pulse, policy)
                      : solve_pulsed(ct.triple, ct.coupling, pulse, policy);
  };
  auto build = [&](const PumpPulse& pulse) {
    return degenerate ? build_degenerate_jsa_grid(ct.triple, ct.coupling, pulse, policy.grid)
                      : build_jsa_grid(ct.triple, ct.coupling, pulse, policy.grid);
  };

  struct Item {
    nlohmann::json record;
    std::vector<Field> row;
    std::optional<Table> jsa;
    std::optional<PulsedSolution> solution;
  };
  auto items = parallel_map(p.durations_ps.size(), threads, [&](std::size_t i) {
    const double tau = p.durations_ps[i];
    auto pulse = make_pulse(tau);
    Item it;
    auto& r = it.record;
    r = {{"duration_ps", tau},
         {"energy_fJ", pulse.energy() * 1e15},
         {"pump_photons", pulse.photon_number()},
         {"degenerate", degenerate}};
    JsaGrid grid;
    if (decompose) {
      auto sol = solve(pulse);
      const auto& s = sol.squeeze;
      nlohmann::json top = nlohmann::json::array();
      for (Eigen::Index n = 0; n < std::min<Eigen::Index>(c.grid.schmidt_modes, s.r.size()); ++n) top.push_back(s.r(n));
      r["grid_points"] = sol.points;
      r["converged"] = sol.converged;
      r["photon_change"] = sol.photon_change;
      r["schmidt_change"] = sol.schmidt_change;
      r["photon_number"] = s.photon_number;
      r["pairs"] = s.pairs();
      r["schmidt_number"] = s.schmidt_number;
      r["efficiency"] = s.efficiency();
      r["r"] = top;
      it.row = {tau,
                pulse.energy() * 1e15,
                static_cast<long long>(sol.points),
                static_cast<long long>(sol.converged),
                sol.grid.beta_squared(),
                s.pairs(),
                s.schmidt_number,
                sol.photon_change,
                sol.schmidt_change};
      grid = sol.grid;
      it.solution = std::move(sol);
    } else {
      grid = build(pulse);
      r["grid_points"] = policy.grid.points;
      it.row = {tau, pulse.energy() * 1e15, static_cast<long long>(policy.grid.points), grid.beta_squared()};
    }
    nlohmann::json by_channel;
    auto bc = grid.beta_squared_by_channel();
    for (Channel a : channels)
      for (Channel b : channels) by_channel[std::string(to_string(a)) + std::string(to_string(b))] = bc(a, b);
    r["beta_squared"] = grid.beta_squared();
    r["beta_squared_by_channel"] = by_channel;
    r["efficiency_pair_regime"] = pulse.photon_number() > 0.0 ? grid.beta_squared() / pulse.photon_number() : 0.0;
    if (export_jsa) {
      it.jsa = jsa_table(grid, ct.triple);
      r["jsa_path"] = "jsa_tau" + tau_label(tau) + "ps.csv";
    }
    return it;
  });

  PulsedRun run;
  const auto& tr = ct.triple;
  run.records = {{"triple",
                  {{"mP", tr.pump.mode_number},
                   {"mS", tr.signal.mode_number},
                   {"mI", tr.idler.mode_number},
                   {"sign", std::string(to_string(ct.coupling.sign))},
                   {"lambda_P_nm", wavelength_from_omega(tr.pump.omega) * 1e9},
                   {"lambda_S_nm", wavelength_from_omega(tr.signal.omega) * 1e9},
                   {"lambda_I_nm", wavelength_from_omega(tr.idler.omega) * 1e9}}},
                 {"pulses", nlohmann::json::array()}};
  run.summary.header = decompose ? std::vector<std::string>{"duration_ps", "energy_fJ", "grid_points", "converged",
                                                            "beta_squared", "pairs", "schmidt_number", "photon_change",
                                                            "schmidt_change"}
                                 : std::vector<std::string>{"duration_ps", "energy_fJ", "grid_points", "beta_squared"};
  for (auto& it : items) {
    run.records["pulses"].push_back(it.record);
    run.summary.add(it.row);
    if (it.jsa) run.jsa.emplace_back(it.record["jsa_path"].get<std::string>(), std::move(*it.jsa));
  }

  if (decompose && !p.energy_sweep_fJ.empty()) {
    auto pulse = make_pulse(p.sweep_duration_ps);
    const PulsedSolution* sol = nullptr;
    std::optional<PulsedSolution> own;
    for (std::size_t i = 0; i < p.durations_ps.size(); ++i)
      if (p.durations_ps[i] == p.sweep_duration_ps) sol = &*items[i].solution;
    if (!sol) sol = &own.emplace(solve(pulse));
    std::vector<double> energies;
    for (double e : p.energy_sweep_fJ) energies.push_back(e * 1e-15);
    run.energy_sweep.header = {"energy_fJ",      "beta_squared",           "pairs",          "ratio",
                               "schmidt_number", "efficiency_pair_regime", "efficiency_los", "beyond_los_validity"};
    for (const auto& e : energy_sweep(*sol, pulse, energies))
      run.energy_sweep.add({e.energy * 1e15, e.beta_squared, e.pairs, e.ratio(), e.schmidt_number,
                            e.efficiency_pair_regime, e.efficiency_los, static_cast<long long>(e.beyond_los_validity)});
    run.records["energy_sweep"] = {{"duration_ps", p.sweep_duration_ps},
                                   {"grid_points", sol->points},
                                   {"converged", sol->converged}};
  }
  return run;
}

std::vector<std::filesystem::path> execute(const std::string& command, const RunConfig& c, int threads) {
  namespace fs = std::filesystem;
  if (std::find(commands().begin(), commands().end(), command) == commands().end())
    throw ConfigError("unknown command " + command);
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec) throw IoError("cannot create " + c.output_dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  auto emit_csv = [&](const std::string& name, const Table& t) {
    write_csv(c.output_dir / name, t);
    written.push_back(c.output_dir / name);
  };
  auto emit_json = [&](const std::string& name, const nlohmann::json& doc) {
    write_json(c.output_dir / name, doc);
    written.push_back(c.output_dir / name);
  };
  write_text(c.output_dir / "resolved_config.yaml", resolved_text(c));
  written.push_back(c.output_dir / "resolved_config.yaml");

  if (command == "resonances") {
    auto cells = geometry_cells(c);
    auto setups = parallel_map(cells.size(), threads, [&](std::size_t i) { return setup_cell(c, cells[i]); });
    emit_csv("resonances.csv", resonance_table(setups));
    emit_csv("triples.csv", triple_table(setups));
  } else if (command == "rate-cw" || command == "sweep-grid") {
    auto run = run_cw(c, threads);
    emit_csv("rates.csv", run.rates);
    emit_json("rates.json", run.details);
    if (command == "sweep-grid")
      for (const auto& [r, t] : efficiency_maps(c, run.rates)) emit_csv("log10_efficiency_R" + g_format(r) + "um.csv", t);
  } else if (command == "spectrum") {
    auto run = run_spectrum(c, threads);
    emit_csv("spectrum.csv", run.spectrum);
    emit_json("spectrum.json", run.summary);
  } else if (command == "coupling-sweep") {
    emit_csv("coupling.csv", run_coupling_sweep(c));
  } else {
    const bool squeeze = command == "squeeze";
    auto run = run_pulsed(c, threads, squeeze, !squeeze || c.pulse->export_jsa);
    for (const auto& [name, t] : run.jsa) emit_csv(name, t);
    if (squeeze) {
      emit_csv("squeeze.csv", run.summary);
      if (!run.energy_sweep.rows.empty()) emit_csv("energy_sweep.csv", run.energy_sweep);
      emit_json("squeeze.json", run.records);
    } else {
      emit_csv("jsa_summary.csv", run.summary);
      emit_json("jsa.json", run.records);
    }
  }
  return written;
}

}  // namespace ringpairs::cli
