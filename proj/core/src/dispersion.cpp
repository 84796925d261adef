#include "ringpairs/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csv_reader.hpp"
#include "ringpairs/constants.hpp"
#include "ringpairs/error.hpp"
#include "ringpairs/numerics/roots.hpp"

namespace ringpairs {

std::string_view to_string(ModeFamily f) { return f == ModeFamily::te0 ? "TE0" : "TM0"; }

ModeFamily mode_family_from_string(std::string_view s) {
  if (s == "TE0" || s == "te0") return ModeFamily::te0;
  if (s == "TM0" || s == "tm0") return ModeFamily::tm0;
  throw DomainError("unknown mode family '" + std::string(s) + "'");
}

DispersionModel::DispersionModel(ModeFamily family, std::variant<Sampled, Polynomial> rep, double lambda_min,
                                 double lambda_max, Extrapolation extrapolation)
    : family_(family),
      rep_(std::move(rep)),
      lambda_min_(lambda_min),
      lambda_max_(lambda_max),
      extrapolation_(extrapolation) {
  if (!(lambda_min > 0.0) || !(lambda_max > lambda_min)) throw DomainError("invalid dispersion validity band");
}

DispersionModel DispersionModel::sampled(ModeFamily family, std::vector<double> wavelength,
                                         std::vector<double> n_eff, Extrapolation extrapolation) {
  if (wavelength.size() != n_eff.size()) throw DomainError("dispersion samples differ in length");
  for (std::size_t i = 0; i < wavelength.size(); ++i) {
    if (!(wavelength[i] > 0.0)) throw DomainError("wavelengths must be positive");
    if (i > 0 && !(wavelength[i] > wavelength[i - 1]))
      throw DomainError("dispersion wavelengths must be strictly increasing");
    if (!(n_eff[i] > 1.0)) throw DomainError("effective index must exceed 1 for a guided mode");
  }
  if (wavelength.size() < 4) throw DomainError("sampled dispersion needs at least four points");
  std::vector<double> omega(wavelength.size()), n(wavelength.size());
  for (std::size_t i = 0; i < wavelength.size(); ++i) {
    std::size_t j = wavelength.size() - 1 - i;
    omega[i] = omega_from_wavelength(wavelength[j]);
    n[i] = n_eff[j];
  }
  double lmin = wavelength.front(), lmax = wavelength.back();
  return DispersionModel(family, Sampled{numerics::MonotoneCubic(std::move(omega), std::move(n))}, lmin, lmax,
                         extrapolation);
}

DispersionModel DispersionModel::polynomial(ModeFamily family, PolynomialVariable variable, double reference,
                                            std::vector<double> coefficients, double lambda_min,
                                            double lambda_max, Extrapolation extrapolation) {
  if (coefficients.empty()) throw DomainError("polynomial dispersion needs coefficients");
  return DispersionModel(family, Polynomial{variable, reference, std::move(coefficients)}, lambda_min,
                         lambda_max, extrapolation);
}

DispersionModel DispersionModel::constant(ModeFamily family, double n_eff, double lambda_min, double lambda_max) {
  return polynomial(family, PolynomialVariable::omega, 0.0, {n_eff}, lambda_min, lambda_max);
}

double DispersionModel::omega_min() const { return omega_from_wavelength(lambda_max_); }
double DispersionModel::omega_max() const { return omega_from_wavelength(lambda_min_); }

bool DispersionModel::in_band(double omega) const {
  // Small slack so band edges computed from the wavelengths themselves count as inside.
  double slack = 1e-12 * omega;
  return omega >= omega_min() - slack && omega <= omega_max() + slack;
}

IndexSample DispersionModel::evaluate_inside(double omega) const {
  IndexSample out;
  out.omega = omega;
  if (const auto* s = std::get_if<Sampled>(&rep_)) {
    double w = std::clamp(omega, s->spline.x_min(), s->spline.x_max());
    out.n_eff = s->spline(w);
    out.dn_domega = s->spline.derivative(w);
    return out;
  }
  const auto& p = std::get<Polynomial>(rep_);
  double x = p.variable == PolynomialVariable::omega ? omega : wavelength_from_omega(omega);
  double dx = x - p.reference;
  double value = 0.0, slope = 0.0;
  for (std::size_t j = p.coefficients.size(); j-- > 0;) {
    slope = slope * dx + value;
    value = value * dx + p.coefficients[j];
  }
  out.n_eff = value;
  // d/domega of a wavelength polynomial picks up dlambda/domega = -lambda/omega.
  out.dn_domega = p.variable == PolynomialVariable::omega ? slope : slope * (-x / omega);
  return out;
}

IndexSample DispersionModel::evaluate(double omega) const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("frequency must be positive");
  if (in_band(omega)) return evaluate_inside(omega);
  if (extrapolation_ == Extrapolation::none) {
    std::ostringstream msg;
    msg.precision(9);
    msg << to_string(family_) << " dispersion evaluated at " << wavelength_from_omega(omega) * 1e9
        << " nm, outside [" << lambda_min_ * 1e9 << ", " << lambda_max_ * 1e9 << "] nm";
    throw RangeError(msg.str());
  }
  double edge = omega < omega_min() ? omega_min() : omega_max();
  IndexSample e = evaluate_inside(edge);
  IndexSample out;
  out.omega = omega;
  out.dn_domega = e.dn_domega;
  out.n_eff = e.n_eff + e.dn_domega * (omega - edge);
  out.extrapolated = true;
  return out;
}

DispersionModel read_dispersion_csv(const std::filesystem::path& path, ModeFamily family,
                                    Extrapolation extrapolation) {
  auto table = detail::read_numeric_csv(path, {"lambda_nm", "n_eff"});
  std::vector<double> lambda, n;
  for (const auto& row : table.rows) {
    lambda.push_back(row[0] * 1e-9);
    n.push_back(row[1]);
  }
  try {
    return DispersionModel::sampled(family, std::move(lambda), std::move(n), extrapolation);
  } catch (const DomainError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

double Resonance::wavelength() const { return wavelength_from_omega(omega); }

std::vector<Resonance> find_resonances(const RingGeometry& ring, const DispersionModel& model, double omega_lo,
                                       double omega_hi) {
  if (!(omega_lo < omega_hi)) throw DomainError("resonance band must satisfy lo < hi");
  const double scale = ring.radius() / constants::c;
  auto phase = [&](double w) { return w * model.n_eff(w) * scale; };

  constexpr int probes = 256;
  for (int i = 0; i <= probes; ++i) {
    double w = omega_lo + (omega_hi - omega_lo) * i / probes;
    if (!(model.group_index(w) > 0.0))
      throw DomainError("ambiguous resonance comb: omega n_eff(omega) is not increasing on the band");
  }

  double lo_phase = phase(omega_lo);
  double hi_phase = phase(omega_hi);
  int m_lo = static_cast<int>(std::ceil(lo_phase));
  int m_hi = static_cast<int>(std::floor(hi_phase));
  std::vector<Resonance> comb;
  numerics::Tolerance tol{1e-300, 1e-15, 200};
  for (int m = std::max(m_lo, 1); m <= m_hi; ++m) {
    auto r = numerics::find_root([&](double w) { return phase(w) - m; }, omega_lo, omega_hi, tol);
    comb.push_back({m, r.root});
  }
  return comb;
}

std::optional<Sign> qpm_check(int m_pump, int m_signal, int m_idler) {
  if (m_pump <= 0 || m_signal <= 0 || m_idler <= 0) throw DomainError("mode numbers must be positive");
  int d = m_pump - m_signal - m_idler;
  if (d == -2) return Sign::plus;
  if (d == 2) return Sign::minus;
  return std::nullopt;
}

std::vector<QpmTriple> enumerate_qpm_triples(const Resonance& pump, std::span<const Resonance> signal_comb,
                                             std::span<const Resonance> idler_comb, double omega0) {
  std::vector<QpmTriple> out;
  for (const auto& s : signal_comb) {
    for (const auto& i : idler_comb) {
      if (s.omega < i.omega) continue;
      auto sign = qpm_check(pump.mode_number, s.mode_number, i.mode_number);
      if (!sign) continue;
      out.push_back({pump, s, i, *sign, (omega0 - s.omega) - i.omega});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const QpmTriple& a, const QpmTriple& b) {
    return std::abs(a.bin_mismatch) < std::abs(b.bin_mismatch);
  });
  return out;
}

Resonance nearest_resonance(std::span<const Resonance> comb, double omega) {
  if (comb.empty()) throw DomainError("no resonance in the pump band");
  return *std::min_element(comb.begin(), comb.end(), [&](const Resonance& a, const Resonance& b) {
    return std::abs(a.omega - omega) < std::abs(b.omega - omega);
  });
}

double detuning_objective(double t, double d, double gamma_pump, double gamma_pair) {
  return (t * t + gamma_pump * gamma_pump) * ((t - d) * (t - d) + gamma_pair * gamma_pair);
}

double optimize_pump_detuning(const QpmTriple& triple, double gamma_pump, double gamma_signal,
                              double gamma_idler) {
  if (!(gamma_pump > 0.0) || !(gamma_signal > 0.0) || !(gamma_idler > 0.0))
    throw DomainError("decay rates must be positive");
  const double wp = triple.pump.omega;
  const double d = (triple.signal.omega - wp) + triple.idler.omega;
  if (d == 0.0) return wp;
  const double a2 = gamma_pump * gamma_pump;
  const double gb = gamma_signal + gamma_idler;
  const double b2 = gb * gb;
  auto objective = [&](double t) { return detuning_objective(t, d, gamma_pump, gb); };
  // dG/dt / 2 = 2t^3 - 3d t^2 + (d^2 + a^2 + b^2) t - a^2 d.
  auto slope = [&](double t) { return ((2.0 * t - 3.0 * d) * t + (d * d + a2 + b2)) * t - a2 * d; };

  const double lo = std::min(0.0, d), hi = std::max(0.0, d);
  std::vector<double> candidates{lo, hi};
  constexpr int scan = 64;
  double prev_t = lo, prev_s = slope(lo);
  numerics::Tolerance tol{1e-300, 1e-15, 300};
  bool bracketed = false;
  for (int i = 1; i <= scan; ++i) {
    double t = lo + (hi - lo) * i / scan;
    double s = slope(t);
    if (prev_s == 0.0) {
      candidates.push_back(prev_t);
    } else if ((prev_s < 0.0) != (s < 0.0) && s != 0.0) {
      candidates.push_back(numerics::find_root(slope, prev_t, t, tol).root);
      bracketed = true;
    }
    prev_t = t;
    prev_s = s;
  }
  if (!bracketed) candidates.push_back(numerics::golden_section_minimum(objective, lo, hi, tol));
  double best = candidates.front();
  for (double t : candidates)
    if (objective(t) < objective(best)) best = t;
  return wp + best;
}

}  // namespace ringpairs
