#include "ringpairs/cw.hpp"

#include <algorithm>
#include <cmath>

#include "ringpairs/constants.hpp"
#include "ringpairs/dispersion.hpp"
#include "ringpairs/error.hpp"
#include "units.hpp"

namespace ringpairs {

namespace units_check {
using namespace detail;
constexpr Dim chi2 = metre / volt;
constexpr Dim kbar_squared = pow(chi2, 2) * pow(metre, 2) * pow(velocity, 3) /
                             ((farad / metre) * pow(velocity, 3) * pow(metre, 2));
static_assert(kbar_squared == pow(metre, 3) / joule);
// P P_vac chi^2 omega Gamma v^3 / (hbar eps0 c^3 Gamma^2 R A (dw^2 + G^2)).
constexpr Dim closed_form = watt * watt * pow(chi2, 2) * per_second * per_second * pow(velocity, 3) /
                            (joule * second * (farad / metre) * pow(velocity, 3) * pow(per_second, 2) *
                             metre * pow(metre, 2) * pow(per_second, 2));
static_assert(closed_form == per_second);
// (2 pi / hbar^2) int dk1 |M|^2 / v with |M|^2 = P/(hbar w v) hbar^3 w^3 Kbar^2.
constexpr Dim m_squared = watt / (joule * second * per_second * velocity) * pow(joule, 3) * kbar_squared;
static_assert(m_squared / pow(joule * second, 2) / metre / velocity == per_second);
}  // namespace units_check

void check_matched(const ResonantTriple& t, const NonlinearCoupling& coupling) {
  if (t.pump.mode_number <= 0 || t.signal.mode_number <= 0 || t.idler.mode_number <= 0) return;
  auto sign = qpm_check(t.pump.mode_number, t.signal.mode_number, t.idler.mode_number);
  if (!sign) throw DomainError("triple is not quasi-phase matched; its rate vanishes identically");
  if (*sign != coupling.sign) throw DomainError("coupling was built for the other quasi-phase-matching branch");
}

double pump_wavenumber(const ResonanceMode& pump, double omega0) {
  return pump.wavenumber_at(Channel::actual, omega0);
}

std::complex<double> m_kernel(const ResonantTriple& t, const NonlinearCoupling& coupling, const CwPump& pump,
                              Channel l1, Channel l2, double k1, double k2) {
  if (pump.power < 0.0) throw DomainError("pump power must be non-negative");
  const double vp = t.pump.group_velocity.actual;
  const double k0 = pump_wavenumber(t.pump, pump.omega0);
  auto fs = enhancement(t.signal, t.ring, l1, Sign::plus, k1);
  auto fi = enhancement(t.idler, t.ring, l2, Sign::plus, k2);
  auto fp = enhancement(t.pump, t.ring, Channel::actual, Sign::minus, k0);
  const double hbar = constants::hbar;
  double prefactor = std::sqrt(hbar * hbar * hbar * t.pump.omega * t.signal.omega * t.idler.omega /
                               std::pow(4.0 * constants::pi, 3));
  double amplitude = std::sqrt(2.0 * constants::pi * pump.power / (hbar * pump.omega0 * vp));
  return amplitude * prefactor * std::conj(fs * fi) * fp * coupling.kbar;
}

double vacuum_power(const ResonantTriple& t, double omega0) {
  const double gs = decay_rates(t.signal).total;
  const double gi = decay_rates(t.idler).total;
  const double dw = t.bin_mismatch(omega0);
  const double g = gs + gi;
  return 0.5 * constants::hbar * std::sqrt(t.signal.omega * t.idler.omega) * gs * gi * g / (dw * dw + g * g);
}

namespace {

double rate_with_prefactor(const ResonantTriple& t, const NonlinearCoupling& coupling, const CwPump& pump,
                           Channel l1, Channel l2, double denominator_factor) {
  check_matched(t, coupling);
  if (pump.power < 0.0) throw DomainError("pump power must be non-negative");
  const auto gp = decay_rates(t.pump);
  const auto gs = decay_rates(t.signal);
  const auto gi = decay_rates(t.idler);
  const double dw = pump.detuning(t.pump);
  const auto& r = coupling.references;
  const double velocity = (r.signal.v_bar * r.idler.v_bar * r.pump.v_bar) / (r.signal.n_bar * r.idler.n_bar * r.pump.n_bar);
  const double chi = coupling.chi_bar;
  const double c = constants::c;
  double numerator = pump.power * vacuum_power(t, pump.omega0) * chi * chi * std::sqrt(t.signal.omega * t.idler.omega) *
                     gp.total * (gs[l1] / gs.total) * (gi[l2] / gi.total) * (gp.actual / gp.total);
  double denominator = denominator_factor * constants::hbar * constants::pi * constants::epsilon0 * c * c * c *
                       gs.total * gi.total * coupling.radius;
  return numerator / denominator * velocity / coupling.a_eff / (dw * dw + gp.total * gp.total);
}

}  // namespace

double rate_closed_form(const ResonantTriple& t, const NonlinearCoupling& coupling, const CwPump& pump, Channel l1,
                        Channel l2) {
  return rate_with_prefactor(t, coupling, pump, l1, l2, 2.0);
}

double rate_degenerate(const ResonantTriple& t, const NonlinearCoupling& coupling, const CwPump& pump, Channel l1,
                       Channel l2) {
  if (t.signal.mode_number != t.idler.mode_number) throw DomainError("degenerate rate needs signal = idler");
  ResonantTriple sym = t;
  sym.idler = t.signal;
  return rate_with_prefactor(sym, coupling, pump, l1, l2, 4.0);
}

double TripleRate::total() const {
  double s = 0.0;
  for (Channel a : channels)
    for (Channel b : channels) s += rates(a, b);
  return s;
}

double TripleRate::heralding() const {
  double denom = rates(Channel::actual, Channel::actual) + rates(Channel::actual, Channel::phantom);
  return denom > 0.0 ? rates(Channel::actual, Channel::actual) / denom : 0.0;
}

TripleRate triple_rates(const ResonantTriple& t, const NonlinearCoupling& coupling, const CwPump& pump) {
  TripleRate out;
  out.degenerate = t.degenerate();
  out.bin_mismatch = t.bin_mismatch(pump.omega0);
  out.m_pump = t.pump.mode_number;
  out.m_signal = t.signal.mode_number;
  out.m_idler = t.idler.mode_number;
  out.sign = coupling.sign;
  out.a_eff = coupling.a_eff;
  for (Channel a : channels)
    for (Channel b : channels)
      out.rates(a, b) = out.degenerate ? rate_degenerate(t, coupling, pump, a, b) : rate_closed_form(t, coupling, pump, a, b);
  if (out.degenerate) {
    ResonantTriple sym = t;
    sym.idler = t.signal;
    out.vacuum_power = vacuum_power(sym, pump.omega0);
  } else {
    out.vacuum_power = vacuum_power(t, pump.omega0);
  }
  return out;
}

RateResult total_rate(std::span<const CoupledTriple> triples, const CwPump& pump) {
  RateResult out;
  out.power = pump.power;
  out.omega0 = pump.omega0;
  double best = -1.0;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    out.contributions.push_back(triple_rates(triples[i].triple, triples[i].coupling, pump));
    double r = out.contributions.back().actual();
    out.total_actual += r;
    if (r > best) {
      best = r;
      out.dominant = i;
    }
  }
  out.efficiency = pump.power > 0.0 ? out.total_actual * constants::hbar * pump.omega0 / pump.power : 0.0;
  return out;
}

double coupling_ratio(double eta) {
  if (!(eta >= 0.0) || eta > 1.0) throw DomainError("escape efficiency must lie in [0, 1)");
  if (eta == 1.0) throw DomainError("escape efficiency 1 means no intrinsic loss; ratio undefined");
  return 8.0 * eta * eta * (1.0 - eta);
}

double heralding_efficiency(double eta) {
  if (!(eta >= 0.0) || eta > 1.0) throw DomainError("escape efficiency must lie in [0, 1]");
  return eta;
}

std::vector<double> signal_spectrum(std::span<const CoupledTriple> triples, const CwPump& pump,
                                    std::span<const double> omega1, double bin_half_width) {
  if (!(bin_half_width > 0.0)) throw DomainError("bin half-width must be positive");
  std::vector<double> out(omega1.size(), 0.0);
  const double hbar = constants::hbar;
  for (const auto& ct : triples) {
    const auto& t = ct.triple;
    check_matched(t, ct.coupling);
    const double gs = decay_rates(t.signal).total;
    const double gi = decay_rates(t.idler).total;
    const bool degenerate = t.degenerate();
    const double vs = t.signal.group_velocity.actual;
    const double vi = t.idler.group_velocity.actual;
    for (std::size_t n = 0; n < omega1.size(); ++n) {
      const double w1 = omega1[n];
      const double d1 = w1 - t.signal.omega;
      const double d2 = (pump.omega0 - w1) - t.idler.omega;
      if (std::abs(d1) > bin_half_width * gs || std::abs(d2) > bin_half_width * gi) continue;
      if (degenerate && w1 < 0.5 * pump.omega0) continue;
      // Degenerate bins use the unhatted kernel restricted to the upper half.
      const double k1 = t.signal.center_wavenumber.actual + d1 / vs;
      const double k2 = t.idler.center_wavenumber.actual + d2 / vi;
      auto m = m_kernel(t, ct.coupling, pump, Channel::actual, Channel::actual, k1, k2);
      out[n] += 2.0 * constants::pi / (hbar * hbar) * std::norm(m) / (vs * vi);
    }
  }
  return out;
}

}  // namespace ringpairs
