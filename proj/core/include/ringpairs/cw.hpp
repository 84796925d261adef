#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ringpairs/overlap.hpp"
#include "ringpairs/resonator.hpp"
#include "ringpairs/types.hpp"

namespace ringpairs {

struct ResonantTriple {
  RingGeometry ring;
  ResonanceMode pump;
  ResonanceMode signal;
  ResonanceMode idler;

  bool degenerate() const {
    return signal.mode_number == idler.mode_number && signal.omega == idler.omega;
  }
  double bin_mismatch(double omega0) const { return (omega0 - signal.omega) - idler.omega; }
};

// Throws unless the triple's mode numbers satisfy the coupling's QPM branch.
// Triples without mode numbers (zero) are accepted as given.
void check_matched(const ResonantTriple& triple, const NonlinearCoupling& coupling);

struct CwPump {
  double omega0 = 0.0;
  double power = 0.0;

  double detuning(const ResonanceMode& pump) const { return omega0 - pump.omega; }
};

// Pump wavenumber k0 in the actual channel.
double pump_wavenumber(const ResonanceMode& pump, double omega0);

std::complex<double> m_kernel(const ResonantTriple& triple, const NonlinearCoupling& coupling, const CwPump& pump,
                              Channel signal_channel, Channel idler_channel, double k1, double k2);

double vacuum_power(const ResonantTriple& triple, double omega0);

double rate_closed_form(const ResonantTriple& triple, const NonlinearCoupling& coupling, const CwPump& pump,
                        Channel signal_channel, Channel idler_channel);

// Rate of pairs inside a single bin (signal = idler); counted once.
double rate_degenerate(const ResonantTriple& triple, const NonlinearCoupling& coupling, const CwPump& pump,
                       Channel first, Channel second);

struct TripleRate {
  ChannelPairs<double> rates;
  double vacuum_power = 0.0;
  double bin_mismatch = 0.0;
  bool degenerate = false;
  int m_pump = 0, m_signal = 0, m_idler = 0;
  Sign sign = Sign::plus;
  double a_eff = 0.0;

  double actual() const { return rates(Channel::actual, Channel::actual); }
  double total() const;
  // Fraction of actual-channel signal photons whose idler also leaves by the actual channel.
  double heralding() const;
};

TripleRate triple_rates(const ResonantTriple& triple, const NonlinearCoupling& coupling, const CwPump& pump);

struct CoupledTriple {
  ResonantTriple triple;
  NonlinearCoupling coupling;
};

struct RateResult {
  std::vector<TripleRate> contributions;
  double total_actual = 0.0;
  double efficiency = 0.0;
  double power = 0.0;
  double omega0 = 0.0;
  std::optional<std::size_t> dominant;
};

RateResult total_rate(std::span<const CoupledTriple> triples, const CwPump& pump);

// Rate relative to critical coupling when signal and idler share the
// actual-channel escape efficiency eta at fixed intrinsic loss.
double coupling_ratio(double eta);
double heralding_efficiency(double eta);

// Actual-channel signal spectrum f(omega1) in 1/s per rad/s. Each triple
// contributes inside its signal and idler bins of half-width
// bin_half_width * linewidth; degenerate bins only for omega1 >= omega0 / 2.
std::vector<double> signal_spectrum(std::span<const CoupledTriple> triples, const CwPump& pump,
                                    std::span<const double> omega1, double bin_half_width = 20.0);

}  // namespace ringpairs
