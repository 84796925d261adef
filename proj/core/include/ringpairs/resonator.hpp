#pragma once

#include <complex>
#include <limits>
#include <string>

#include "ringpairs/types.hpp"

namespace ringpairs {

class RingGeometry {
 public:
  RingGeometry(double radius, double width = 0.0, double height = 0.0, std::string material = {});

  double radius() const { return radius_; }
  double circumference() const { return circumference_; }
  double width() const { return width_; }
  double height() const { return height_; }
  const std::string& material() const { return material_; }

 private:
  double radius_;
  double circumference_;
  double width_;
  double height_;
  std::string material_;
};

inline constexpr double infinite_q = std::numeric_limits<double>::infinity();

struct ResonanceMode {
  Role role = Role::signal;
  int mode_number = 0;
  double omega = 0.0;
  PerChannel<double> group_velocity;
  PerChannel<double> center_wavenumber;
  double q_intrinsic = infinite_q;  // phantom channel
  double q_extrinsic = infinite_q;  // actual channel

  double q(Channel c) const { return c == Channel::actual ? q_extrinsic : q_intrinsic; }
  double q_loaded() const;
  // Resonant wavenumber m / R.
  double kappa(const RingGeometry& ring) const;
  // Frequency of the channel-c mode with wavenumber k.
  double omega_at(Channel c, double k) const {
    return omega + group_velocity[c] * (k - center_wavenumber[c]);
  }
  double wavenumber_at(Channel c, double w) const {
    return center_wavenumber[c] + (w - omega) / group_velocity[c];
  }
};

// Builds a resonance with equal group velocities in both channels and centre
// wavenumbers m/R (or omega/v when no mode number is known).
ResonanceMode make_resonance(Role role, int mode_number, double omega, double group_velocity,
                             double q_intrinsic, double q_extrinsic, const RingGeometry& ring);

// Q factors from a loaded Q and the actual-channel escape efficiency.
struct QualityFactors {
  double intrinsic;
  double extrinsic;
};
QualityFactors quality_from_loaded(double q_loaded, double escape_actual);

struct DecayRates {
  double total;
  double actual;
  double phantom;

  double operator[](Channel c) const { return c == Channel::actual ? actual : phantom; }
};

DecayRates decay_rates(const ResonanceMode& mode);
double escape_efficiency(const ResonanceMode& mode, Channel c);
// |gamma|, with gamma chosen real and non-negative.
double coupling_constant(const ResonanceMode& mode, Channel c);

std::complex<double> enhancement(const ResonanceMode& mode, const RingGeometry& ring, Channel c,
                                 Sign s, double k);
// Same factor written in terms of the frequency offset v (K - k).
std::complex<double> enhancement_at_offset(const ResonanceMode& mode, const RingGeometry& ring, Channel c,
                                           Sign s, double offset);

// Free spectral range over linewidth, FSR = v / R in angular frequency.
double finesse(const ResonanceMode& mode, const RingGeometry& ring, Channel c = Channel::actual);

void validate(const ResonanceMode& mode);

}  // namespace ringpairs
