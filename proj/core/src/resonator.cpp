#include "ringpairs/resonator.hpp"

#include <cmath>

#include "ringpairs/constants.hpp"
#include "ringpairs/error.hpp"

namespace ringpairs {

RingGeometry::RingGeometry(double radius, double width, double height, std::string material)
    : radius_(radius),
      circumference_(2.0 * constants::pi * radius),
      width_(width),
      height_(height),
      material_(std::move(material)) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ring radius must be positive");
  if (width < 0.0 || height < 0.0) throw DomainError("ring cross-section must be non-negative");
}

void validate(const ResonanceMode& mode) {
  if (!(mode.omega > 0.0) || !std::isfinite(mode.omega))
    throw DomainError("resonance frequency must be positive");
  if (!(mode.q_intrinsic > 0.0) || !(mode.q_extrinsic > 0.0))
    throw DomainError("quality factors must be positive");
  if (std::isinf(mode.q_intrinsic) && std::isinf(mode.q_extrinsic))
    throw DomainError("at least one quality factor must be finite");
  for (Channel c : channels)
    if (!(mode.group_velocity[c] > 0.0)) throw DomainError("group velocity must be positive");
}

double ResonanceMode::q_loaded() const {
  return 1.0 / (1.0 / q_extrinsic + 1.0 / q_intrinsic);
}

double ResonanceMode::kappa(const RingGeometry& ring) const {
  return static_cast<double>(mode_number) / ring.radius();
}

ResonanceMode make_resonance(Role role, int mode_number, double omega, double group_velocity,
                             double q_intrinsic, double q_extrinsic, const RingGeometry& ring) {
  ResonanceMode m;
  m.role = role;
  m.mode_number = mode_number;
  m.omega = omega;
  m.group_velocity = {group_velocity, group_velocity};
  double k = mode_number > 0 ? static_cast<double>(mode_number) / ring.radius() : omega / group_velocity;
  m.center_wavenumber = {k, k};
  m.q_intrinsic = q_intrinsic;
  m.q_extrinsic = q_extrinsic;
  validate(m);
  return m;
}

QualityFactors quality_from_loaded(double q_loaded, double escape_actual) {
  if (!(q_loaded > 0.0)) throw DomainError("loaded Q must be positive");
  if (!(escape_actual > 0.0) || escape_actual > 1.0)
    throw DomainError("actual-channel escape efficiency must lie in (0, 1]");
  double phantom = 1.0 - escape_actual;
  return {phantom > 0.0 ? q_loaded / phantom : infinite_q, q_loaded / escape_actual};
}

DecayRates decay_rates(const ResonanceMode& mode) {
  validate(mode);
  double ac = mode.omega / (2.0 * mode.q_extrinsic);
  double ph = mode.omega / (2.0 * mode.q_intrinsic);
  return {ac + ph, ac, ph};
}

double escape_efficiency(const ResonanceMode& mode, Channel c) {
  DecayRates g = decay_rates(mode);
  return g[c] / g.total;
}

double coupling_constant(const ResonanceMode& mode, Channel c) {
  return std::sqrt(2.0 * mode.group_velocity[c] * decay_rates(mode)[c]);
}

std::complex<double> enhancement_at_offset(const ResonanceMode& mode, const RingGeometry& ring, Channel c,
                                           Sign s, double offset) {
  DecayRates g = decay_rates(mode);
  double gamma = std::sqrt(2.0 * mode.group_velocity[c] * g[c]);
  std::complex<double> denom(offset, sign_value(s) * g.total);
  return gamma / (std::sqrt(ring.circumference()) * denom);
}

std::complex<double> enhancement(const ResonanceMode& mode, const RingGeometry& ring, Channel c,
                                 Sign s, double k) {
  return enhancement_at_offset(mode, ring, c, s, mode.group_velocity[c] * (mode.center_wavenumber[c] - k));
}

double finesse(const ResonanceMode& mode, const RingGeometry& ring, Channel c) {
  return mode.group_velocity[c] / (ring.radius() * 2.0 * decay_rates(mode).total);
}

}  // namespace ringpairs
