#pragma once

#include <numbers>

namespace ringpairs {

namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double c = 299792458.0;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double epsilon0 = 8.8541878128e-12;
}  // namespace constants

inline constexpr double omega_from_wavelength(double lambda) {
  return 2.0 * constants::pi * constants::c / lambda;
}

inline constexpr double wavelength_from_omega(double omega) {
  return 2.0 * constants::pi * constants::c / omega;
}

}  // namespace ringpairs
