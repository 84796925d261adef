#pragma once

#include <complex>
#include <filesystem>
#include <vector>

#include "ringpairs/constants.hpp"
#include "ringpairs/types.hpp"

namespace ringpairs {

// Ring-frame field components at zeta = 0 on a rectangular (x, z) grid,
// x radial and z normal to the chip. Nodes are stored x-major: ix * nz + iz.
struct ModeProfile {
  std::vector<double> x;
  std::vector<double> z;
  std::vector<std::complex<double>> ex, ey, ez;
  std::vector<double> n_local;
  std::vector<double> ng_local;
  double omega = 0.0;

  std::size_t nx() const { return x.size(); }
  std::size_t nz() const { return z.size(); }
  std::size_t index(std::size_t ix, std::size_t iz) const { return ix * z.size() + iz; }
  double intensity(std::size_t node) const {
    return std::norm(ex[node]) + std::norm(ey[node]) + std::norm(ez[node]);
  }
  void validate() const;
};

ModeProfile read_mode_profile_csv(const std::filesystem::path& path, double omega);

// True when |e|^2 on the grid boundary stays below threshold * max |e|^2.
bool covers_mode(const ModeProfile& profile, double threshold = 1e-6);

// Bilinear resampling onto another grid; throws when the target grid reaches
// outside the source grid.
ModeProfile resample(const ModeProfile& profile, const std::vector<double>& x, const std::vector<double>& z);

struct Chi2Spec {
  double chi_bar = 0.0;  // m/V, zincblende with crystal z normal to the chip
};

struct ModeReference {
  double n_bar = 3.5;
  double v_bar = constants::c / 3.5;
};

struct ReferenceSet {
  ModeReference signal, idler, pump;

  static ReferenceSet uniform(double n_bar = 3.5) {
    ModeReference r{n_bar, constants::c / n_bar};
    return {r, r, r};
  }
};

struct NonlinearCoupling {
  double kbar = 0.0;
  Sign sign = Sign::plus;
  double a_eff = 0.0;
  double chi_bar = 0.0;
  double radius = 0.0;
  ReferenceSet references;

  // Coupling entering the degenerate (signal = idler) expressions.
  double degenerate_kbar() const { return 0.5 * kbar; }
};

// Azimuthal phase-matching integral over one round trip.
std::complex<double> v_pm(double delta_kappa, double radius, Sign sign);

// Cross-section integral of the quasi-phase-matched tensor contraction.
std::complex<double> w_pm(const ModeProfile& signal, const ModeProfile& idler, const ModeProfile& pump,
                          Sign sign);
// Integrand of w_pm at one set of field components.
std::complex<double> w_density(const std::complex<double>* es, const std::complex<double>* ei,
                               const std::complex<double>* ep, Sign sign);

double mode_norm(const ModeProfile& profile, const ModeReference& ref);

double effective_area(const ModeProfile& signal, const ModeProfile& idler, const ModeProfile& pump, Sign sign,
                      const ReferenceSet& refs);

NonlinearCoupling kbar_matched(const Chi2Spec& chi, double radius, double a_eff, Sign sign,
                               const ReferenceSet& refs);

}  // namespace ringpairs
