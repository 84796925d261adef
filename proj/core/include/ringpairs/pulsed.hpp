#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ringpairs/cw.hpp"
#include "ringpairs/overlap.hpp"
#include "ringpairs/resonator.hpp"
#include "ringpairs/types.hpp"

namespace ringpairs {

struct GaussianShape {
  double fwhm = 0.0;        // temporal intensity FWHM tau_P (s)
  double peak_power = 0.0;  // W
  double detuning = 0.0;    // carrier omega0 - omega_P (rad/s)
};

// Normalised envelope samples over k - K_P^ac, linearly interpolated and zero outside.
struct SampledShape {
  std::vector<double> dk;
  std::vector<std::complex<double>> amplitude;
  double detuning = 0.0;
};

class PumpPulse {
 public:
  static PumpPulse gaussian(double fwhm, double peak_power, double detuning, const ResonanceMode& pump);
  // Rescales the samples so that the trapezoid norm is one.
  static PumpPulse sampled(std::vector<double> dk, std::vector<std::complex<double>> amplitude, double energy,
                           double detuning, const ResonanceMode& pump);

  std::complex<double> envelope(double k) const { return envelope_offset(k - center_wavenumber_); }
  std::complex<double> envelope_offset(double dk) const;
  double norm() const;

  double energy() const { return energy_; }
  double photon_number() const;
  double omega0() const { return omega_pump_ + detuning(); }
  double detuning() const;
  double group_velocity() const { return group_velocity_; }
  double center_wavenumber() const { return center_wavenumber_; }
  const std::variant<GaussianShape, SampledShape>& shape() const { return shape_; }

  // Same envelope carrying a different energy (peak power rescaled).
  PumpPulse with_energy(double energy) const;

 private:
  PumpPulse(std::variant<GaussianShape, SampledShape> shape, double energy, const ResonanceMode& pump);

  std::variant<GaussianShape, SampledShape> shape_;
  double energy_ = 0.0;
  double omega_pump_ = 0.0;
  double group_velocity_ = 0.0;
  double center_wavenumber_ = 0.0;
};

double gaussian_pulse_energy(double fwhm, double peak_power);

struct GridSpec {
  int points = 256;           // per axis
  double half_width = 20.0;   // in loaded linewidths
};

// beta * phi^II_{ll'}(k1, k2), the kernel before normalisation.
std::complex<double> jsa(const ResonantTriple& triple, const NonlinearCoupling& coupling, const PumpPulse& pulse,
                         Channel signal_channel, Channel idler_channel, double k1, double k2);
// beta_hat * phi_hat^II_{ll'}(k1, k2) for a single degenerate bin.
std::complex<double> jsa_degenerate(const ResonantTriple& triple, const NonlinearCoupling& coupling,
                                    const PumpPulse& pulse, Channel first, Channel second, double k1, double k2);

struct JsaGrid {
  std::vector<double> k1, k2;
  double dk1 = 0.0, dk2 = 0.0;
  ChannelPairs<Eigen::MatrixXcd> phi;  // normalised blocks
  double beta = 0.0;
  double pump_photons = 0.0;
  bool degenerate = false;

  // Sum over cells of |beta phi_{ll'}|^2 dk1 dk2.
  ChannelPairs<double> beta_squared_by_channel() const;
  double beta_squared() const { return beta * beta; }
  // sum |Phi|^2 dk1 dk2 over all blocks.
  double norm() const;
};

JsaGrid build_jsa_grid(const ResonantTriple& triple, const NonlinearCoupling& coupling, const PumpPulse& pulse,
                       const GridSpec& spec);
// Shared signal grid for a degenerate bin; blocks obey phi_{ll'}(k1,k2) = phi_{l'l}(k2,k1).
JsaGrid build_degenerate_jsa_grid(const ResonantTriple& triple, const NonlinearCoupling& coupling,
                                  const PumpPulse& pulse, const GridSpec& spec);

// J = beta sqrt(dk1 dk2) [Phi_acac Phi_acph; Phi_phac Phi_phph].
Eigen::MatrixXcd build_squeezing_matrix(const JsaGrid& grid);
Eigen::MatrixXcd assemble_blocks(const ChannelPairs<Eigen::MatrixXcd>& blocks, double scale);

struct DecomposeOptions {
  bool vectors = true;
  bool moments = true;
};

struct SqueezeResult {
  Eigen::VectorXd r;
  Eigen::MatrixXcd f_signal, f_idler;
  Eigen::MatrixXcd n_signal, n_idler, m_si;
  double photon_number = 0.0;  // sum sinh^2 r_n
  double schmidt_number = 1.0;
  bool vacuum = true;
  bool degenerate = false;
  double beta_squared = 0.0;   // ||J||_F^2
  double pump_photons = 0.0;
  double reconstruction_error = 0.0;

  // Pairs N_SI; a degenerate bin holds two photons per pair.
  double pairs() const { return degenerate ? 0.5 * photon_number : photon_number; }
  double efficiency() const { return pump_photons > 0.0 ? pairs() / pump_photons : 0.0; }
};

double photon_number(const Eigen::VectorXd& r);
// (sum sinh^2 r)^2 / sum sinh^4 r; 1 for the vacuum.
double schmidt_number(const Eigen::VectorXd& r);
// Same ratio built from r_n themselves, the pair-regime estimate.
double schmidt_number_pair_regime(const Eigen::VectorXd& r);

SqueezeResult schmidt_decompose(const Eigen::MatrixXcd& j, double pump_photons, const DecomposeOptions& options = {});
SqueezeResult takagi_decompose(const Eigen::MatrixXcd& j_hat, double pump_photons,
                               const DecomposeOptions& options = {});

struct RefinementPolicy {
  GridSpec grid;
  int max_points = 1024;
  double tolerance = 0.005;
};

struct PulsedSolution {
  JsaGrid grid;
  SqueezeResult squeeze;
  int points = 0;
  bool converged = false;
  double photon_change = 0.0;   // relative change at the last refinement
  double schmidt_change = 0.0;
  // Singular values of J / beta on the final grid, for energy rescaling.
  Eigen::VectorXd unit_spectrum;
};

// Doubles the grid until photon number and Schmidt number change by less
// than the tolerance, or max_points is reached (converged = false).
PulsedSolution solve_pulsed(const ResonantTriple& triple, const NonlinearCoupling& coupling, const PumpPulse& pulse,
                            const RefinementPolicy& policy, const DecomposeOptions& options = {false, false});
PulsedSolution solve_pulsed_degenerate(const ResonantTriple& triple, const NonlinearCoupling& coupling,
                                       const PumpPulse& pulse, const RefinementPolicy& policy,
                                       const DecomposeOptions& options = {false, false});

struct PairProbabilities {
  double total = 0.0;
  ChannelPairs<double> by_channel;
  double efficiency = 0.0;  // |beta|^2 / N_P
};

// Pair-regime |beta|^2 on a converged grid; throws ConvergenceError otherwise.
PairProbabilities beta_squared(const ResonantTriple& triple, const NonlinearCoupling& coupling, const PumpPulse& pulse,
                               const RefinementPolicy& policy = {});

struct EnergyPoint {
  double energy = 0.0;
  double beta_squared = 0.0;
  double pairs = 0.0;
  double schmidt_number = 1.0;
  double efficiency_pair_regime = 0.0;
  double efficiency_los = 0.0;
  bool beyond_los_validity = false;  // pairs / |beta|^2 > 1.5
  double ratio() const { return beta_squared > 0.0 ? pairs / beta_squared : 1.0; }
};

// Rescales a solved pulse to other energies at fixed shape: |beta|^2 is
// linear in the energy and the Schmidt modes are unchanged.
std::vector<EnergyPoint> energy_sweep(const PulsedSolution& solution, const PumpPulse& pulse,
                                      std::span<const double> energies);

}  // namespace ringpairs
