#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "ringpairs/numerics/interpolation.hpp"
#include "ringpairs/resonator.hpp"
#include "ringpairs/types.hpp"

namespace ringpairs {

enum class ModeFamily { te0, tm0 };

std::string_view to_string(ModeFamily f);
ModeFamily mode_family_from_string(std::string_view s);

enum class Extrapolation { none, linear };

// Polynomial variable for the analytic representation.
enum class PolynomialVariable { omega, wavelength };

struct IndexSample {
  double n_eff = 0.0;
  double dn_domega = 0.0;
  double omega = 0.0;
  bool extrapolated = false;

  double group_index() const { return n_eff + omega * dn_domega; }
};

class DispersionModel {
 public:
  // Samples of (vacuum wavelength in m, n_eff); wavelengths strictly increasing.
  static DispersionModel sampled(ModeFamily family, std::vector<double> wavelength,
                                 std::vector<double> n_eff, Extrapolation extrapolation = Extrapolation::none);
  // n_eff = sum_j c_j (x - x_ref)^j with x either omega (rad/s) or wavelength (m).
  static DispersionModel polynomial(ModeFamily family, PolynomialVariable variable, double reference,
                                    std::vector<double> coefficients, double lambda_min, double lambda_max,
                                    Extrapolation extrapolation = Extrapolation::none);
  static DispersionModel constant(ModeFamily family, double n_eff, double lambda_min, double lambda_max);

  IndexSample evaluate(double omega) const;
  double n_eff(double omega) const { return evaluate(omega).n_eff; }
  double group_index(double omega) const { return evaluate(omega).group_index(); }

  ModeFamily family() const { return family_; }
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }
  double omega_min() const;
  double omega_max() const;
  bool in_band(double omega) const;

 private:
  struct Sampled {
    numerics::MonotoneCubic spline;  // n_eff over omega
  };
  struct Polynomial {
    PolynomialVariable variable;
    double reference;
    std::vector<double> coefficients;
  };

  DispersionModel(ModeFamily family, std::variant<Sampled, Polynomial> rep, double lambda_min,
                  double lambda_max, Extrapolation extrapolation);
  IndexSample evaluate_inside(double omega) const;

  ModeFamily family_;
  std::variant<Sampled, Polynomial> rep_;
  double lambda_min_;
  double lambda_max_;
  Extrapolation extrapolation_;
};

// Reads `lambda_nm, n_eff` rows; the header row is mandatory.
DispersionModel read_dispersion_csv(const std::filesystem::path& path, ModeFamily family,
                                    Extrapolation extrapolation = Extrapolation::none);

struct Resonance {
  int mode_number = 0;
  double omega = 0.0;

  double wavelength() const;
};

// All resonances omega n_eff(omega) R / c = m inside [omega_lo, omega_hi], sorted by m.
std::vector<Resonance> find_resonances(const RingGeometry& ring, const DispersionModel& model,
                                       double omega_lo, double omega_hi);

std::optional<Sign> qpm_check(int m_pump, int m_signal, int m_idler);

struct QpmTriple {
  Resonance pump;
  Resonance signal;
  Resonance idler;
  Sign sign = Sign::plus;
  double bin_mismatch = 0.0;  // omega0 - omega_S - omega_I

  bool degenerate() const { return signal.mode_number == idler.mode_number; }
};

// Matched (signal, idler) pairs with omega_S >= omega_I, ascending |bin mismatch|.
// Passing the same comb twice enumerates unordered pairs once.
std::vector<QpmTriple> enumerate_qpm_triples(const Resonance& pump, std::span<const Resonance> signal_comb,
                                             std::span<const Resonance> idler_comb, double omega0);

// Pump resonance closest to a target frequency; throws on an empty comb.
Resonance nearest_resonance(std::span<const Resonance> comb, double omega);

// G(omega0) = (delta_omega^2 + Gp^2) (Delta_omega^2 + (Gs + Gi)^2), evaluated
// with offsets t = omega0 - omega_P and d = omega_S + omega_I - omega_P.
double detuning_objective(double t, double d, double gamma_pump, double gamma_pair);

double optimize_pump_detuning(const QpmTriple& triple, double gamma_pump, double gamma_signal,
                              double gamma_idler);

}  // namespace ringpairs
