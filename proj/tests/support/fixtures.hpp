#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "ringpairs/constants.hpp"
#include "ringpairs/cw.hpp"
#include "ringpairs/dispersion.hpp"
#include "ringpairs/overlap.hpp"
#include "ringpairs/resonator.hpp"

namespace fixtures {

using namespace ringpairs;

inline constexpr double two_pi = 2.0 * constants::pi;
inline constexpr double n_bar = 3.5;
inline constexpr double v_bar = constants::c / n_bar;
inline constexpr double chi_bar = 220e-12;

// Optimised rings: efficiency, actual-channel rate at 1 uW, effective area, sign, bin mismatch.
struct TableRow {
  char label;
  double radius;
  double width, height;
  double efficiency;
  double rate;
  double a_eff;
  Sign sign;
  double bin_mismatch;
};

inline const std::array<TableRow, 6> table_rows{{
    {'a', 20e-6, 938e-9, 105e-9, 1.47e-5, 57.2e6, 0.543e-12, Sign::minus, two_pi * 170e6},
    {'b', 30e-6, 986e-9, 104e-9, 0.93e-5, 36.2e6, 0.670e-12, Sign::plus, two_pi * -61e6},
    {'c', 40e-6, 958e-9, 105e-9, 0.82e-5, 32.0e6, 0.563e-12, Sign::minus, two_pi * -74e6},
    {'d', 20e-6, 1266e-9, 104e-9, 1.58e-5, 61.7e6, 0.556e-12, Sign::minus, two_pi * 109e6},
    {'e', 30e-6, 1142e-9, 100e-9, 0.53e-5, 20.8e6, 0.734e-12, Sign::plus, two_pi * -157e6},
    {'f', 40e-6, 1142e-9, 102e-9, 0.81e-5, 31.5e6, 0.578e-12, Sign::minus, two_pi * -51e6},
}};

// Wavelengths quoted for the 30 um AlGaAs ring; reused for every row.
inline constexpr double lambda_pump = 774.82e-9;
inline constexpr double lambda_signal = 1524.57e-9;
inline constexpr double lambda_idler = 1575.54e-9;

// Critically coupled triple with the idler placed so that omega_P - omega_S
// - omega_I equals the row's bin mismatch. Mode numbers are attached only for
// the ring whose resonances are quoted.
inline ResonantTriple table_triple(const TableRow& row, double q_load_signal = 5e5, double q_load_pump = 5e4) {
  RingGeometry ring(row.radius, row.width, row.height, "");
  const double wp = omega_from_wavelength(lambda_pump);
  const double ws = omega_from_wavelength(lambda_signal);
  const double wi = (wp - ws) - row.bin_mismatch;
  const bool quoted = row.label == 'b';
  auto qs = quality_from_loaded(q_load_signal, 0.5);
  auto qp = quality_from_loaded(q_load_pump, 0.5);
  return {ring,
          make_resonance(Role::pump, quoted ? 474 : 0, wp, v_bar, qp.intrinsic, qp.extrinsic, ring),
          make_resonance(Role::signal, quoted ? 244 : 0, ws, v_bar, qs.intrinsic, qs.extrinsic, ring),
          make_resonance(Role::idler, quoted ? 232 : 0, wi, v_bar, qs.intrinsic, qs.extrinsic, ring)};
}

inline NonlinearCoupling table_coupling(const TableRow& row) {
  return kbar_matched(Chi2Spec{chi_bar}, row.radius, row.a_eff, row.sign, ReferenceSet::uniform(n_bar));
}

inline const TableRow& row_b() { return table_rows[1]; }

// Effective index that puts resonance m at wavelength lambda.
inline double index_for(int m, double lambda, double radius) { return m * lambda / (two_pi * radius); }

// n_eff linear in omega through two resonances of one family.
inline DispersionModel linear_family(ModeFamily family, double radius, int m1, double lambda1, int m2, double lambda2,
                                     double lambda_min, double lambda_max) {
  const double w1 = omega_from_wavelength(lambda1), w2 = omega_from_wavelength(lambda2);
  const double n1 = index_for(m1, lambda1, radius), n2 = index_for(m2, lambda2, radius);
  return DispersionModel::polynomial(family, PolynomialVariable::omega, w1, {n1, (n2 - n1) / (w2 - w1)}, lambda_min,
                                     lambda_max);
}

// n_eff linear in omega through one resonance with a given group index.
inline DispersionModel pump_family(ModeFamily family, double radius, int m, double omega, double group_index,
                                   double lambda_min, double lambda_max) {
  const double n0 = m * constants::c / (radius * omega);
  return DispersionModel::polynomial(family, PolynomialVariable::omega, omega, {n0, (group_index - n0) / omega},
                                     lambda_min, lambda_max);
}

inline Eigen::MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = {n(rng), n(rng)};
  return m;
}

inline Eigen::MatrixXcd random_symmetric(Eigen::Index n, std::uint64_t seed) {
  Eigen::MatrixXcd a = random_matrix(n, n, seed);
  return 0.5 * (a + a.transpose()).eval();
}

inline Eigen::MatrixXcd random_unitary(Eigen::Index n, std::uint64_t seed) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(n, n, seed));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace fixtures
