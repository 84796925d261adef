#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "ringpairs/error.hpp"
#include "ringpairs/numerics/linalg.hpp"
#include "ringpairs/pulsed.hpp"

using namespace ringpairs;
using Eigen::MatrixXcd;
using Eigen::VectorXd;
using cd = std::complex<double>;

namespace {

struct Setup {
  ResonantTriple triple;
  NonlinearCoupling coupling;
};

Setup row_b() {
  const auto& row = fixtures::row_b();
  return {fixtures::table_triple(row), fixtures::table_coupling(row)};
}

// Degenerate bin at the signal resonance, pumped at twice its frequency.
Setup degenerate_setup() {
  auto s = row_b();
  auto& t = s.triple;
  t.signal.mode_number = 238;
  t.idler = t.signal;
  t.pump.omega = 2.0 * t.signal.omega;
  return s;
}

PumpPulse pulse(const Setup& s, double tau, double peak = 10e-6) {
  return PumpPulse::gaussian(tau, peak, 0.0, s.triple.pump);
}

double trace_real(const MatrixXcd& m) { return m.trace().real(); }

}  // namespace

TEST(Pulse, GaussianEnergy) {
  auto s = row_b();
  auto p = pulse(s, 15e-12);
  EXPECT_NEAR(p.energy() * 1e15, 0.16, 0.005);
  EXPECT_DOUBLE_EQ(p.energy(), 10e-6 * 15e-12 * std::sqrt(constants::pi / (4.0 * std::log(2.0))));
  EXPECT_NEAR(p.photon_number(), p.energy() / (constants::hbar * p.omega0()), 1e-6);
  EXPECT_THROW(pulse(s, 0.0), DomainError);
}

TEST(Pulse, GaussianIsNormalised) {
  auto s = row_b();
  for (double tau : {15e-12, 150e-12, 1.5e-9, 15e-9}) EXPECT_NEAR(pulse(s, tau).norm(), 1.0, 1e-10) << tau;
  auto detuned = PumpPulse::gaussian(150e-12, 1e-5, 3e9, s.triple.pump);
  EXPECT_NEAR(detuned.norm(), 1.0, 1e-10);
}

TEST(Pulse, SpectralWidthOfTheEnvelope) {
  auto s = row_b();
  const double tau = 150e-12;
  auto p = pulse(s, tau);
  const double v = p.group_velocity();
  // Dense scan of |phi|^2 against omega = v k, half maximum located by bisection.
  const double peak = std::norm(p.envelope_offset(0.0));
  auto excess = [&](double w) { return std::norm(p.envelope_offset(w / v)) - 0.5 * peak; };
  double lo = 0.0, hi = 100.0 / tau;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  const double fwhm = 2.0 * 0.5 * (lo + hi);
  EXPECT_NEAR(fwhm / (4.0 * std::sqrt(2.0) * std::log(2.0) / tau), 1.0, 1e-6);
}

TEST(Pulse, SampledShapeIsRenormalised) {
  auto s = row_b();
  std::vector<double> dk;
  std::vector<cd> amp;
  for (int i = -50; i <= 50; ++i) {
    dk.push_back(i * 10.0);
    amp.emplace_back(3.0 * std::exp(-std::pow(i / 15.0, 2)), 0.0);
  }
  auto p = PumpPulse::sampled(dk, amp, 1e-15, 0.0, s.triple.pump);
  EXPECT_NEAR(p.norm(), 1.0, 1e-12);
  EXPECT_EQ(p.envelope_offset(1e6), cd(0.0, 0.0));
  cd mid = p.envelope_offset(5.0);
  EXPECT_NEAR(std::abs(mid - 0.5 * (p.envelope_offset(0.0) + p.envelope_offset(10.0))), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(p.energy(), 1e-15);
}

TEST(Pulse, WithEnergyRescalesPeakPower) {
  auto s = row_b();
  auto p = pulse(s, 1.5e-9);
  auto q = p.with_energy(2.0 * p.energy());
  EXPECT_DOUBLE_EQ(std::get<GaussianShape>(q.shape()).peak_power, 2.0 * 10e-6);
  EXPECT_EQ(q.envelope_offset(3.0), p.envelope_offset(3.0));
}

TEST(Jsa, ChannelFactorPointwise) {
  auto s = row_b();
  auto& t = s.triple;
  t.idler.q_intrinsic = 2e6;
  t.idler.q_extrinsic = 7e5;
  auto p = pulse(s, 150e-12);
  auto g = decay_rates(t.idler);
  for (double x : {-5.0, 0.0, 2.0})
    for (double y : {-1.0, 0.5, 8.0}) {
      double k1 = t.signal.center_wavenumber.actual + x * 50.0;
      double k2 = t.idler.center_wavenumber.actual + y * 50.0;
      auto aa = jsa(t, s.coupling, p, Channel::actual, Channel::actual, k1, k2);
      auto ap = jsa(t, s.coupling, p, Channel::actual, Channel::phantom, k1, k2);
      EXPECT_NEAR(std::norm(ap) / std::norm(aa), g.phantom / g.actual, 1e-12);
    }
}

TEST(Jsa, LongPulseFollowsEnergyConservation) {
  auto s = row_b();
  const auto& t = s.triple;
  const double tau = 15e-9;
  auto p = pulse(s, tau);
  auto grid = build_jsa_grid(t, s.coupling, p, GridSpec{256, 5.0});
  const double omega0 = p.omega0();
  const double ridge = 3.0 * 4.0 * std::sqrt(2.0) * std::log(2.0) / tau;
  double near = 0.0, all = 0.0;
  const auto& phi = grid.phi(Channel::actual, Channel::actual);
  for (std::size_t i = 0; i < grid.k1.size(); ++i)
    for (std::size_t j = 0; j < grid.k2.size(); ++j) {
      double w = t.signal.omega_at(Channel::actual, grid.k1[i]) + t.idler.omega_at(Channel::actual, grid.k2[j]);
      double v = std::norm(phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      all += v;
      if (std::abs(w - omega0) < ridge) near += v;
    }
  EXPECT_GT(near / all, 0.99);
}

TEST(JsaGrid, NormalisedAndChannelFractions) {
  auto s = row_b();
  auto& t = s.triple;
  t.signal.q_extrinsic = 2e6;
  t.idler.q_intrinsic = 6e5;
  auto grid = build_jsa_grid(t, s.coupling, pulse(s, 150e-12), GridSpec{64, 20.0});
  EXPECT_NEAR(grid.norm(), 1.0, 1e-12);
  auto by = grid.beta_squared_by_channel();
  auto eta = [](const ResonanceMode& m, Channel c) { return escape_efficiency(m, c); };
  const auto ac = Channel::actual, ph = Channel::phantom;
  double expected = eta(t.signal, ac) * eta(t.idler, ac) / (eta(t.signal, ph) * eta(t.idler, ph));
  EXPECT_NEAR(by(ac, ac) / by(ph, ph) / expected, 1.0, 1e-6);
  double sum = by(ac, ac) + by(ac, ph) + by(ph, ac) + by(ph, ph);
  EXPECT_NEAR(sum / grid.beta_squared(), 1.0, 1e-12);
  auto j = build_squeezing_matrix(grid);
  EXPECT_EQ(j.rows(), 128);
  EXPECT_NEAR(j.norm() / grid.beta, 1.0, 1e-12);
}

TEST(JsaGrid, NoPhantomCouplingLeavesOnlyActualBlock) {
  auto s = row_b();
  auto& t = s.triple;
  for (ResonanceMode* m : {&t.signal, &t.idler}) {
    m->q_extrinsic = 5e5;
    m->q_intrinsic = infinite_q;
  }
  auto grid = build_jsa_grid(t, s.coupling, pulse(s, 150e-12), GridSpec{16, 20.0});
  auto j = build_squeezing_matrix(grid);
  EXPECT_EQ(j.topRightCorner(16, 16).norm(), 0.0);
  EXPECT_EQ(j.bottomLeftCorner(16, 16).norm(), 0.0);
  EXPECT_EQ(j.bottomRightCorner(16, 16).norm(), 0.0);
  EXPECT_GT(j.topLeftCorner(16, 16).norm(), 0.0);
}

TEST(SqueezingMatrix, SingleCellBlocks) {
  ChannelPairs<MatrixXcd> blocks;
  const cd a(1, 2), b(0.5, 0), c(0, -1), d(3, 3);
  blocks(Channel::actual, Channel::actual) = MatrixXcd::Constant(1, 1, a);
  blocks(Channel::actual, Channel::phantom) = MatrixXcd::Constant(1, 1, b);
  blocks(Channel::phantom, Channel::actual) = MatrixXcd::Constant(1, 1, c);
  blocks(Channel::phantom, Channel::phantom) = MatrixXcd::Constant(1, 1, d);
  auto j = assemble_blocks(blocks, 0.25);
  MatrixXcd expected(2, 2);
  expected << a, b, c, d;
  EXPECT_EQ((j - 0.25 * expected).norm(), 0.0);
  blocks(Channel::phantom, Channel::phantom) = MatrixXcd::Zero(2, 1);
  EXPECT_THROW(assemble_blocks(blocks, 1.0), DomainError);
}

TEST(Schmidt, MomentsAndTraces) {
  MatrixXcd j = 0.4 * fixtures::random_matrix(24, 24, 31) / 24.0;
  auto r = schmidt_decompose(j, 1e6);
  const double n = r.photon_number;
  EXPECT_NEAR(trace_real(r.n_signal) / n, 1.0, 1e-10);
  EXPECT_NEAR(trace_real(r.n_idler) / n, 1.0, 1e-10);
  EXPECT_LT(r.reconstruction_error, 1e-10);
  EXPECT_LT((r.n_signal - r.n_signal.adjoint()).norm(), 1e-14);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(r.n_signal);
  EXPECT_GT(eig.eigenvalues().minCoeff(), -1e-14);
  EXPECT_GE(r.schmidt_number, 1.0);
  EXPECT_NEAR(r.beta_squared, j.squaredNorm(), 1e-14);
  EXPECT_NEAR(r.efficiency(), n / 1e6, 1e-20);
}

TEST(Schmidt, RankOneHasUnitSchmidtNumber) {
  Eigen::VectorXcd u = fixtures::random_matrix(10, 1, 1).col(0).normalized();
  Eigen::VectorXcd v = fixtures::random_matrix(10, 1, 2).col(0).normalized();
  const double rr = 1.3;
  MatrixXcd j = rr * u * v.transpose();
  auto r = schmidt_decompose(j, 1.0);
  EXPECT_NEAR(r.schmidt_number, 1.0, 1e-12);
  EXPECT_NEAR(r.photon_number, std::pow(std::sinh(rr), 2), 1e-12);
}

TEST(Schmidt, GlobalPhaseInvariance) {
  MatrixXcd j = 0.05 * fixtures::random_matrix(16, 16, 4);
  auto a = schmidt_decompose(j, 1.0);
  auto b = schmidt_decompose(std::polar(1.0, 0.83) * j, 1.0);
  EXPECT_LT((a.r - b.r).norm(), 1e-13);
  EXPECT_NEAR(a.photon_number, b.photon_number, 1e-13);
  EXPECT_NEAR(a.schmidt_number, b.schmidt_number, 1e-12);
  EXPECT_LT((a.n_signal.cwiseAbs() - b.n_signal.cwiseAbs()).norm(), 1e-12);
  EXPECT_LT((a.m_si.cwiseAbs() - b.m_si.cwiseAbs()).norm(), 1e-12);
}

TEST(Schmidt, VacuumConvention) {
  auto r = schmidt_decompose(MatrixXcd::Zero(6, 6), 1.0);
  EXPECT_TRUE(r.vacuum);
  EXPECT_EQ(r.photon_number, 0.0);
  EXPECT_EQ(r.schmidt_number, 1.0);
  auto t = takagi_decompose(MatrixXcd::Zero(6, 6), 1.0);
  EXPECT_TRUE(t.vacuum);
  EXPECT_EQ(t.schmidt_number, 1.0);
}

TEST(Schmidt, PairRegimeAgreement) {
  MatrixXcd j = fixtures::random_matrix(20, 20, 6);
  j *= std::sqrt(5e-4) / j.norm();
  auto r = schmidt_decompose(j, 1.0, {false, false});
  EXPECT_LE(std::abs(r.photon_number - r.beta_squared) / r.beta_squared, 1e-3);
  EXPECT_NEAR(r.schmidt_number / schmidt_number_pair_regime(r.r), 1.0, 1e-3);
}

TEST(Degenerate, KernelIsPermutationSymmetric) {
  auto s = degenerate_setup();
  auto p = pulse(s, 150e-12);
  const auto& m = s.triple.signal;
  for (double x : {-3.0, 0.0, 1.0})
    for (double y : {-2.0, 4.0})
      for (Channel a : channels)
        for (Channel b : channels) {
          double k1 = m.center_wavenumber.actual + 40.0 * x, k2 = m.center_wavenumber.actual + 40.0 * y;
          EXPECT_EQ(jsa_degenerate(s.triple, s.coupling, p, a, b, k1, k2),
                    jsa_degenerate(s.triple, s.coupling, p, b, a, k2, k1));
        }
}

TEST(Degenerate, SymmetricMatrixAndTakagi) {
  auto s = degenerate_setup();
  s.triple.signal.q_extrinsic = 1.5e6;
  s.triple.idler = s.triple.signal;
  auto grid = build_degenerate_jsa_grid(s.triple, s.coupling, pulse(s, 1.5e-9), GridSpec{48, 20.0});
  auto j = build_squeezing_matrix(grid);
  EXPECT_EQ(numerics::asymmetry(j), 0.0);
  auto r = takagi_decompose(j, grid.pump_photons, {true, true});
  EXPECT_LT(r.reconstruction_error, 1e-10);
  auto sigma = numerics::singular_values(j);
  EXPECT_LT((r.r - sigma).cwiseAbs().maxCoeff(), 1e-12 * sigma(0));
  EXPECT_NEAR(trace_real(r.n_signal) / r.photon_number, 1.0, 1e-10);
  EXPECT_NEAR(r.pairs(), 0.5 * r.photon_number, 1e-15);
  MatrixXcd bad = j;
  bad(0, 1) += 0.1 * j.norm();
  EXPECT_THROW(takagi_decompose(bad, 1.0), DomainError);
}

TEST(PairProbability, LinearInEnergy) {
  auto s = row_b();
  RefinementPolicy policy{GridSpec{64, 20.0}, 512, 0.005};
  auto p = pulse(s, 150e-12);
  auto b1 = beta_squared(s.triple, s.coupling, p, policy);
  auto b2 = beta_squared(s.triple, s.coupling, p.with_energy(2.0 * p.energy()), policy);
  EXPECT_NEAR(b2.total / b1.total, 2.0, 1e-12);
  EXPECT_NEAR(b1.efficiency, b1.total / p.photon_number(), 1e-20);
  auto zero = build_jsa_grid(s.triple, s.coupling, p.with_energy(0.0), GridSpec{16, 20.0});
  EXPECT_EQ(zero.beta, 0.0);
}

TEST(PairProbability, ShortPulseMatchesPublishedValue) {
  auto s = row_b();
  auto b = beta_squared(s.triple, s.coupling, pulse(s, 15e-12), RefinementPolicy{GridSpec{128, 20.0}, 512, 0.005});
  EXPECT_NEAR(b.total / 5.61e-4, 1.0, 0.05);
}

TEST(PairProbability, UnconvergedGridIsReported) {
  auto s = row_b();
  EXPECT_THROW(beta_squared(s.triple, s.coupling, pulse(s, 1.5e-9), RefinementPolicy{GridSpec{16, 20.0}, 16, 1e-9}),
               ConvergenceError);
}

TEST(Refinement, DoublesUntilStable) {
  auto s = row_b();
  auto sol = solve_pulsed(s.triple, s.coupling, pulse(s, 150e-12), RefinementPolicy{GridSpec{32, 20.0}, 512, 0.005});
  EXPECT_TRUE(sol.converged);
  EXPECT_GT(sol.points, 32);
  EXPECT_LT(sol.photon_change, 0.005);
  EXPECT_LT(sol.schmidt_change, 0.005);
  EXPECT_NEAR(sol.grid.norm(), 1.0, 1e-10);
}

TEST(EnergySweep, MonotoneAndAboveOne) {
  auto s = row_b();
  auto p = pulse(s, 1.5e-9);
  auto sol = solve_pulsed(s.triple, s.coupling, p, RefinementPolicy{GridSpec{64, 20.0}, 256, 0.05});
  std::vector<double> energies;
  for (double e = 1e-17; e < 2e-13; e *= 2.0) energies.push_back(e);
  auto pts = energy_sweep(sol, p, energies);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_GE(pts[i].ratio(), 1.0);
    if (i > 0) {
      EXPECT_GT(pts[i].pairs, pts[i - 1].pairs);
      EXPECT_GE(pts[i].ratio(), pts[i - 1].ratio());
    }
  }
  EXPECT_FALSE(pts.front().beyond_los_validity);
  EXPECT_TRUE(pts.back().beyond_los_validity);
  // At the solved energy the rescaled spectrum reproduces the direct decomposition.
  auto same = energy_sweep(sol, p, std::vector<double>{p.energy()});
  EXPECT_NEAR(same[0].pairs / sol.squeeze.photon_number, 1.0, 1e-12);
  auto zero = energy_sweep(sol, p, std::vector<double>{0.0});
  EXPECT_EQ(zero[0].pairs, 0.0);
  EXPECT_EQ(zero[0].beta_squared, 0.0);
}
