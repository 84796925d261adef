#include "ringpairs/pulsed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringpairs/constants.hpp"
#include "ringpairs/error.hpp"
#include "ringpairs/numerics/linalg.hpp"
#include "ringpairs/numerics/quadrature.hpp"

namespace ringpairs {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

namespace {

const double ln2 = std::log(2.0);

// Exact integral of |piecewise-linear interpolant|^2 over the samples.
double linear_norm(const std::vector<double>& x, const std::vector<cd>& y) {
  double total = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    double h = x[i] - x[i - 1];
    total += h / 3.0 * (std::norm(y[i - 1]) + std::real(y[i - 1] * std::conj(y[i])) + std::norm(y[i]));
  }
  return total;
}

double relative_change(double now, double before) {
  double scale = std::max(std::abs(now), std::abs(before));
  return scale > 0.0 ? std::abs(now - before) / scale : 0.0;
}

}  // namespace

double gaussian_pulse_energy(double fwhm, double peak_power) {
  return peak_power * fwhm * std::sqrt(constants::pi / (4.0 * ln2));
}

PumpPulse::PumpPulse(std::variant<GaussianShape, SampledShape> shape, double energy, const ResonanceMode& pump)
    : shape_(std::move(shape)),
      energy_(energy),
      omega_pump_(pump.omega),
      group_velocity_(pump.group_velocity.actual),
      center_wavenumber_(pump.center_wavenumber.actual) {
  if (energy < 0.0) throw DomainError("pulse energy must be non-negative");
}

PumpPulse PumpPulse::gaussian(double fwhm, double peak_power, double detuning, const ResonanceMode& pump) {
  if (!(fwhm > 0.0)) throw DomainError("pulse duration must be positive");
  if (peak_power < 0.0) throw DomainError("peak power must be non-negative");
  validate(pump);
  return PumpPulse(GaussianShape{fwhm, peak_power, detuning}, gaussian_pulse_energy(fwhm, peak_power), pump);
}

PumpPulse PumpPulse::sampled(std::vector<double> dk, std::vector<cd> amplitude, double energy, double detuning,
                             const ResonanceMode& pump) {
  if (dk.size() != amplitude.size() || dk.size() < 2) throw DomainError("sampled pulse needs matching samples");
  for (std::size_t i = 1; i < dk.size(); ++i)
    if (!(dk[i] > dk[i - 1])) throw DomainError("sampled pulse grid must be strictly increasing");
  validate(pump);
  double n = linear_norm(dk, amplitude);
  if (!(n > 0.0)) throw DomainError("sampled pulse envelope vanishes");
  double s = 1.0 / std::sqrt(n);
  for (auto& a : amplitude) a *= s;
  return PumpPulse(SampledShape{std::move(dk), std::move(amplitude), detuning}, energy, pump);
}

double PumpPulse::detuning() const {
  return std::visit([](const auto& s) { return s.detuning; }, shape_);
}

double PumpPulse::photon_number() const { return energy_ / (constants::hbar * omega0()); }

cd PumpPulse::envelope_offset(double dk) const {
  if (const auto* g = std::get_if<GaussianShape>(&shape_)) {
    const double tv = g->fwhm * group_velocity_;
    const double amp = std::pow(tv * tv / (8.0 * ln2 * constants::pi), 0.25);
    const double x = dk - g->detuning / group_velocity_;
    return amp * std::exp(-tv * tv * x * x / (16.0 * ln2));
  }
  const auto& s = std::get<SampledShape>(shape_);
  if (dk < s.dk.front() || dk > s.dk.back()) return 0.0;
  auto it = std::upper_bound(s.dk.begin(), s.dk.end(), dk);
  std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - s.dk.begin()), s.dk.size() - 1);
  std::size_t lo = hi - 1;
  double t = (dk - s.dk[lo]) / (s.dk[hi] - s.dk[lo]);
  return (1.0 - t) * s.amplitude[lo] + t * s.amplitude[hi];
}

double PumpPulse::norm() const {
  if (const auto* g = std::get_if<GaussianShape>(&shape_)) {
    const double centre = g->detuning / group_velocity_;
    const double width = 2.0 * std::sqrt(ln2) / (g->fwhm * group_velocity_);
    const std::array<double, 3> pts{centre - 40.0 * width, centre, centre + 40.0 * width};
    auto r = numerics::adaptive_quad([&](double dk) { return std::norm(envelope_offset(dk)); },
                                     std::span<const double>(pts), numerics::Tolerance{1e-300, 1e-13, 2000});
    return r.value;
  }
  const auto& s = std::get<SampledShape>(shape_);
  return linear_norm(s.dk, s.amplitude);
}

PumpPulse PumpPulse::with_energy(double energy) const {
  if (energy < 0.0) throw DomainError("pulse energy must be non-negative");
  PumpPulse out = *this;
  out.energy_ = energy;
  if (auto* g = std::get_if<GaussianShape>(&out.shape_)) g->peak_power = energy / gaussian_pulse_energy(g->fwhm, 1.0);
  return out;
}

namespace {

struct KernelContext {
  const ResonantTriple& t;
  double kbar;
  double prefactor;  // (n pi i sqrt(N_P) / (v_P hbar)) sqrt(hbar^3 wP wS wI / (4 pi)^3) kbar, sans i
  double base;       // omega_P - omega_S - omega_I
};

KernelContext make_context(const ResonantTriple& t, const NonlinearCoupling& coupling, const PumpPulse& pulse,
                           bool degenerate) {
  check_matched(t, coupling);
  const double hbar = constants::hbar;
  const double vp = t.pump.group_velocity.actual;
  const double kbar = degenerate ? coupling.degenerate_kbar() : coupling.kbar;
  const double wi = degenerate ? t.signal.omega : t.idler.omega;
  const double k = std::sqrt(hbar * hbar * hbar * t.pump.omega * t.signal.omega * wi / std::pow(4.0 * constants::pi, 3));
  const double lead = (degenerate ? 4.0 : 2.0) * constants::pi * std::sqrt(pulse.photon_number()) / (vp * hbar);
  return {t, kbar, lead * k * kbar, (t.pump.omega - t.signal.omega) - wi};
}

// Kernel from pre-computed signal/idler factors and frequency offsets.
cd kernel(const KernelContext& ctx, const PumpPulse& pulse, cd fs, cd fi, double d1, double d2) {
  const double pump_offset = ctx.base - (d1 + d2);
  cd fp = enhancement_at_offset(ctx.t.pump, ctx.t.ring, Channel::actual, Sign::minus, pump_offset);
  cd env = pulse.envelope_offset(-pump_offset / ctx.t.pump.group_velocity.actual);
  return cd(0.0, ctx.prefactor) * std::conj(fs * fi) * fp * env;
}

}  // namespace

cd jsa(const ResonantTriple& t, const NonlinearCoupling& coupling, const PumpPulse& pulse, Channel l1, Channel l2,
       double k1, double k2) {
  auto ctx = make_context(t, coupling, pulse, false);
  const double d1 = t.signal.group_velocity[l1] * (k1 - t.signal.center_wavenumber[l1]);
  const double d2 = t.idler.group_velocity[l2] * (k2 - t.idler.center_wavenumber[l2]);
  return kernel(ctx, pulse, enhancement(t.signal, t.ring, l1, Sign::plus, k1),
                enhancement(t.idler, t.ring, l2, Sign::plus, k2), d1, d2);
}

cd jsa_degenerate(const ResonantTriple& t, const NonlinearCoupling& coupling, const PumpPulse& pulse, Channel l1,
                  Channel l2, double k1, double k2) {
  if (t.signal.mode_number != t.idler.mode_number) throw DomainError("degenerate kernel needs signal = idler");
  auto ctx = make_context(t, coupling, pulse, true);
  const auto& s = t.signal;
  const double d1 = s.group_velocity[l1] * (k1 - s.center_wavenumber[l1]);
  const double d2 = s.group_velocity[l2] * (k2 - s.center_wavenumber[l2]);
  return kernel(ctx, pulse, enhancement(s, t.ring, l1, Sign::plus, k1), enhancement(s, t.ring, l2, Sign::plus, k2),
                d1, d2);
}

ChannelPairs<double> JsaGrid::beta_squared_by_channel() const {
  ChannelPairs<double> out;
  for (Channel a : channels)
    for (Channel b : channels) out(a, b) = beta * beta * phi(a, b).squaredNorm() * dk1 * dk2;
  return out;
}

double JsaGrid::norm() const {
  double s = 0.0;
  for (Channel a : channels)
    for (Channel b : channels) s += phi(a, b).squaredNorm();
  return s * dk1 * dk2;
}

namespace {

std::vector<double> axis(const ResonanceMode& mode, const GridSpec& spec, double& dk) {
  if (spec.points < 1) throw DomainError("grid needs at least one point per axis");
  if (!(spec.half_width > 0.0)) throw DomainError("grid half-width must be positive");
  const double half = spec.half_width * decay_rates(mode).total / mode.group_velocity.actual;
  dk = 2.0 * half / spec.points;
  std::vector<double> k(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i) k[static_cast<std::size_t>(i)] = mode.center_wavenumber.actual - half + (i + 0.5) * dk;
  return k;
}

struct AxisFactors {
  std::vector<cd> f;
  std::vector<double> offset;
};

AxisFactors axis_factors(const ResonanceMode& mode, const RingGeometry& ring, Channel c, const std::vector<double>& k) {
  AxisFactors out;
  for (double kv : k) {
    out.f.push_back(enhancement(mode, ring, c, Sign::plus, kv));
    out.offset.push_back(mode.group_velocity[c] * (kv - mode.center_wavenumber[c]));
  }
  return out;
}

JsaGrid fill_grid(const ResonantTriple& t, const KernelContext& ctx, const PumpPulse& pulse,
                  const ResonanceMode& second, std::vector<double> k1, double dk1, std::vector<double> k2, double dk2,
                  bool degenerate) {
  JsaGrid g;
  g.degenerate = degenerate;
  g.pump_photons = pulse.photon_number();
  g.dk1 = dk1;
  g.dk2 = dk2;
  const auto n1 = static_cast<Eigen::Index>(k1.size());
  const auto n2 = static_cast<Eigen::Index>(k2.size());
  double total = 0.0;
  for (Channel a : channels) {
    auto fa = axis_factors(t.signal, t.ring, a, k1);
    for (Channel b : channels) {
      auto fb = axis_factors(second, t.ring, b, k2);
      MatrixXcd m(n1, n2);
      for (Eigen::Index j = 0; j < n2; ++j)
        for (Eigen::Index i = 0; i < n1; ++i) {
          auto ui = static_cast<std::size_t>(i);
          auto uj = static_cast<std::size_t>(j);
          m(i, j) = kernel(ctx, pulse, fa.f[ui], fb.f[uj], fa.offset[ui], fb.offset[uj]);
        }
      total += m.squaredNorm();
      g.phi(a, b) = std::move(m);
    }
  }
  g.beta = std::sqrt(total * dk1 * dk2);
  if (g.beta > 0.0)
    for (Channel a : channels)
      for (Channel b : channels) g.phi(a, b) /= g.beta;
  g.k1 = std::move(k1);
  g.k2 = std::move(k2);
  return g;
}

}  // namespace

JsaGrid build_jsa_grid(const ResonantTriple& t, const NonlinearCoupling& coupling, const PumpPulse& pulse,
                       const GridSpec& spec) {
  auto ctx = make_context(t, coupling, pulse, false);
  double dk1 = 0.0, dk2 = 0.0;
  auto k1 = axis(t.signal, spec, dk1);
  auto k2 = axis(t.idler, spec, dk2);
  return fill_grid(t, ctx, pulse, t.idler, std::move(k1), dk1, std::move(k2), dk2, false);
}

JsaGrid build_degenerate_jsa_grid(const ResonantTriple& t, const NonlinearCoupling& coupling, const PumpPulse& pulse,
                                  const GridSpec& spec) {
  if (t.signal.mode_number != t.idler.mode_number) throw DomainError("degenerate grid needs signal = idler");
  auto ctx = make_context(t, coupling, pulse, true);
  double dk = 0.0;
  auto k = axis(t.signal, spec, dk);
  auto k_copy = k;
  return fill_grid(t, ctx, pulse, t.signal, std::move(k), dk, std::move(k_copy), dk, true);
}

MatrixXcd assemble_blocks(const ChannelPairs<MatrixXcd>& b, double scale) {
  const auto& aa = b(Channel::actual, Channel::actual);
  const auto& ap = b(Channel::actual, Channel::phantom);
  const auto& pa = b(Channel::phantom, Channel::actual);
  const auto& pp = b(Channel::phantom, Channel::phantom);
  const auto r = aa.rows(), c = aa.cols();
  for (const MatrixXcd* m : {&ap, &pa, &pp})
    if (m->rows() != r || m->cols() != c) throw DomainError("channel blocks have mismatched shapes");
  MatrixXcd j(2 * r, 2 * c);
  j.topLeftCorner(r, c) = scale * aa;
  j.topRightCorner(r, c) = scale * ap;
  j.bottomLeftCorner(r, c) = scale * pa;
  j.bottomRightCorner(r, c) = scale * pp;
  return j;
}

MatrixXcd build_squeezing_matrix(const JsaGrid& g) {
  return assemble_blocks(g.phi, g.beta * std::sqrt(g.dk1 * g.dk2));
}

double photon_number(const VectorXd& r) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) s += std::pow(std::sinh(r(i)), 2);
  return s;
}

double schmidt_number(const VectorXd& r) {
  double s2 = 0.0, s4 = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    double v = std::pow(std::sinh(r(i)), 2);
    s2 += v;
    s4 += v * v;
  }
  return s4 > 0.0 ? s2 * s2 / s4 : 1.0;
}

double schmidt_number_pair_regime(const VectorXd& r) {
  double s2 = 0.0, s4 = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    double v = r(i) * r(i);
    s2 += v;
    s4 += v * v;
  }
  return s4 > 0.0 ? s2 * s2 / s4 : 1.0;
}

namespace {

void fill_scalars(SqueezeResult& out) {
  out.photon_number = photon_number(out.r);
  out.schmidt_number = schmidt_number(out.r);
  out.vacuum = !(out.photon_number > 0.0);
}

VectorXd padded(const VectorXd& v, Eigen::Index n) {
  VectorXd out = VectorXd::Zero(n);
  out.head(std::min(n, v.size())) = v.head(std::min(n, v.size()));
  return out;
}

}  // namespace

SqueezeResult schmidt_decompose(const MatrixXcd& j, double pump_photons, const DecomposeOptions& options) {
  SqueezeResult out;
  out.pump_photons = pump_photons;
  out.beta_squared = j.squaredNorm();
  if (!options.vectors) {
    out.r = numerics::singular_values(j);
    fill_scalars(out);
    return out;
  }
  auto d = numerics::svd(j);
  out.r = d.sigma;
  out.f_signal = d.u;
  out.f_idler = d.v.conjugate();
  fill_scalars(out);
  const auto m = j.rows(), n = j.cols();
  MatrixXcd rect = MatrixXcd::Zero(m, n);
  for (Eigen::Index i = 0; i < out.r.size(); ++i) rect(i, i) = out.r(i);
  double jn = j.norm();
  out.reconstruction_error = jn > 0.0 ? (j - out.f_signal * rect * out.f_idler.transpose()).norm() / jn : 0.0;
  if (options.moments) {
    VectorXd sinh2(out.r.size()), cs(out.r.size());
    for (Eigen::Index i = 0; i < out.r.size(); ++i) {
      sinh2(i) = std::pow(std::sinh(out.r(i)), 2);
      cs(i) = std::cosh(out.r(i)) * std::sinh(out.r(i));
    }
    out.n_signal = out.f_signal * padded(sinh2, m).asDiagonal() * out.f_signal.adjoint();
    out.n_idler = out.f_idler * padded(sinh2, n).asDiagonal() * out.f_idler.adjoint();
    MatrixXcd c = MatrixXcd::Zero(m, n);
    for (Eigen::Index i = 0; i < cs.size(); ++i) c(i, i) = cs(i);
    out.m_si = out.f_signal * c * out.f_idler.transpose();
  }
  return out;
}

SqueezeResult takagi_decompose(const MatrixXcd& j_hat, double pump_photons, const DecomposeOptions& options) {
  SqueezeResult out;
  out.degenerate = true;
  out.pump_photons = pump_photons;
  out.beta_squared = j_hat.squaredNorm();
  if (j_hat.rows() != j_hat.cols()) throw DomainError("degenerate squeezing matrix must be square");
  double asym = numerics::asymmetry(j_hat);
  if (asym > 1e-12) throw DomainError("degenerate squeezing matrix is not symmetric; kernel assembly is inconsistent");
  const MatrixXcd sym = 0.5 * (j_hat + j_hat.transpose());
  if (!options.vectors) {
    out.r = numerics::singular_values(sym);
    fill_scalars(out);
    return out;
  }
  auto t = numerics::takagi(sym);
  out.r = t.r;
  out.f_signal = t.f;
  out.f_idler = t.f;
  fill_scalars(out);
  double jn = j_hat.norm();
  out.reconstruction_error = jn > 0.0 ? (j_hat - t.f * t.r.asDiagonal() * t.f.transpose()).norm() / jn : 0.0;
  if (options.moments) {
    VectorXd sinh2(t.r.size()), cs(t.r.size());
    for (Eigen::Index i = 0; i < t.r.size(); ++i) {
      sinh2(i) = std::pow(std::sinh(t.r(i)), 2);
      cs(i) = std::cosh(t.r(i)) * std::sinh(t.r(i));
    }
    out.n_signal = t.f * sinh2.asDiagonal() * t.f.adjoint();
    out.n_idler = out.n_signal;
    out.m_si = t.f * cs.asDiagonal() * t.f.transpose();
  }
  return out;
}

namespace {

template <class Build, class Decompose>
PulsedSolution refine(Build&& build, Decompose&& decompose, const RefinementPolicy& policy,
                      const DecomposeOptions& options) {
  if (policy.max_points < policy.grid.points) throw DomainError("max grid points below the initial grid");
  if (!(policy.tolerance > 0.0)) throw DomainError("refinement tolerance must be positive");
  GridSpec spec = policy.grid;
  PulsedSolution sol;
  bool have_previous = false;
  double prev_n = 0.0, prev_k = 0.0;
  while (true) {
    JsaGrid grid = build(spec);
    SqueezeResult coarse = decompose(grid, DecomposeOptions{false, false});
    sol.grid = std::move(grid);
    sol.squeeze = std::move(coarse);
    sol.points = spec.points;
    if (have_previous) {
      sol.photon_change = relative_change(sol.squeeze.photon_number, prev_n);
      sol.schmidt_change = relative_change(sol.squeeze.schmidt_number, prev_k);
      if (sol.photon_change < policy.tolerance && sol.schmidt_change < policy.tolerance) {
        sol.converged = true;
        break;
      }
    }
    if (2 * spec.points > policy.max_points) break;
    prev_n = sol.squeeze.photon_number;
    prev_k = sol.squeeze.schmidt_number;
    have_previous = true;
    spec.points *= 2;
  }
  const double b = sol.grid.beta;
  sol.unit_spectrum = b > 0.0 ? VectorXd(sol.squeeze.r / b) : VectorXd::Zero(sol.squeeze.r.size());
  if (options.vectors) sol.squeeze = decompose(sol.grid, options);
  return sol;
}

}  // namespace

PulsedSolution solve_pulsed(const ResonantTriple& t, const NonlinearCoupling& coupling, const PumpPulse& pulse,
                            const RefinementPolicy& policy, const DecomposeOptions& options) {
  return refine([&](const GridSpec& s) { return build_jsa_grid(t, coupling, pulse, s); },
                [](const JsaGrid& g, const DecomposeOptions& o) {
                  return schmidt_decompose(build_squeezing_matrix(g), g.pump_photons, o);
                },
                policy, options);
}

PulsedSolution solve_pulsed_degenerate(const ResonantTriple& t, const NonlinearCoupling& coupling,
                                       const PumpPulse& pulse, const RefinementPolicy& policy,
                                       const DecomposeOptions& options) {
  return refine([&](const GridSpec& s) { return build_degenerate_jsa_grid(t, coupling, pulse, s); },
                [](const JsaGrid& g, const DecomposeOptions& o) {
                  return takagi_decompose(build_squeezing_matrix(g), g.pump_photons, o);
                },
                policy, options);
}

PairProbabilities beta_squared(const ResonantTriple& t, const NonlinearCoupling& coupling, const PumpPulse& pulse,
                               const RefinementPolicy& policy) {
  auto sol = solve_pulsed(t, coupling, pulse, policy);
  if (!sol.converged)
    throw ConvergenceError("pulsed grid did not converge at " + std::to_string(sol.points) +
                           " points per axis: photon-number change " + std::to_string(sol.photon_change) +
                           ", Schmidt-number change " + std::to_string(sol.schmidt_change));
  PairProbabilities out;
  out.by_channel = sol.grid.beta_squared_by_channel();
  out.total = sol.grid.beta_squared();
  const double np = pulse.photon_number();
  out.efficiency = np > 0.0 ? out.total / np : 0.0;
  return out;
}

std::vector<EnergyPoint> energy_sweep(const PulsedSolution& sol, const PumpPulse& pulse,
                                      std::span<const double> energies) {
  if (!(pulse.energy() > 0.0)) throw DomainError("energy sweep needs a solved pulse with positive energy");
  const double beta2_unit = sol.grid.beta_squared() / pulse.energy();
  const bool degenerate = sol.grid.degenerate;
  std::vector<EnergyPoint> out;
  for (double e : energies) {
    if (e < 0.0) throw DomainError("pulse energy must be non-negative");
    EnergyPoint p;
    p.energy = e;
    const double b2 = beta2_unit * e;
    VectorXd r = std::sqrt(b2) * sol.unit_spectrum;
    const double photons = photon_number(r);
    p.beta_squared = degenerate ? 0.5 * b2 : b2;
    p.pairs = degenerate ? 0.5 * photons : photons;
    p.schmidt_number = schmidt_number(r);
    const double np = e / (constants::hbar * pulse.omega0());
    p.efficiency_pair_regime = np > 0.0 ? p.beta_squared / np : 0.0;
    p.efficiency_los = np > 0.0 ? p.pairs / np : 0.0;
    p.beyond_los_validity = p.ratio() > 1.5;
    out.push_back(p);
  }
  return out;
}

}  // namespace ringpairs
