#include "ringpairs/overlap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "csv_reader.hpp"
#include "ringpairs/error.hpp"

namespace ringpairs {

using cd = std::complex<double>;

void ModeProfile::validate() const {
  const std::size_t n = x.size() * z.size();
  if (x.size() < 2 || z.size() < 2) throw DomainError("mode profile grid needs at least 2x2 nodes");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw DomainError("profile x coordinates must be strictly increasing");
  for (std::size_t i = 1; i < z.size(); ++i)
    if (!(z[i] > z[i - 1])) throw DomainError("profile z coordinates must be strictly increasing");
  if (ex.size() != n || ey.size() != n || ez.size() != n || n_local.size() != n || ng_local.size() != n)
    throw DomainError("profile arrays do not match the grid size");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(n_local[i] > 0.0) || !(ng_local[i] > 0.0))
      throw DomainError("local refractive and group indices must be positive");
  }
  if (!(omega > 0.0)) throw DomainError("profile frequency must be positive");
}

ModeProfile read_mode_profile_csv(const std::filesystem::path& path, double omega) {
  auto table = detail::read_numeric_csv(
      path, {"x_nm", "z_nm", "Re_ex", "Im_ex", "Re_ey", "Im_ey", "Re_ez", "Im_ez", "n_local", "ng_local"});
  ModeProfile p;
  p.omega = omega;
  const auto& rows = table.rows;
  if (rows.empty()) throw IoError(path.string() + ": no profile rows");
  double x0 = rows.front()[0];
  for (const auto& r : rows) {
    if (r[0] != x0) break;
    p.z.push_back(r[1] * 1e-9);
  }
  const std::size_t nz = p.z.size();
  if (rows.size() % nz != 0) throw IoError(path.string() + ": profile is not a rectangular grid");
  const std::size_t nx = rows.size() / nz;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    double xv = rows[ix * nz][0];
    for (std::size_t iz = 0; iz < nz; ++iz) {
      const auto& r = rows[ix * nz + iz];
      if (r[0] != xv || r[1] * 1e-9 != p.z[iz])
        throw IoError(path.string() + ": rows must be ordered by x, then z, on a rectangular grid");
      p.ex.emplace_back(r[2], r[3]);
      p.ey.emplace_back(r[4], r[5]);
      p.ez.emplace_back(r[6], r[7]);
      p.n_local.push_back(r[8]);
      p.ng_local.push_back(r[9]);
    }
    p.x.push_back(xv * 1e-9);
  }
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return p;
}

bool covers_mode(const ModeProfile& p, double threshold) {
  double peak = 0.0, edge = 0.0;
  for (std::size_t ix = 0; ix < p.nx(); ++ix) {
    for (std::size_t iz = 0; iz < p.nz(); ++iz) {
      double v = p.intensity(p.index(ix, iz));
      peak = std::max(peak, v);
      if (ix == 0 || iz == 0 || ix + 1 == p.nx() || iz + 1 == p.nz()) edge = std::max(edge, v);
    }
  }
  return peak > 0.0 && edge <= threshold * peak;
}

namespace {

struct Bracket {
  std::size_t lo;
  double t;
};

Bracket locate(const std::vector<double>& g, double v) {
  const double slack = 1e-9 * (g.back() - g.front());
  if (v < g.front() - slack || v > g.back() + slack)
    throw DomainError("profile grids do not overlap: resampling would extrapolate");
  v = std::clamp(v, g.front(), g.back());
  auto it = std::upper_bound(g.begin(), g.end(), v);
  std::size_t hi = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - g.begin(), g.size() - 1));
  std::size_t lo = hi - 1;
  return {lo, (v - g[lo]) / (g[hi] - g[lo])};
}

template <class T>
T bilinear(const std::vector<T>& f, const ModeProfile& p, Bracket bx, Bracket bz) {
  auto at = [&](std::size_t ix, std::size_t iz) { return f[p.index(ix, iz)]; };
  return (1.0 - bx.t) * ((1.0 - bz.t) * at(bx.lo, bz.lo) + bz.t * at(bx.lo, bz.lo + 1)) +
         bx.t * ((1.0 - bz.t) * at(bx.lo + 1, bz.lo) + bz.t * at(bx.lo + 1, bz.lo + 1));
}

bool same_grid(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  const double scale = std::max(std::abs(a.back() - a.front()), 1e-300);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-9 * scale) return false;
  return true;
}

std::vector<double> trapezoid_weights(const std::vector<double>& g) {
  std::vector<double> w(g.size(), 0.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    double h = 0.5 * (g[i] - g[i - 1]);
    w[i - 1] += h;
    w[i] += h;
  }
  return w;
}

}  // namespace

ModeProfile resample(const ModeProfile& p, const std::vector<double>& x, const std::vector<double>& z) {
  p.validate();
  ModeProfile out;
  out.x = x;
  out.z = z;
  out.omega = p.omega;
  for (double xv : x) {
    Bracket bx = locate(p.x, xv);
    for (double zv : z) {
      Bracket bz = locate(p.z, zv);
      out.ex.push_back(bilinear(p.ex, p, bx, bz));
      out.ey.push_back(bilinear(p.ey, p, bx, bz));
      out.ez.push_back(bilinear(p.ez, p, bx, bz));
      out.n_local.push_back(bilinear(p.n_local, p, bx, bz));
      out.ng_local.push_back(bilinear(p.ng_local, p, bx, bz));
    }
  }
  out.validate();
  return out;
}

std::complex<double> v_pm(double delta_kappa, double radius, Sign sign) {
  if (!(radius > 0.0)) throw DomainError("ring radius must be positive");
  double q = radius * delta_kappa + sign_value(sign) * 2.0;
  double nearest = std::round(q);
  if (std::abs(q - nearest) > 1e-6)
    throw DomainError("R * delta_kappa must be an integer for resonant wavenumbers");
  return nearest == 0.0 ? cd(2.0 * constants::pi * radius, 0.0) : cd(0.0, 0.0);
}

std::complex<double> w_density(const cd* es, const cd* ei, const cd* ep, Sign sign) {
  // Components indexed x = 0, y = 1, z = 2; sums over distinct permutations.
  auto term = [&](int i, int j, int k) { return std::conj(es[i] * ei[j]) * ep[k]; };
  cd xyz = term(0, 1, 2) + term(0, 2, 1) + term(1, 0, 2) + term(1, 2, 0) + term(2, 0, 1) + term(2, 1, 0);
  cd xxz = term(0, 0, 2) + term(0, 2, 0) + term(2, 0, 0);
  cd yyz = term(1, 1, 2) + term(1, 2, 1) + term(2, 1, 1);
  // Fourier component exp(+-2i phi) of chi_xyz = cos 2phi, chi_xxz = -chi_yyz = sin 2phi.
  return xyz - static_cast<double>(sign_value(sign)) * cd(0.0, 1.0) * (xxz - yyz);
}

std::complex<double> w_pm(const ModeProfile& signal, const ModeProfile& idler, const ModeProfile& pump,
                          Sign sign) {
  signal.validate();
  const ModeProfile* ip = &idler;
  const ModeProfile* pp = &pump;
  ModeProfile idler_r, pump_r;
  if (!same_grid(idler.x, signal.x) || !same_grid(idler.z, signal.z)) {
    idler_r = resample(idler, signal.x, signal.z);
    ip = &idler_r;
  }
  if (!same_grid(pump.x, signal.x) || !same_grid(pump.z, signal.z)) {
    pump_r = resample(pump, signal.x, signal.z);
    pp = &pump_r;
  }
  ip->validate();
  pp->validate();
  const auto wx = trapezoid_weights(signal.x);
  const auto wz = trapezoid_weights(signal.z);
  cd total = 0.0;
  for (std::size_t ix = 0; ix < signal.nx(); ++ix) {
    cd row = 0.0;
    for (std::size_t iz = 0; iz < signal.nz(); ++iz) {
      std::size_t n = signal.index(ix, iz);
      std::array<cd, 3> es{signal.ex[n], signal.ey[n], signal.ez[n]};
      std::array<cd, 3> ei{ip->ex[n], ip->ey[n], ip->ez[n]};
      std::array<cd, 3> ep{pp->ex[n], pp->ey[n], pp->ez[n]};
      row += wz[iz] * w_density(es.data(), ei.data(), ep.data(), sign);
    }
    total += wx[ix] * row;
  }
  return total;
}

double mode_norm(const ModeProfile& p, const ModeReference& ref) {
  p.validate();
  const auto wx = trapezoid_weights(p.x);
  const auto wz = trapezoid_weights(p.z);
  double total = 0.0;
  for (std::size_t ix = 0; ix < p.nx(); ++ix) {
    for (std::size_t iz = 0; iz < p.nz(); ++iz) {
      std::size_t n = p.index(ix, iz);
      // (n / n_bar) / (v_g / v_bar) with v_g = c / n_g.
      double weight = (p.n_local[n] / ref.n_bar) * (ref.v_bar * p.ng_local[n] / constants::c);
      total += wx[ix] * wz[iz] * weight * p.intensity(n);
    }
  }
  if (!(total > 0.0) || !std::isfinite(total)) throw DomainError("mode normalisation is not positive");
  return total;
}

double effective_area(const ModeProfile& signal, const ModeProfile& idler, const ModeProfile& pump, Sign sign,
                      const ReferenceSet& refs) {
  for (const ModeProfile* p : {&signal, &idler, &pump})
    if (!covers_mode(*p)) throw DomainError("profile grid truncates the mode (edge intensity above 1e-6 of peak)");
  cd overlap = w_pm(signal, idler, pump, sign);
  double o2 = std::norm(overlap);
  double num = mode_norm(signal, refs.signal) * mode_norm(idler, refs.idler) * mode_norm(pump, refs.pump);
  if (!(o2 > 0.0) || !std::isfinite(o2)) throw DomainError("vanishing overlap: modes do not interact");
  return num / o2;
}

NonlinearCoupling kbar_matched(const Chi2Spec& chi, double radius, double a_eff, Sign sign,
                               const ReferenceSet& refs) {
  if (!(a_eff > 0.0)) throw DomainError("effective area must be positive");
  if (!(radius > 0.0)) throw DomainError("ring radius must be positive");
  if (chi.chi_bar < 0.0) throw DomainError("chi2 magnitude must be non-negative");
  const auto& s = refs.signal;
  const auto& i = refs.idler;
  const auto& p = refs.pump;
  double velocity = std::sqrt((s.v_bar * i.v_bar * p.v_bar) / (s.n_bar * i.n_bar * p.n_bar));
  double kbar = 2.0 * chi.chi_bar * constants::pi * radius /
                (std::sqrt(constants::epsilon0) * std::pow(constants::c, 1.5)) * velocity / std::sqrt(a_eff);
  return {kbar, sign, a_eff, chi.chi_bar, radius, refs};
}

}  // namespace ringpairs
