#include "ringpairs/numerics/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "ringpairs/error.hpp"

namespace ringpairs::numerics {

namespace {

void require_finite(const ComplexMatrix& a) {
  if (!a.allFinite()) throw DomainError("matrix has non-finite entries");
}

// Singular values closer than this fraction of the largest one are grouped,
// so that the singular subspaces handed to the Takagi step are well defined.
constexpr double cluster_gap = 1e-4;

// Takagi factor of a small complex symmetric block through the real symmetric
// embedding [[Re B, Im B], [Im B, -Re B]]; its positive eigenpairs (x; y)
// give Takagi vectors x + iy.
void takagi_block(const ComplexMatrix& b, ComplexMatrix& w, RealVector& r) {
  const Eigen::Index k = b.rows();
  Eigen::MatrixXd m(2 * k, 2 * k);
  m.topLeftCorner(k, k) = b.real();
  m.topRightCorner(k, k) = b.imag();
  m.bottomLeftCorner(k, k) = b.imag();
  m.bottomRightCorner(k, k) = -b.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver failed in takagi");
  w.resize(k, k);
  r.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::Index col = 2 * k - 1 - j;
    r(j) = std::max(0.0, eig.eigenvalues()(col));
    w.col(j).real() = eig.eigenvectors().col(col).head(k);
    w.col(j).imag() = eig.eigenvectors().col(col).tail(k);
  }
}

}  // namespace

SvdResult svd(const ComplexMatrix& a) {
  require_finite(a);
  if (a.size() == 0)
    return {ComplexMatrix::Identity(a.rows(), a.rows()), RealVector(0),
            ComplexMatrix::Identity(a.cols(), a.cols())};
  Eigen::BDCSVD<ComplexMatrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "SVD failed for a " << a.rows() << "x" << a.cols() << " matrix with Frobenius norm "
        << a.norm();
    throw ConvergenceError(msg.str());
  }
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

RealVector singular_values(const ComplexMatrix& a) {
  require_finite(a);
  if (a.size() == 0) return RealVector(0);
  Eigen::BDCSVD<ComplexMatrix> dec(a);
  if (dec.info() != Eigen::Success) throw ConvergenceError("SVD failed");
  return dec.singularValues();
}

double asymmetry(const ComplexMatrix& a) {
  double n = a.norm();
  if (n == 0.0) return 0.0;
  return (a - a.transpose()).norm() / n;
}

TakagiResult takagi(const ComplexMatrix& a, double symmetry_tolerance) {
  if (a.rows() != a.cols()) throw DomainError("takagi needs a square matrix");
  require_finite(a);
  const Eigen::Index n = a.rows();
  if (n == 0) return {ComplexMatrix(0, 0), RealVector(0)};
  double asym = asymmetry(a);
  if (asym > symmetry_tolerance) {
    std::ostringstream msg;
    msg << "matrix is not symmetric: relative asymmetry " << asym;
    throw DomainError(msg.str());
  }
  if (a.norm() == 0.0) return {ComplexMatrix::Identity(n, n), RealVector::Zero(n)};

  const ComplexMatrix s = 0.5 * (a + a.transpose());
  SvdResult d = svd(s);
  const double smax = d.sigma(0);
  const double zero_cut = 16.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * smax;

  ComplexMatrix f(n, n);
  RealVector r(n);
  Eigen::Index i = 0;
  while (i < n) {
    if (d.sigma(i) <= zero_cut) {
      // Numerically null part: any orthonormal completion works.
      f.rightCols(n - i) = d.u.rightCols(n - i);
      r.tail(n - i) = d.sigma.tail(n - i);
      break;
    }
    Eigen::Index j = i + 1;
    while (j < n && d.sigma(j) > zero_cut && d.sigma(j - 1) - d.sigma(j) <= cluster_gap * smax) ++j;
    const Eigen::Index k = j - i;
    const auto uc = d.u.middleCols(i, k);
    if (k == 1) {
      // u^H S conj(u) is a unimodular multiple of sigma; absorb half its phase.
      std::complex<double> z = (uc.adjoint() * s * uc.conjugate())(0, 0);
      double phase = std::arg(z);
      f.col(i) = uc * std::polar(1.0, 0.5 * phase);
      r(i) = std::abs(z);
    } else {
      ComplexMatrix b = uc.adjoint() * s * uc.conjugate();
      b = 0.5 * (b + b.transpose()).eval();
      ComplexMatrix w;
      RealVector rc;
      takagi_block(b, w, rc);
      f.middleCols(i, k) = uc * w;
      r.segment(i, k) = rc;
    }
    i = j;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return r(x) > r(y); });
  TakagiResult out{ComplexMatrix(n, n), RealVector(n)};
  for (Eigen::Index c = 0; c < n; ++c) {
    out.f.col(c) = f.col(order[static_cast<std::size_t>(c)]);
    out.r(c) = r(order[static_cast<std::size_t>(c)]);
  }
  return out;
}

}  // namespace ringpairs::numerics
