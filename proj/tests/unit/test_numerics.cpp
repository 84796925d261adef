#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fixtures.hpp"
#include "ringpairs/error.hpp"
#include "ringpairs/numerics/interpolation.hpp"
#include "ringpairs/numerics/linalg.hpp"
#include "ringpairs/numerics/quadrature.hpp"
#include "ringpairs/numerics/roots.hpp"

using namespace ringpairs;
using namespace ringpairs::numerics;
using Eigen::MatrixXcd;
using Eigen::VectorXd;
using cd = std::complex<double>;

namespace {

double unitary_defect(const MatrixXcd& u) {
  return (u.adjoint() * u - MatrixXcd::Identity(u.cols(), u.cols())).norm();
}

double takagi_residual(const MatrixXcd& a, const TakagiResult& t) {
  return (a - t.f * t.r.asDiagonal() * t.f.transpose()).norm() / a.norm();
}

}  // namespace

TEST(Tolerance, RejectsNonPositiveFields) {
  EXPECT_THROW((Tolerance{0.0, 1e-8, 10}.validate()), DomainError);
  EXPECT_THROW((Tolerance{1e-12, -1.0, 10}.validate()), DomainError);
  EXPECT_THROW((Tolerance{1e-12, 1e-8, 0}.validate()), DomainError);
  EXPECT_NO_THROW(Tolerance{}.validate());
}

TEST(Quadrature, Polynomial) {
  auto r = adaptive_quad([](double x) { return x * x; }, 0.0, 1.0, Tolerance{});
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-15);
  EXPECT_LE(r.error, 1e-10);
}

TEST(Quadrature, ReversedAndEmptyIntervals) {
  auto f = [](double x) { return std::exp(x); };
  EXPECT_NEAR(adaptive_quad(f, 1.0, 0.0, Tolerance{}).value, 1.0 - std::exp(1.0), 1e-13);
  EXPECT_EQ(adaptive_quad(f, 2.0, 2.0, Tolerance{}).value, 0.0);
}

TEST(Quadrature, LorentzianMatchesArctan) {
  const double gamma = 2.0 * fixtures::two_pi * 196.6e6;
  const double v = fixtures::v_bar;
  const double half = 50.0 * gamma / v;
  auto f = [&](double dk) { return gamma / constants::pi / (std::pow(v * dk, 2) + gamma * gamma) * v; };
  const std::array<double, 3> pts{-half, 0.0, half};
  auto r = adaptive_quad(f, std::span<const double>(pts), Tolerance{1e-300, 1e-12, 2000});
  const double exact = 2.0 / constants::pi * std::atan(50.0);
  EXPECT_NEAR(r.value, exact, 1e-11);
  EXPECT_NEAR(1.0 - r.value, 2.0 / (50.0 * constants::pi), 1e-5);
}

TEST(Quadrature, ComplexOscillatoryVanishesOverPeriod) {
  const double radius = 30e-6, length = 2.0 * constants::pi * radius;
  for (int n : {1, 2, 5, 13, -7}) {
    auto r = adaptive_quad([&](double z) { return std::exp(cd(0.0, n * z / radius)); }, 0.0, length,
                           Tolerance{1e-12 * length, 1e-12, 2000});
    EXPECT_LT(std::abs(r.value), 1e-9 * length) << n;
  }
}

TEST(Quadrature, ReportsWorstSubintervalOnFailure) {
  try {
    adaptive_quad([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)) + std::sin(1e4 * x); }, 0.0, 1.0,
                  Tolerance{1e-300, 1e-15, 20});
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("worst subinterval"), std::string::npos);
  }
}

TEST(Quadrature, RejectsNonIncreasingBreakpoints) {
  const std::array<double, 3> pts{0.0, 1.0, 1.0};
  EXPECT_THROW(adaptive_quad([](double x) { return x; }, std::span<const double>(pts), Tolerance{}), DomainError);
}

TEST(Roots, FindsBracketedRoot) {
  auto r = find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0, Tolerance{1e-300, 1e-15, 100});
  EXPECT_NEAR(r.root, 0.7390851332151607, 1e-15);
}

TEST(Roots, UnbracketedThrows) {
  EXPECT_THROW(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, Tolerance{}), DomainError);
}

TEST(Roots, GoldenSection) {
  double x = golden_section_minimum([](double t) { return (t - 0.3) * (t - 0.3); }, -1.0, 2.0,
                                    Tolerance{1e-300, 1e-12, 500});
  EXPECT_NEAR(x, 0.3, 1e-7);
}

TEST(MonotoneCubic, ExactAtNodesAndShapePreserving) {
  std::vector<double> x{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> y{0.0, 0.1, 0.2, 2.0, 2.1, 2.2};
  MonotoneCubic p(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_DOUBLE_EQ(p(x[i]), y[i]);
  double prev = p(0.0);
  for (int i = 1; i <= 500; ++i) {
    double v = p(5.0 * i / 500.0);
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
  EXPECT_THROW(p(5.5), RangeError);
}

TEST(MonotoneCubic, DerivativeOfLinearData) {
  std::vector<double> x{1.0, 2.0, 4.0, 7.0, 8.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v - 1.0);
  MonotoneCubic p(x, y);
  EXPECT_NEAR(p(5.5), 15.5, 1e-12);
  EXPECT_NEAR(p.derivative(3.3), 3.0, 1e-12);
}

TEST(MonotoneCubic, NeedsFourPoints) {
  EXPECT_THROW(MonotoneCubic({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}), DomainError);
}

TEST(Svd, Identity) {
  auto d = svd(MatrixXcd::Identity(5, 5));
  EXPECT_LT((d.sigma - VectorXd::Ones(5)).norm(), 1e-15);
}

TEST(Svd, Diagonal) {
  MatrixXcd a = MatrixXcd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = cd(0.0, 3.0);
  auto d = svd(a);
  EXPECT_NEAR(d.sigma(0), 3.0, 1e-15);
  EXPECT_NEAR(d.sigma(1), 1.0, 1e-15);
}

TEST(Svd, RandomMatchesGramEigenvalues) {
  MatrixXcd a = fixtures::random_matrix(50, 50, 11);
  auto d = svd(a);
  EXPECT_LT(unitary_defect(d.u), 1e-12);
  EXPECT_LT(unitary_defect(d.v), 1e-12);
  EXPECT_LT((a - d.u * d.sigma.asDiagonal() * d.v.adjoint()).norm() / a.norm(), 1e-10);
  for (Eigen::Index i = 1; i < d.sigma.size(); ++i) EXPECT_GE(d.sigma(i - 1), d.sigma(i));
  EXPECT_GE(d.sigma.minCoeff(), 0.0);

  Eigen::SelfAdjointEigenSolver<MatrixXcd> gram(a.adjoint() * a);
  VectorXd ev = gram.eigenvalues().reverse();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    EXPECT_NEAR(d.sigma(i) * d.sigma(i), ev(i), 1e-10 * ev(0)) << i;
}

TEST(Svd, RectangularValuesOnly) {
  MatrixXcd a = fixtures::random_matrix(30, 12, 3);
  auto full = svd(a);
  auto values = singular_values(a);
  ASSERT_EQ(values.size(), 12);
  EXPECT_LT((full.sigma - values).norm(), 1e-12 * values(0));
  EXPECT_EQ(full.u.rows(), 30);
  EXPECT_EQ(full.u.cols(), 30);
  EXPECT_EQ(full.v.cols(), 12);
}

TEST(Svd, Deterministic) {
  MatrixXcd a = fixtures::random_matrix(20, 20, 5);
  auto d1 = svd(a);
  auto d2 = svd(a);
  EXPECT_EQ((d1.u - d2.u).norm(), 0.0);
  EXPECT_EQ((d1.sigma - d2.sigma).norm(), 0.0);
}

TEST(Takagi, PositiveDiagonal) {
  MatrixXcd a = MatrixXcd::Zero(3, 3);
  a(0, 0) = 0.5;
  a(1, 1) = 2.0;
  a(2, 2) = 1.0;
  auto t = takagi(a);
  EXPECT_NEAR(t.r(0), 2.0, 1e-15);
  EXPECT_NEAR(t.r(1), 1.0, 1e-15);
  EXPECT_NEAR(t.r(2), 0.5, 1e-15);
  // Columns are unit vectors up to a sign.
  for (Eigen::Index j = 0; j < 3; ++j) EXPECT_NEAR(t.f.col(j).cwiseAbs().maxCoeff(), 1.0, 1e-14);
  EXPECT_LT(takagi_residual(a, t), 1e-14);
}

TEST(Takagi, OffDiagonalPairIsDegenerate) {
  const double s = 0.7;
  MatrixXcd a = MatrixXcd::Zero(2, 2);
  a(0, 1) = a(1, 0) = s;
  auto t = takagi(a);
  EXPECT_NEAR(t.r(0), s, 1e-15);
  EXPECT_NEAR(t.r(1), s, 1e-15);
  EXPECT_LT(unitary_defect(t.f), 1e-13);
  EXPECT_LT(takagi_residual(a, t), 1e-13);
}

TEST(Takagi, RandomSymmetricMatchesSvd) {
  MatrixXcd a = fixtures::random_symmetric(40, 21);
  auto t = takagi(a);
  auto sigma = singular_values(a);
  EXPECT_LT((t.r - sigma).cwiseAbs().maxCoeff(), 1e-12 * sigma(0));
  EXPECT_LT(unitary_defect(t.f), 1e-12);
  EXPECT_LT(takagi_residual(a, t), 1e-10);
}

TEST(Takagi, RealSymmetricMatchesAbsoluteEigenvalues) {
  MatrixXcd a(2, 2);
  a << 0.3, 0.1, 0.1, 0.2;
  auto t = takagi(a);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(a.real());
  VectorXd expected = eig.eigenvalues().cwiseAbs();
  std::sort(expected.data(), expected.data() + 2, std::greater<>());
  EXPECT_NEAR(t.r(0), expected(0), 1e-15);
  EXPECT_NEAR(t.r(1), expected(1), 1e-15);
  EXPECT_LT(takagi_residual(a, t), 1e-12);
}

TEST(Takagi, NegativeEigenvalueNeedsPhase) {
  MatrixXcd a(2, 2);
  a << -1.0, 0.0, 0.0, 0.25;
  auto t = takagi(a);
  EXPECT_NEAR(t.r(0), 1.0, 1e-15);
  EXPECT_NEAR(t.r(1), 0.25, 1e-15);
  EXPECT_LT(takagi_residual(a, t), 1e-14);
}

TEST(Takagi, DegenerateClustersReconstruct) {
  // U diag(r) U^T with repeated values, including a zero block.
  const Eigen::Index n = 12;
  MatrixXcd u = fixtures::random_unitary(n, 8);
  VectorXd r(n);
  r << 3, 3, 3, 2, 2, 1, 0.5, 0.5, 0.5, 0.5, 0, 0;
  MatrixXcd a = u * r.asDiagonal() * u.transpose();
  a = 0.5 * (a + a.transpose()).eval();
  auto t = takagi(a);
  EXPECT_LT((t.r - r).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(unitary_defect(t.f), 1e-12);
  EXPECT_LT(takagi_residual(a, t), 1e-12);
}

TEST(Takagi, ScalesLinearly) {
  MatrixXcd a = fixtures::random_symmetric(15, 2);
  auto t1 = takagi(a);
  auto t2 = takagi(2.5 * a);
  EXPECT_LT((t2.r - 2.5 * t1.r).cwiseAbs().maxCoeff(), 1e-12 * t2.r(0));
}

TEST(Takagi, ZeroMatrix) {
  auto t = takagi(MatrixXcd::Zero(4, 4));
  EXPECT_EQ(t.r.size(), 4);
  EXPECT_EQ(t.r.norm(), 0.0);
  EXPECT_LT(unitary_defect(t.f), 1e-15);
}

TEST(Takagi, RejectsAsymmetricInput) {
  MatrixXcd a = fixtures::random_matrix(6, 6, 4);
  EXPECT_GT(asymmetry(a), 0.1);
  EXPECT_THROW(takagi(a), DomainError);
}
