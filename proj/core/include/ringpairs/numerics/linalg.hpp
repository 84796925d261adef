#pragma once

#include <Eigen/Dense>

namespace ringpairs::numerics {

using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// A = U diag(sigma) V^H with square unitary U, V and sigma descending.
struct SvdResult {
  ComplexMatrix u;
  RealVector sigma;
  ComplexMatrix v;
};

SvdResult svd(const ComplexMatrix& a);
RealVector singular_values(const ComplexMatrix& a);

// A = F diag(r) F^T for complex symmetric A, F unitary, r descending.
struct TakagiResult {
  ComplexMatrix f;
  RealVector r;
};

TakagiResult takagi(const ComplexMatrix& a, double symmetry_tolerance = 1e-12);

// ||A - A^T||_F / ||A||_F, zero for the zero matrix.
double asymmetry(const ComplexMatrix& a);

}  // namespace ringpairs::numerics
