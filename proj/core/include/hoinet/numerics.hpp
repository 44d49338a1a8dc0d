#ifndef HOINET_NUMERICS_HPP
#define HOINET_NUMERICS_HPP

#include <Eigen/Dense>

#include "hoinet/errors.hpp"

namespace hoinet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Natural-log determinant of a symmetric positive definite matrix,
/// computed from a Cholesky factorization. The input must be symmetric
/// within 1e-8 relative tolerance; it is symmetrized before factoring.
/// Throws NotPositiveDefinite when a pivot is not strictly positive.
double log_det_pd(const Matrix& m);

/// Solves S = a*S*a' + q for S by the vectorized (Kronecker) linear
/// system of size n^2 x n^2. Requires spectral_radius(a) < 1 - 1e-6 and
/// symmetric q. The result is symmetrized as (S + S')/2.
Matrix solve_discrete_lyapunov(const Matrix& a, const Matrix& q);

/// Largest eigenvalue magnitude of a square matrix.
/// Throws NonConvergence if the eigensolver fails to converge.
double spectral_radius(const Matrix& a);

}  // namespace hoinet

#endif
