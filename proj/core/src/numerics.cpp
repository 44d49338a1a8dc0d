#include "hoinet/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace hoinet {

namespace {

constexpr double kSymmetryTol = 1e-8;

void require_square(const Matrix& m, const char* who) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw InvalidArgument(std::string(who) + ": matrix must be square and non-empty");
  }
}

void require_symmetric(const Matrix& m, const char* who) {
  require_square(m, who);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw InvalidArgument(std::string(who) + ": matrix is not symmetric (relative tolerance 1e-8)");
  }
}

}  // namespace

double log_det_pd(const Matrix& m) {
  require_symmetric(m, "log_det_pd");
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::LLT<Matrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("log_det_pd: factorization hit a non-positive pivot");
  }
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

Matrix solve_discrete_lyapunov(const Matrix& a, const Matrix& q) {
  require_square(a, "solve_discrete_lyapunov");
  require_symmetric(q, "solve_discrete_lyapunov");
  if (a.rows() != q.rows()) {
    throw DimensionMismatch("solve_discrete_lyapunov: a and q sizes differ");
  }
  const double rho = spectral_radius(a);
  if (!(rho < 1.0 - 1e-6)) {
    throw UnstableSystem("solve_discrete_lyapunov: spectral radius " + std::to_string(rho) +
                         " is not below 1 - 1e-6");
  }

  const Eigen::Index n = a.rows();
  // (I - a (x) a) vec(S) = vec(q), with column-major vec.
  Matrix sys = Matrix::Identity(n * n, n * n);
  for (Eigen::Index bc = 0; bc < n; ++bc) {
    for (Eigen::Index br = 0; br < n; ++br) {
      sys.block(br * n, bc * n, n, n) -= a(br, bc) * a;
    }
  }
  Eigen::Map<const Vector> rhs(q.data(), n * n);
  Eigen::PartialPivLU<Matrix> lu(sys);
  Vector vec_s = lu.solve(rhs);
  Matrix s = Eigen::Map<Matrix>(vec_s.data(), n, n);

  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  const double residual = (s - a * s * a.transpose() - q).cwiseAbs().maxCoeff();
  if (!std::isfinite(residual) || residual > 1e-8 * scale) {
    throw SingularSolve("solve_discrete_lyapunov: vectorized system is too ill-conditioned");
  }
  return 0.5 * (s + s.transpose());
}

double spectral_radius(const Matrix& a) {
  require_square(a, "spectral_radius");
  // Exactly nilpotent matrices (a^n == 0) defeat dense eigensolvers, which
  // report magnitudes near eps^(1/n) for defective spectra; detect them by
  // repeated squaring and report zero directly.
  const Eigen::Index n = a.rows();
  Matrix power = a;
  for (Eigen::Index doubled = 1; doubled < n; doubled *= 2) power = power * power;
  if ((power.array() == 0.0).all()) return 0.0;

  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NonConvergence("spectral_radius: eigensolver did not converge");
  }
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace hoinet
