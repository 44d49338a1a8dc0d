#include "hoinet/lagcov.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>

namespace hoinet {

void validate_subset(const SubsetIndex& subset, int n_nodes) {
  if (subset.empty()) throw InvalidArgument("subset must be non-empty");
  std::vector<bool> seen(static_cast<std::size_t>(n_nodes), false);
  for (int idx : subset) {
    if (idx < 0 || idx >= n_nodes) {
      throw InvalidArgument("subset index " + std::to_string(idx) + " out of range");
    }
    if (seen[static_cast<std::size_t>(idx)]) {
      throw InvalidArgument("subset has duplicate index " + std::to_string(idx));
    }
    seen[static_cast<std::size_t>(idx)] = true;
  }
}

LagCovarianceSet process_covariances(const VarModel& model, int max_lag) {
  validate(model);
  if (max_lag < model.order) {
    throw InvalidArgument("process_covariances: max_lag must be >= model order");
  }
  const int n = model.n_nodes;
  const int p = model.order;

  Matrix comp = companion_matrix(model);
  Matrix comp_cov = Matrix::Zero(n * p, n * p);
  comp_cov.topLeftCorner(n, n) = model.innovation_cov;
  const Matrix stacked = solve_discrete_lyapunov(comp, comp_cov);

  // First block row of the stacked covariance holds lags 0..p-1.
  std::vector<Matrix> sigmas(static_cast<std::size_t>(max_lag) + 1);
  for (int k = 0; k < p; ++k) {
    sigmas[static_cast<std::size_t>(k)] = stacked.block(0, k * n, n, n);
  }
  sigmas[0] = 0.5 * (sigmas[0] + sigmas[0].transpose());

  for (int k = p; k <= max_lag; ++k) {
    Matrix s = Matrix::Zero(n, n);
    for (int l = 1; l <= p; ++l) {
      s.noalias() += model.coeffs[static_cast<std::size_t>(l - 1)] * sigmas[static_cast<std::size_t>(k - l)];
    }
    sigmas[static_cast<std::size_t>(k)] = std::move(s);
  }
  return LagCovarianceSet{n, max_lag, std::move(sigmas)};
}

RestrictedModel restricted_model(const LagCovarianceSet& covs, const SubsetIndex& subset,
                                 int max_lag, double ridge) {
  validate_subset(subset, covs.n_nodes);
  if (max_lag < 1 || max_lag > covs.max_lag) {
    throw InvalidArgument("restricted_model: max_lag must lie in [1, covs.max_lag]");
  }
  if (ridge < 0.0) throw InvalidArgument("restricted_model: ridge must be >= 0");

  const int m = static_cast<int>(subset.size());
  const int q = max_lag;

  std::vector<Matrix> sub(static_cast<std::size_t>(q) + 1);
  for (int k = 0; k <= q; ++k) {
    sub[static_cast<std::size_t>(k)] = covs.sigmas[static_cast<std::size_t>(k)](subset, subset);
  }

  // Block-Toeplitz covariance of the stacked past [y_{n-1}; ...; y_{n-q}]:
  // block (r, c) = E[y_{n-1-r} y_{n-1-c}'] = sub[c-r] (transposed below the
  // diagonal), and the present/past cross blocks are sub[1..q].
  Matrix predictor(m * q, m * q);
  for (int r = 0; r < q; ++r) {
    for (int c = 0; c < q; ++c) {
      if (c >= r) {
        predictor.block(r * m, c * m, m, m) = sub[static_cast<std::size_t>(c - r)];
      } else {
        predictor.block(r * m, c * m, m, m) = sub[static_cast<std::size_t>(r - c)].transpose();
      }
    }
  }
  if (ridge > 0.0) predictor.diagonal().array() += ridge;

  Matrix cross(m, m * q);
  for (int c = 0; c < q; ++c) {
    cross.block(0, c * m, m, m) = sub[static_cast<std::size_t>(c + 1)];
  }

  Eigen::LLT<Matrix> llt(predictor);
  if (llt.info() != Eigen::Success) {
    throw SingularSolve("restricted_model: predictor covariance is not positive definite");
  }
  const auto diag = llt.matrixLLT().diagonal();
  const double ratio = diag.maxCoeff() / diag.minCoeff();
  if (!(ratio * ratio < 1e12)) {
    throw SingularSolve("restricted_model: predictor covariance condition estimate exceeds 1e12");
  }

  const Matrix solved = llt.solve(cross.transpose());  // (m*q) x m
  Matrix residual = sub[0] - cross * solved;
  residual = 0.5 * (residual + residual.transpose());

  RestrictedModel out;
  out.subset = subset;
  out.max_lag = q;
  out.coeffs.reserve(static_cast<std::size_t>(q));
  const Matrix stacked = solved.transpose();  // m x (m*q)
  for (int k = 0; k < q; ++k) {
    out.coeffs.push_back(stacked.block(0, k * m, m, m));
  }
  out.residual_cov = std::move(residual);
  return out;
}

}  // namespace hoinet
