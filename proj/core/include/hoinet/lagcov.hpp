#ifndef HOINET_LAGCOV_HPP
#define HOINET_LAGCOV_HPP

#include <vector>

#include "hoinet/var.hpp"

namespace hoinet {

/// Time-lagged covariances of the full process: sigmas[k] = E[x_n x_{n-k}'].
struct LagCovarianceSet {
  int n_nodes = 0;
  int max_lag = 0;
  std::vector<Matrix> sigmas;  ///< max_lag + 1 matrices
};

/// Distinct node indices into 0..n_nodes-1. Order is significant for the
/// row/column layout of restricted-model outputs.
using SubsetIndex = std::vector<int>;

/// Throws unless subset is non-empty, in range, and duplicate-free.
void validate_subset(const SubsetIndex& subset, int n_nodes);

/// Autoregression of a subset of processes on its own finite past, with
/// parameters derived from the full model's lag covariances (not a refit).
struct RestrictedModel {
  SubsetIndex subset;
  int max_lag = 0;             ///< regression depth q
  std::vector<Matrix> coeffs;  ///< q matrices, each M x M
  Matrix residual_cov;         ///< M x M, symmetric positive definite
};

/// Lag covariances 0..max_lag of the model's stationary distribution:
/// the order-0 block row comes from the companion-form discrete Lyapunov
/// equation, higher lags from the Yule-Walker recursion.
LagCovarianceSet process_covariances(const VarModel& model, int max_lag);

/// Projects the subset's present onto its own past over max_lag lags by
/// solving the block-Toeplitz predictor system assembled from covs. A
/// condition estimate above 1e12 raises SingularSolve; ridge > 0 adds
/// ridge * I to the predictor covariance before solving (off by default).
RestrictedModel restricted_model(const LagCovarianceSet& covs, const SubsetIndex& subset,
                                 int max_lag, double ridge = 0.0);

}  // namespace hoinet

#endif
