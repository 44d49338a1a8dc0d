#ifndef HOINET_VAR_HPP
#define HOINET_VAR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hoinet/numerics.hpp"

namespace hoinet {

/// Order-p linear vector autoregression with Gaussian innovations:
/// x_n = sum_k coeffs[k-1] * x_{n-k} + u_n, cov(u) = innovation_cov.
struct VarModel {
  int n_nodes = 0;
  int order = 0;
  std::vector<Matrix> coeffs;  ///< one n_nodes x n_nodes matrix per lag
  Matrix innovation_cov;       ///< n_nodes x n_nodes, symmetric positive definite
};

/// Throws unless dimensions are consistent, innovation_cov is SPD, and
/// the companion-form spectral radius is below one (stationarity).
void validate(const VarModel& model);

/// Block-companion matrix stacking the model's lags into order one.
Matrix companion_matrix(const VarModel& model);

/// Multivariate series, one column per node.
struct TimeSeries {
  Matrix values;                    ///< n_samples x n_nodes
  std::vector<std::string> labels;  ///< empty, or one label per column

  int n_samples() const { return static_cast<int>(values.rows()); }
  int n_nodes() const { return static_cast<int>(values.cols()); }
};

enum class StarVariant { source, sink, mediator };

/// Five-node hub-and-leaves benchmark configuration. The hub is node 0;
/// in the mediator variant it forwards what it receives from nodes 3-4
/// (at 4x coupling) to nodes 1-2, with the hub-to-node-2 weight set
/// separately by a31.
struct StarConfig {
  StarVariant variant = StarVariant::source;
  double coupling = 0.3;
  double a31 = 0.0;  ///< mediator only; must lie in [0, 0.3]
};

/// Order-1, five-node model with identity innovation covariance and the
/// requested lag-1 coupling pattern. All three variants are acyclic, so
/// the companion spectral radius is zero.
VarModel build_star_model(const StarConfig& cfg);

/// Draws a realization of the model: Gaussian innovations shaped by the
/// Cholesky factor of innovation_cov, iterated from a zero initial state;
/// the first burn_in samples are discarded. Identical seeds give
/// bit-identical output.
TimeSeries simulate(const VarModel& model, int n_samples, int burn_in, std::uint64_t seed);

/// Least-squares fit plus the residual matrix, kept for bootstrap resampling.
struct VarFit {
  VarModel model;
  Matrix residuals;  ///< (n_samples - order) x n_nodes
};

/// Ordinary least squares regression of x_n on its stacked lags, without
/// intercept (series are assumed zero-mean or pre-normalized). The
/// innovation covariance uses denominator (n_samples - order).
VarFit fit_least_squares(const TimeSeries& series, int order);

enum class OrderCriterion { aic, bic };

/// Fits orders 1..max_order on a common estimation window and returns the
/// criterion argmin; ties break toward the smaller order.
int select_order(const TimeSeries& series, int max_order, OrderCriterion criterion);

/// Per-column normalization to mean 0, variance 1 (denominator n-1).
TimeSeries zscore(const TimeSeries& series);

// --- serialization -------------------------------------------------------
// Series travel as CSV (optional header row of labels, one row per sample,
// comma separator, '.' decimal point); models travel as JSON documents with
// fields "n_nodes", "order", "coeffs" (list of row-major matrices) and
// "innovation_cov".

std::string to_csv(const TimeSeries& series);
TimeSeries series_from_csv(const std::string& text);
void write_series_csv(const std::string& path, const TimeSeries& series);
TimeSeries read_series_csv(const std::string& path);

std::string to_json(const VarModel& model);
VarModel model_from_json(const std::string& text);
void write_model_json(const std::string& path, const VarModel& model);
VarModel read_model_json(const std::string& path);

/// Parses "source" / "sink" / "mediator"; throws InvalidArgument otherwise.
StarVariant parse_star_variant(const std::string& name);
const char* to_string(StarVariant variant);

}  // namespace hoinet

#endif
