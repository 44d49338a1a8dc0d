#include "hoinet/var.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <string>

#include "hoinet/rng.hpp"

namespace hoinet {

void validate(const VarModel& model) {
  if (model.n_nodes < 1) throw InvalidArgument("VarModel: n_nodes must be >= 1");
  if (model.order < 1) throw InvalidArgument("VarModel: order must be >= 1");
  if (static_cast<int>(model.coeffs.size()) != model.order) {
    throw DimensionMismatch("VarModel: coeffs list length must equal order");
  }
  for (const Matrix& a : model.coeffs) {
    if (a.rows() != model.n_nodes || a.cols() != model.n_nodes) {
      throw DimensionMismatch("VarModel: coefficient matrix has wrong shape");
    }
    if (!a.allFinite()) throw InvalidArgument("VarModel: coefficient matrix has non-finite entries");
  }
  if (model.innovation_cov.rows() != model.n_nodes ||
      model.innovation_cov.cols() != model.n_nodes) {
    throw DimensionMismatch("VarModel: innovation_cov has wrong shape");
  }
  Eigen::LLT<Matrix> llt(0.5 * (model.innovation_cov + model.innovation_cov.transpose()));
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("VarModel: innovation_cov is not positive definite");
  }
  const double rho = spectral_radius(companion_matrix(model));
  if (!(rho < 1.0)) {
    throw UnstableSystem("VarModel: companion spectral radius " + std::to_string(rho) +
                         " is not below 1");
  }
}

Matrix companion_matrix(const VarModel& model) {
  const int n = model.n_nodes;
  const int p = model.order;
  Matrix comp = Matrix::Zero(n * p, n * p);
  for (int k = 0; k < p; ++k) {
    comp.block(0, k * n, n, n) = model.coeffs[static_cast<std::size_t>(k)];
  }
  for (int k = 1; k < p; ++k) {
    comp.block(k * n, (k - 1) * n, n, n) = Matrix::Identity(n, n);
  }
  return comp;
}

VarModel build_star_model(const StarConfig& cfg) {
  if (!std::isfinite(cfg.coupling)) throw InvalidArgument("StarConfig: coupling must be finite");
  if (!(cfg.a31 >= 0.0 && cfg.a31 <= 0.3)) {
    throw InvalidArgument("StarConfig: a31 must lie in [0, 0.3]");
  }
  const int n = 5;
  Matrix a = Matrix::Zero(n, n);
  switch (cfg.variant) {
    case StarVariant::source:
      for (int j = 1; j < n; ++j) a(j, 0) = cfg.coupling;  // hub drives every leaf
      break;
    case StarVariant::sink:
      for (int j = 1; j < n; ++j) a(0, j) = cfg.coupling;  // every leaf drives the hub
      break;
    case StarVariant::mediator:
      // The inbound hub couplings are 4x the outbound ones. The common-child
      // side must dominate the cascade side for the mediator to show mixed
      // interactions: net synergy with the last leaf detached, near-balance
      // with it attached, and synergy at the receiving leaves throughout.
      a(1, 0) = cfg.coupling;        // hub -> first leaf
      a(2, 0) = cfg.a31;             // hub -> second leaf, swept coefficient
      a(0, 3) = 4.0 * cfg.coupling;  // third leaf -> hub
      a(0, 4) = 4.0 * cfg.coupling;  // fourth leaf -> hub
      break;
  }
  return VarModel{n, 1, {a}, Matrix::Identity(n, n)};
}

TimeSeries simulate(const VarModel& model, int n_samples, int burn_in, std::uint64_t seed) {
  validate(model);
  if (n_samples < 1) throw InvalidArgument("simulate: n_samples must be >= 1");
  if (burn_in < 0) throw InvalidArgument("simulate: burn_in must be >= 0");

  const int n = model.n_nodes;
  const int p = model.order;
  Eigen::LLT<Matrix> llt(0.5 * (model.innovation_cov + model.innovation_cov.transpose()));
  const Matrix chol = llt.matrixL();

  Rng rng(seed);
  const int total = burn_in + n_samples;
  Matrix x(total, n);
  Vector z(n);
  Vector row(n);
  for (int t = 0; t < total; ++t) {
    for (int i = 0; i < n; ++i) z(i) = rng.gaussian();
    row.noalias() = chol * z;
    for (int k = 1; k <= p && k <= t; ++k) {
      row.noalias() += model.coeffs[static_cast<std::size_t>(k - 1)] * x.row(t - k).transpose();
    }
    x.row(t) = row.transpose();
  }
  return TimeSeries{x.bottomRows(n_samples), {}};
}

namespace {

struct OlsResult {
  Matrix stacked;    // (n*order) x n, lag-major coefficient stack
  Matrix residuals;  // rows x n
};

// Regresses x_t on [x_{t-1}, ..., x_{t-order}] for t in [offset, T), via
// the normal equations. offset >= order lets callers fix a common
// estimation window across candidate orders.
OlsResult ols_solve(const Matrix& values, int order, int offset) {
  const int t_total = static_cast<int>(values.rows());
  const int n = static_cast<int>(values.cols());
  const int rows = t_total - offset;
  const int k = n * order;

  Matrix design(rows, k);
  for (int t = 0; t < rows; ++t) {
    for (int lag = 1; lag <= order; ++lag) {
      design.block(t, (lag - 1) * n, 1, n) = values.row(offset + t - lag);
    }
  }
  const Matrix response = values.bottomRows(rows);

  Matrix gram = design.transpose() * design;
  Eigen::LDLT<Matrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success) {
    throw RankDeficientRegressors("fit_least_squares: normal equations failed");
  }
  const Vector d = ldlt.vectorD();
  const double dmax = d.maxCoeff();
  const double dmin = d.minCoeff();
  if (!(dmin > 0.0) || dmax / dmin > 1e12) {
    throw RankDeficientRegressors(
        "fit_least_squares: regressors are collinear or constant (pivot ratio > 1e12)");
  }

  OlsResult out;
  out.stacked = ldlt.solve(design.transpose() * response);
  out.residuals = response - design * out.stacked;
  return out;
}

}  // namespace

VarFit fit_least_squares(const TimeSeries& series, int order) {
  const int t_total = series.n_samples();
  const int n = series.n_nodes();
  if (order < 1) throw InvalidArgument("fit_least_squares: order must be >= 1");
  if (t_total <= n * order + 10) {
    throw InvalidArgument("fit_least_squares: series too short for requested order");
  }
  if (!series.values.allFinite()) {
    throw InvalidArgument("fit_least_squares: series has non-finite values");
  }

  OlsResult ols = ols_solve(series.values, order, order);
  const int rows = t_total - order;

  VarModel model;
  model.n_nodes = n;
  model.order = order;
  model.coeffs.reserve(static_cast<std::size_t>(order));
  for (int lag = 0; lag < order; ++lag) {
    model.coeffs.push_back(ols.stacked.block(lag * n, 0, n, n).transpose());
  }
  Matrix cov = ols.residuals.transpose() * ols.residuals / static_cast<double>(rows);
  model.innovation_cov = 0.5 * (cov + cov.transpose());
  validate(model);
  return VarFit{std::move(model), std::move(ols.residuals)};
}

int select_order(const TimeSeries& series, int max_order, OrderCriterion criterion) {
  if (max_order < 1) throw InvalidArgument("select_order: max_order must be >= 1");
  const int t_total = series.n_samples();
  const int n = series.n_nodes();
  if (t_total <= n * max_order + 10) {
    throw InvalidArgument("select_order: series too short for max_order");
  }

  // All candidates share the window [max_order, T) so criterion values are
  // comparable and the argmin is unchanged by per-column rescaling.
  const int rows = t_total - max_order;
  int best_order = 1;
  double best_value = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= max_order; ++p) {
    OlsResult ols = ols_solve(series.values, p, max_order);
    Matrix cov = ols.residuals.transpose() * ols.residuals / static_cast<double>(rows);
    const double deficit = rows * log_det_pd(0.5 * (cov + cov.transpose()));
    const double n_params = static_cast<double>(p) * n * n;
    const double penalty =
        criterion == OrderCriterion::aic ? 2.0 * n_params : std::log(static_cast<double>(rows)) * n_params;
    const double value = deficit + penalty;
    if (value < best_value) {
      best_value = value;
      best_order = p;
    }
  }
  return best_order;
}

TimeSeries zscore(const TimeSeries& series) {
  const int t_total = series.n_samples();
  const int n = series.n_nodes();
  if (t_total < 2) throw InvalidArgument("zscore: need at least two samples");

  Matrix out = series.values;
  for (int j = 0; j < n; ++j) {
    const double mean = out.col(j).mean();
    out.col(j).array() -= mean;
    const double var = out.col(j).squaredNorm() / static_cast<double>(t_total - 1);
    const double sd = std::sqrt(var);
    if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
      throw ZeroVariance("zscore: column " + std::to_string(j) + " has no variance");
    }
    out.col(j) /= sd;
  }
  return TimeSeries{std::move(out), series.labels};
}

StarVariant parse_star_variant(const std::string& name) {
  if (name == "source") return StarVariant::source;
  if (name == "sink") return StarVariant::sink;
  if (name == "mediator") return StarVariant::mediator;
  throw InvalidArgument("unknown star variant '" + name + "' (expected source, sink, or mediator)");
}

const char* to_string(StarVariant variant) {
  switch (variant) {
    case StarVariant::source: return "source";
    case StarVariant::sink: return "sink";
    case StarVariant::mediator: return "mediator";
  }
  return "?";
}

}  // namespace hoinet
