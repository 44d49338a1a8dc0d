#include "hoinet/signif.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <utility>

#include "hoinet/parallel.hpp"
#include "hoinet/rng.hpp"

namespace hoinet {

void validate(const SignificanceConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw InvalidArgument("SignificanceConfig: alpha must lie in (0, 1)");
  }
  if (cfg.n_replicates < 20) {
    throw InvalidArgument("SignificanceConfig: need at least 20 replicates");
  }
  if (cfg.alpha * cfg.n_replicates < 1.0) {
    throw InvalidArgument("SignificanceConfig: alpha * n_replicates must be >= 1");
  }
  if (cfg.burn_in < 0) throw InvalidArgument("SignificanceConfig: burn_in must be >= 0");
}

double percentile(const std::vector<double>& sorted_values, double pct) {
  if (sorted_values.empty()) throw InvalidArgument("percentile: empty sample");
  if (pct <= 0.0) return sorted_values.front();
  if (pct >= 100.0) return sorted_values.back();
  const double rank = pct / 100.0 * static_cast<double>(sorted_values.size() - 1);
  const auto lo = static_cast<std::size_t>(rank);
  const double frac = rank - static_cast<double>(lo);
  if (lo + 1 >= sorted_values.size()) return sorted_values.back();
  return sorted_values[lo] * (1.0 - frac) + sorted_values[lo + 1] * frac;
}

SignificanceResult make_bootstrap_result(double observed, std::vector<double> distribution,
                                         double alpha) {
  std::sort(distribution.begin(), distribution.end());
  SignificanceResult out;
  out.observed = observed;
  out.lower = percentile(distribution, 100.0 * alpha / 2.0);
  out.upper = percentile(distribution, 100.0 * (1.0 - alpha / 2.0));
  out.significant = 0.0 < out.lower || 0.0 > out.upper;
  out.method = SignifMethod::bootstrap;
  out.distribution = std::move(distribution);
  return out;
}

SignificanceResult make_surrogate_result(double observed, std::vector<double> distribution,
                                         double alpha) {
  std::sort(distribution.begin(), distribution.end());
  SignificanceResult out;
  out.observed = observed;
  out.lower = percentile(distribution, 100.0 * alpha / 2.0);
  out.upper = percentile(distribution, 100.0 * (1.0 - alpha / 2.0));
  out.significant = observed > percentile(distribution, 100.0 * (1.0 - alpha));
  out.method = SignifMethod::surrogate;
  out.distribution = std::move(distribution);
  return out;
}

namespace {

// Regenerate a series through the fitted model, drawing whole residual
// rows with replacement so zero-lag residual correlations survive.
TimeSeries regenerate(const VarModel& model, const Matrix& residuals, int n_samples, int burn_in,
                      Rng& rng) {
  const int n = model.n_nodes;
  const int p = model.order;
  const auto n_rows = static_cast<std::size_t>(residuals.rows());
  const int total = burn_in + n_samples;
  Matrix x(total, n);
  Vector row(n);
  for (int t = 0; t < total; ++t) {
    row = residuals.row(static_cast<Eigen::Index>(rng.index(n_rows))).transpose();
    for (int k = 1; k <= p && k <= t; ++k) {
      row.noalias() += model.coeffs[static_cast<std::size_t>(k - 1)] * x.row(t - k).transpose();
    }
    x.row(t) = row.transpose();
  }
  return TimeSeries{x.bottomRows(n_samples), {}};
}

// Runs compute(rng) with up to three derived streams per replicate; the
// stream schedule depends only on (seed, replicate), never on worker
// scheduling, so parallel runs reproduce serial ones.
template <class Fn>
auto with_replicate_retries(std::uint64_t seed, int replicate, int n_replicates, Fn&& compute) {
  for (int attempt = 0;; ++attempt) {
    Rng rng(seed, static_cast<std::uint64_t>(attempt) * n_replicates + replicate);
    try {
      return compute(rng);
    } catch (const Error&) {
      if (attempt >= 2) throw;
    }
  }
}

}  // namespace

TimeSeries bootstrap_series(const VarFit& fit, int n_samples, int burn_in, std::uint64_t seed,
                            std::uint64_t stream) {
  Matrix centered = fit.residuals;
  centered.rowwise() -= centered.colwise().mean();
  Rng rng(seed, stream);
  return regenerate(fit.model, centered, n_samples, burn_in, rng);
}

HoiSignificance bootstrap_hoi(const TimeSeries& series, int order, int q,
                              const SignificanceConfig& cfg) {
  validate(cfg);
  const VarFit fit = fit_least_squares(series, order);
  const HoiValues observed = analyze(fit.model, q);
  const int n = series.n_nodes();
  const int t_total = series.n_samples();

  Matrix centered = fit.residuals;
  centered.rowwise() -= centered.colwise().mean();

  std::vector<HoiValues> replicates(static_cast<std::size_t>(cfg.n_replicates));
  parallel_for(static_cast<std::size_t>(cfg.n_replicates), cfg.n_threads, [&](std::size_t r) {
    replicates[r] = with_replicate_retries(
        cfg.seed, static_cast<int>(r), cfg.n_replicates, [&](Rng& rng) {
          const TimeSeries boot = regenerate(fit.model, centered, t_total, cfg.burn_in, rng);
          return analyze(fit_least_squares(boot, order).model, q);
        });
  });

  auto collect = [&](auto&& get) {
    std::vector<double> dist(replicates.size());
    for (std::size_t r = 0; r < replicates.size(); ++r) dist[r] = get(replicates[r]);
    return dist;
  };

  HoiSignificance out;
  out.gradient.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    out.gradient.push_back(make_bootstrap_result(
        observed.gradient[jj], collect([&](const HoiValues& v) { return v.gradient[jj]; }),
        cfg.alpha));
  }
  out.local_oir.reserve(static_cast<std::size_t>(n_pairs(n)));
  for (int k = 0; k < n_pairs(n); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    out.local_oir.push_back(make_bootstrap_result(
        observed.local_oir[kk], collect([&](const HoiValues& v) { return v.local_oir[kk]; }),
        cfg.alpha));
  }
  out.oir = make_bootstrap_result(
      observed.oir, collect([](const HoiValues& v) { return v.oir; }), cfg.alpha);
  return out;
}

Vector iaaft_surrogate(const Vector& column, std::uint64_t seed, int max_iter) {
  const auto t_total = static_cast<std::size_t>(column.size());
  if (t_total < 16) throw InvalidArgument("iaaft_surrogate: need at least 16 samples");
  if (max_iter < 1) throw InvalidArgument("iaaft_surrogate: max_iter must be >= 1");

  std::vector<double> sorted(column.data(), column.data() + t_total);
  std::sort(sorted.begin(), sorted.end());

  Eigen::FFT<double> fft;
  std::vector<double> work(column.data(), column.data() + t_total);
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, work);
  std::vector<double> amplitude(t_total);
  for (std::size_t k = 0; k < t_total; ++k) amplitude[k] = std::abs(spectrum[k]);

  // start from a random permutation of the original values
  Rng rng(seed);
  rng.shuffle(work);

  std::vector<std::size_t> order(t_total);
  std::vector<std::size_t> prev_order;
  for (int iter = 0; iter < max_iter; ++iter) {
    // impose the original amplitude spectrum, keeping current phases
    fft.fwd(spectrum, work);
    for (std::size_t k = 0; k < t_total; ++k) {
      const double mag = std::abs(spectrum[k]);
      spectrum[k] = mag > 1e-300 ? spectrum[k] * (amplitude[k] / mag)
                                 : std::complex<double>(amplitude[k], 0.0);
    }
    fft.inv(work, spectrum);

    // remap values back onto the original multiset by rank
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return work[a] < work[b]; });
    for (std::size_t pos = 0; pos < t_total; ++pos) work[order[pos]] = sorted[pos];

    if (order == prev_order) break;
    prev_order = order;
  }

  return Eigen::Map<const Vector>(work.data(), static_cast<Eigen::Index>(t_total));
}

namespace {

double pair_mir_estimate(const TimeSeries& pair, int order, int q) {
  const VarFit fit = fit_least_squares(pair, order);
  const LagCovarianceSet covs = process_covariances(fit.model, std::max(q, order));
  return mir(covs, {0}, {1}, q);
}

}  // namespace

SignificanceResult mir_significance(const TimeSeries& series, int i, int j, int order, int q,
                                    const SignificanceConfig& cfg) {
  validate(cfg);
  const int n = series.n_nodes();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
    throw InvalidArgument("mir_significance: node indices invalid");
  }

  TimeSeries pair;
  pair.values.resize(series.values.rows(), 2);
  pair.values.col(0) = series.values.col(i);
  pair.values.col(1) = series.values.col(j);

  const double observed = pair_mir_estimate(pair, order, q);

  std::vector<double> dist(static_cast<std::size_t>(cfg.n_replicates));
  parallel_for(static_cast<std::size_t>(cfg.n_replicates), cfg.n_threads, [&](std::size_t r) {
    dist[r] = with_replicate_retries(
        cfg.seed, static_cast<int>(r), cfg.n_replicates, [&](Rng& rng) {
          // one independent surrogate per column decouples the pair
          const std::uint64_t s0 = rng.bits();
          const std::uint64_t s1 = rng.bits();
          TimeSeries surrogate;
          surrogate.values.resize(pair.values.rows(), 2);
          surrogate.values.col(0) = iaaft_surrogate(pair.values.col(0), s0);
          surrogate.values.col(1) = iaaft_surrogate(pair.values.col(1), s1);
          return pair_mir_estimate(surrogate, order, q);
        });
  });

  return make_surrogate_result(observed, std::move(dist), cfg.alpha);
}

NetworkSignificance network_significance(const TimeSeries& series, int order, int q,
                                         const SignificanceConfig& cfg) {
  NetworkSignificance out;
  out.hoi = bootstrap_hoi(series, order, q, cfg);
  const int n = series.n_nodes();
  out.mir.reserve(static_cast<std::size_t>(n_pairs(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      SignificanceConfig link_cfg = cfg;
      // distinct stream family per link, stable under link enumeration order
      link_cfg.seed = derive_seed(cfg.seed, 1000003ULL * static_cast<std::uint64_t>(i) +
                                                static_cast<std::uint64_t>(j));
      out.mir.push_back(mir_significance(series, i, j, order, q, link_cfg));
    }
  }
  return out;
}

}  // namespace hoinet
