#ifndef HOINET_SIGNIF_HPP
#define HOINET_SIGNIF_HPP

#include <cstdint>
#include <vector>

#include "hoinet/measures.hpp"

namespace hoinet {

struct SignificanceConfig {
  double alpha = 0.05;
  int n_replicates = 100;
  std::uint64_t seed = 0;
  int burn_in = 1000;
  int n_threads = 1;  ///< replicate streams are scheduling-independent
};

/// Throws unless alpha is in (0,1), n_replicates >= 20 and
/// alpha * n_replicates >= 1 (percentile resolution).
void validate(const SignificanceConfig& cfg);

enum class SignifMethod { bootstrap, surrogate };

/// One measure's null/bootstrap distribution summary. `lower`/`upper` are
/// the (100*alpha/2)th and (100*(1-alpha/2))th percentiles of the stored
/// distribution; bootstrap measures are significant when 0 falls outside
/// [lower, upper], surrogate measures when the observed value exceeds the
/// (100*(1-alpha))th percentile.
struct SignificanceResult {
  double observed = 0.0;
  std::vector<double> distribution;  ///< sorted ascending
  double lower = 0.0;
  double upper = 0.0;
  bool significant = false;
  SignifMethod method = SignifMethod::bootstrap;
};

/// Percentile (0..100) of a sorted sample, linearly interpolated between
/// order statistics.
double percentile(const std::vector<double>& sorted_values, double pct);

SignificanceResult make_bootstrap_result(double observed, std::vector<double> distribution,
                                         double alpha);
SignificanceResult make_surrogate_result(double observed, std::vector<double> distribution,
                                         double alpha);

/// Bootstrap results for every node gradient, every link-level balance
/// value, and the global balance, in pair_index order.
struct HoiSignificance {
  std::vector<SignificanceResult> gradient;
  std::vector<SignificanceResult> local_oir;
  SignificanceResult oir;
};

/// One bootstrap pseudo-series: the fitted model driven by whole residual
/// rows drawn with replacement (column-centered first), so causal
/// structure and zero-lag residual correlations carry over.
TimeSeries bootstrap_series(const VarFit& fit, int n_samples, int burn_in, std::uint64_t seed,
                            std::uint64_t stream);

/// Residual bootstrap around a least-squares fit of the series: each
/// replicate regenerates a same-length series from the fitted model with
/// resampled whole residual rows (zero-lag residual correlation is kept),
/// refits at the same order, and recomputes every measure. Replicate r
/// draws from stream (seed, r); a failing replicate is redrawn from
/// streams r + n_replicates and r + 2*n_replicates, which caps total
/// attempts at 3 * n_replicates before the error propagates.
HoiSignificance bootstrap_hoi(const TimeSeries& series, int order, int q,
                              const SignificanceConfig& cfg);

/// Iterative amplitude-adjusted Fourier transform surrogate: alternates
/// spectrum matching (original Fourier amplitudes, current phases) with
/// amplitude matching (rank remap onto the sorted original values),
/// starting from a random permutation. Stops when the rank ordering
/// repeats or after max_iter rounds; the final step is always amplitude
/// matching, so the value multiset equals the original exactly.
Vector iaaft_surrogate(const Vector& column, std::uint64_t seed, int max_iter = 100);

/// One-sided surrogate test of the pairwise coupling between columns i
/// and j: the observed value comes from the fitted pipeline on the pair,
/// the null distribution from independently surrogated columns.
SignificanceResult mir_significance(const TimeSeries& series, int i, int j, int order, int q,
                                    const SignificanceConfig& cfg);

/// Bundle used to annotate a full network: bootstrap results for the
/// higher-order measures plus one surrogate test per link.
struct NetworkSignificance {
  HoiSignificance hoi;
  std::vector<SignificanceResult> mir;  ///< per unordered pair
};

NetworkSignificance network_significance(const TimeSeries& series, int order, int q,
                                         const SignificanceConfig& cfg);

}  // namespace hoinet

#endif
