#ifndef HOINET_MEASURES_HPP
#define HOINET_MEASURES_HPP

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "hoinet/lagcov.hpp"

namespace hoinet {

/// Flat index of the unordered pair (i, j), i != j, among n nodes, in
/// (0,1), (0,2), ..., (n-2,n-1) order.
inline int pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline int n_pairs(int n) { return n * (n - 1) / 2; }

/// Every node-, link- and network-level information measure of one
/// network, in nats per time step. Pair vectors follow pair_index order.
struct HoiValues {
  int n_nodes = 0;
  std::vector<double> entropy_rates;  ///< per node
  std::vector<double> mir;            ///< per unordered pair
  std::vector<double> local_oir;      ///< per unordered pair
  std::vector<double> gradient;       ///< per node
  double oir = 0.0;
};

/// Joint entropy rate of the subset: 0.5 * (M ln(2 pi e) + ln det of the
/// restricted residual covariance), M = |subset|.
double entropy_rate(const LagCovarianceSet& covs, const SubsetIndex& subset, int q);

/// Information shared per step between two disjoint groups of processes:
/// H(y) + H(z) - H(y,z). Negative round-off above -1e-9 is clamped to 0.
double mir(const LagCovarianceSet& covs, const SubsetIndex& y, const SubsetIndex& z, int q);

/// Network-wide redundancy/synergy balance over all nodes of covs.
/// Exactly 0 for two nodes, positive when redundancy prevails, negative
/// when synergy does.
double oir(const LagCovarianceSet& covs, int q);

/// Same balance restricted to a sub-network of the given nodes.
double oir(const LagCovarianceSet& covs, const SubsetIndex& subset, int q);

/// Node-level measure: the change in the network balance when `node`
/// joins the remaining processes. Requires n_nodes >= 3.
double oir_gradient(const LagCovarianceSet& covs, int node, int q);

/// Link-level measure: net information shared by nodes i and j with the
/// rest of the network, evaluated as a single combination of seven
/// restricted-model log-determinants. Symmetric in (i, j); requires
/// n_nodes >= 3.
double local_oir(const LagCovarianceSet& covs, int i, int j, int q);

/// Every measure of the model's network: lag covariances are computed
/// once and restricted models are cached per subset, so each subset is
/// solved exactly once.
HoiValues analyze(const VarModel& model, int q);

/// Same, starting from precomputed lag covariances (they must extend to
/// at least q lags).
HoiValues analyze_covariances(const LagCovarianceSet& covs, int q);

/// Memoized subset entropy rates over one covariance set. Thread-safe;
/// keys are sorted internally, so entropy values are insensitive to
/// subset ordering.
class SubsetEntropies {
 public:
  SubsetEntropies(const LagCovarianceSet& covs, int q) : covs_(covs), q_(q) {}

  /// Entropy rate of the subset; the empty subset yields 0.
  double operator()(SubsetIndex subset);

 private:
  const LagCovarianceSet& covs_;
  int q_;
  std::mutex mutex_;
  std::map<SubsetIndex, double> cache_;
};

}  // namespace hoinet

#endif
