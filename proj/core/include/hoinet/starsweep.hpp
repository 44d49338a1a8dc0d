#ifndef HOINET_STARSWEEP_HPP
#define HOINET_STARSWEEP_HPP

#include <cstdint>
#include <vector>

#include "hoinet/netout.hpp"

namespace hoinet {

/// One (a31, series length) cell of the mediator-star sweep.
struct StarCellConfig {
  double a31 = 0.0;
  int n_samples = 1000;
  int runs = 100;
  double coupling = 0.3;
  int order = 1;
  int q = 20;
  int burn_in = 1000;
  std::uint64_t seed = 0;
  int n_threads = 1;
  bool with_bootstrap = true;  ///< off: estimates only, no detection counts
  double alpha = 0.05;
  int n_replicates = 100;
};

/// Detection counts and estimate summaries over the cell's runs, plus the
/// analytic reference values at this a31.
struct StarCellResult {
  double a31 = 0.0;
  int n_samples = 0;
  int runs = 0;

  std::vector<int> gradient_sig;  ///< significant-run count per node
  std::vector<int> local_sig;     ///< per unordered pair
  int oir_sig = 0;

  std::vector<double> gradient_mean, gradient_std;  ///< estimates over runs
  std::vector<double> local_mean, local_std;
  double oir_mean = 0.0, oir_std = 0.0;

  /// Mean absolute deviation of the estimates from the analytic values.
  std::vector<double> gradient_mae, local_mae;
  double oir_mae = 0.0;

  HoiValues analytic;
};

/// Simulates `runs` mediator-star realizations and, per run, estimates
/// every measure (and bootstrap significance when enabled). Run r derives
/// its streams from (seed, r), so results do not depend on thread count.
StarCellResult star_sweep_cell(const StarCellConfig& cfg);

/// Deterministic per-cell seed, stable under changes to the sweep grid.
std::uint64_t star_cell_seed(std::uint64_t seed, double a31, int n_samples);

}  // namespace hoinet

#endif
