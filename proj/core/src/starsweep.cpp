#include "hoinet/starsweep.hpp"

#include <cmath>

#include "hoinet/parallel.hpp"
#include "hoinet/rng.hpp"

namespace hoinet {

std::uint64_t star_cell_seed(std::uint64_t seed, double a31, int n_samples) {
  const auto a31_key = static_cast<std::uint64_t>(std::llround(a31 * 1e6));
  return derive_seed(derive_seed(seed, a31_key), static_cast<std::uint64_t>(n_samples));
}

StarCellResult star_sweep_cell(const StarCellConfig& cfg) {
  if (cfg.runs < 1) throw InvalidArgument("star_sweep_cell: runs must be >= 1");

  const VarModel model = build_star_model({StarVariant::mediator, cfg.coupling, cfg.a31});
  const int n = model.n_nodes;
  const int pairs = n_pairs(n);

  StarCellResult out;
  out.a31 = cfg.a31;
  out.n_samples = cfg.n_samples;
  out.runs = cfg.runs;
  out.analytic = analyze(model, cfg.q);
  out.gradient_sig.assign(static_cast<std::size_t>(n), 0);
  out.local_sig.assign(static_cast<std::size_t>(pairs), 0);

  struct RunOutcome {
    HoiValues estimate;
    std::vector<bool> gradient_sig, local_sig;
    bool oir_sig = false;
  };
  std::vector<RunOutcome> outcomes(static_cast<std::size_t>(cfg.runs));

  const std::uint64_t cell_seed = star_cell_seed(cfg.seed, cfg.a31, cfg.n_samples);
  parallel_for(static_cast<std::size_t>(cfg.runs), cfg.n_threads, [&](std::size_t r) {
    const std::uint64_t sim_seed = derive_seed(cell_seed, 2 * r);
    const TimeSeries series = simulate(model, cfg.n_samples, cfg.burn_in, sim_seed);
    RunOutcome& o = outcomes[r];
    if (cfg.with_bootstrap) {
      SignificanceConfig scfg;
      scfg.alpha = cfg.alpha;
      scfg.n_replicates = cfg.n_replicates;
      scfg.seed = derive_seed(cell_seed, 2 * r + 1);
      scfg.burn_in = cfg.burn_in;
      scfg.n_threads = 1;  // parallelism lives at the run level
      const HoiSignificance sig = bootstrap_hoi(series, cfg.order, cfg.q, scfg);
      o.gradient_sig.resize(static_cast<std::size_t>(n));
      o.local_sig.resize(static_cast<std::size_t>(pairs));
      HoiValues est;
      est.n_nodes = n;
      est.gradient.resize(static_cast<std::size_t>(n));
      est.local_oir.resize(static_cast<std::size_t>(pairs));
      for (int j = 0; j < n; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        est.gradient[jj] = sig.gradient[jj].observed;
        o.gradient_sig[jj] = sig.gradient[jj].significant;
      }
      for (int k = 0; k < pairs; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        est.local_oir[kk] = sig.local_oir[kk].observed;
        o.local_sig[kk] = sig.local_oir[kk].significant;
      }
      est.oir = sig.oir.observed;
      o.oir_sig = sig.oir.significant;
      o.estimate = std::move(est);
    } else {
      o.estimate = analyze(fit_least_squares(series, cfg.order).model, cfg.q);
    }
  });

  auto summarize = [&](auto&& get, double truth, double& mean, double& sd, double& mae) {
    double sum = 0.0, abs_sum = 0.0;
    for (const RunOutcome& o : outcomes) {
      sum += get(o);
      abs_sum += std::abs(get(o) - truth);
    }
    mean = sum / cfg.runs;
    mae = abs_sum / cfg.runs;
    double ss = 0.0;
    for (const RunOutcome& o : outcomes) {
      const double d = get(o) - mean;
      ss += d * d;
    }
    sd = cfg.runs > 1 ? std::sqrt(ss / (cfg.runs - 1)) : 0.0;
  };

  out.gradient_mean.resize(static_cast<std::size_t>(n));
  out.gradient_std.resize(static_cast<std::size_t>(n));
  out.gradient_mae.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    summarize([&](const RunOutcome& o) { return o.estimate.gradient[jj]; },
              out.analytic.gradient[jj], out.gradient_mean[jj], out.gradient_std[jj],
              out.gradient_mae[jj]);
  }
  out.local_mean.resize(static_cast<std::size_t>(pairs));
  out.local_std.resize(static_cast<std::size_t>(pairs));
  out.local_mae.resize(static_cast<std::size_t>(pairs));
  for (int k = 0; k < pairs; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    summarize([&](const RunOutcome& o) { return o.estimate.local_oir[kk]; },
              out.analytic.local_oir[kk], out.local_mean[kk], out.local_std[kk],
              out.local_mae[kk]);
  }
  summarize([](const RunOutcome& o) { return o.estimate.oir; }, out.analytic.oir, out.oir_mean,
            out.oir_std, out.oir_mae);

  if (cfg.with_bootstrap) {
    for (const RunOutcome& o : outcomes) {
      for (int j = 0; j < n; ++j) {
        if (o.gradient_sig[static_cast<std::size_t>(j)]) {
          ++out.gradient_sig[static_cast<std::size_t>(j)];
        }
      }
      for (int k = 0; k < pairs; ++k) {
        if (o.local_sig[static_cast<std::size_t>(k)]) ++out.local_sig[static_cast<std::size_t>(k)];
      }
      if (o.oir_sig) ++out.oir_sig;
    }
  }
  return out;
}

}  // namespace hoinet
