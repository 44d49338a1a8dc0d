#include <doctest.h>

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "hoinet/rng.hpp"
#include "hoinet/signif.hpp"

using namespace hoinet;

namespace {

std::vector<double> amplitude_spectrum(const Vector& x) {
  Eigen::FFT<double> fft;
  std::vector<double> data(x.data(), x.data() + x.size());
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, data);
  std::vector<double> amplitude(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) amplitude[k] = std::abs(spectrum[k]);
  return amplitude;
}

TimeSeries ar1_series(double a, int t_total, std::uint64_t seed) {
  const VarModel model{1, 1, {Matrix::Constant(1, 1, a)}, Matrix::Identity(1, 1)};
  return simulate(model, t_total, 500, seed);
}

}  // namespace

TEST_CASE("percentiles interpolate linearly between order statistics") {
  const std::vector<double> sample{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(percentile(sample, 0.0) == doctest::Approx(1.0));
  CHECK(percentile(sample, 100.0) == doctest::Approx(5.0));
  CHECK(percentile(sample, 50.0) == doctest::Approx(3.0));
  CHECK(percentile(sample, 62.5) == doctest::Approx(3.5));
  CHECK_THROWS_AS(percentile({}, 50.0), InvalidArgument);
}

TEST_CASE("significance flags are pure functions of the stored distribution") {
  Rng rng(70);
  std::vector<double> dist(200);
  for (double& v : dist) v = rng.gaussian();

  const SignificanceResult inside = make_bootstrap_result(0.1, dist, 0.05);
  CHECK(inside.lower <= inside.upper);
  CHECK(inside.significant == (0.0 < inside.lower || 0.0 > inside.upper));

  // re-deriving from the stored distribution reproduces the verdict
  const SignificanceResult again =
      make_bootstrap_result(inside.observed, inside.distribution, 0.05);
  CHECK(again.significant == inside.significant);
  CHECK(again.lower == doctest::Approx(inside.lower));
  CHECK(again.upper == doctest::Approx(inside.upper));

  std::vector<double> shifted = dist;
  for (double& v : shifted) v += 10.0;
  CHECK(make_bootstrap_result(10.0, shifted, 0.05).significant);

  const SignificanceResult surrogate = make_surrogate_result(3.5, dist, 0.05);
  CHECK(surrogate.significant == (3.5 > percentile(surrogate.distribution, 95.0)));
}

TEST_CASE("config validation") {
  SignificanceConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.n_replicates = 10;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg.n_replicates = 100;
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg.alpha = 0.005;  // alpha * n < 1
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
}

TEST_CASE("surrogates keep the value multiset exactly") {
  const TimeSeries series = ar1_series(0.6, 777, 71);
  const Vector surrogate = iaaft_surrogate(series.values.col(0), 5);

  std::vector<double> a(series.values.col(0).data(), series.values.col(0).data() + 777);
  std::vector<double> b(surrogate.data(), surrogate.data() + 777);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}

TEST_CASE("surrogates preserve the amplitude spectrum of an autoregression") {
  const TimeSeries series = ar1_series(0.7, 1000, 72);
  const Vector surrogate = iaaft_surrogate(series.values.col(0), 6);

  const std::vector<double> original = amplitude_spectrum(series.values.col(0));
  const std::vector<double> matched = amplitude_spectrum(surrogate);
  double err = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < original.size(); ++k) {
    err += (original[k] - matched[k]) * (original[k] - matched[k]);
    norm += original[k] * original[k];
  }
  CHECK(std::sqrt(err / norm) < 0.05);
}

TEST_CASE("surrogate pairs of a coupled series decorrelate") {
  // hub and leaf of the source star: strongly coupled, near-white marginals
  const VarModel coupled = build_star_model({StarVariant::source, 0.3, 0.0});
  const int t_total = 400;
  const TimeSeries full = simulate(coupled, t_total, 500, 73);
  TimeSeries series;
  series.values = full.values.leftCols(2);

  double total_abs_corr = 0.0;
  const int draws = 100;
  for (int d = 0; d < draws; ++d) {
    const Vector s0 = iaaft_surrogate(series.values.col(0), derive_seed(74, 2 * d));
    const Vector s1 = iaaft_surrogate(series.values.col(1), derive_seed(74, 2 * d + 1));
    const Vector c0 = s0.array() - s0.mean();
    const Vector c1 = s1.array() - s1.mean();
    total_abs_corr += std::abs(c0.dot(c1) / (c0.norm() * c1.norm()));
  }
  CHECK(total_abs_corr / draws < 3.0 / std::sqrt(static_cast<double>(t_total)));
}

TEST_CASE("surrogates are deterministic in the seed") {
  const TimeSeries series = ar1_series(0.5, 300, 75);
  CHECK(iaaft_surrogate(series.values.col(0), 9) == iaaft_surrogate(series.values.col(0), 9));
  CHECK(iaaft_surrogate(series.values.col(0), 9) != iaaft_surrogate(series.values.col(0), 10));
  CHECK_THROWS_AS(iaaft_surrogate(Vector::Zero(8), 1), InvalidArgument);
}

TEST_CASE("bootstrap series retain the fitted covariance structure") {
  const VarModel model = build_star_model({StarVariant::mediator, 0.3, 0.3});
  const int t_total = 2000;
  const TimeSeries series = simulate(model, t_total, 1000, 76);
  const VarFit fit = fit_least_squares(series, 1);
  const Matrix target = process_covariances(fit.model, 1).sigmas[0];

  Matrix average = Matrix::Zero(5, 5);
  const int replicates = 50;
  for (int r = 0; r < replicates; ++r) {
    const TimeSeries boot = bootstrap_series(fit, t_total, 1000, 77, r);
    const Matrix centered = boot.values.rowwise() - boot.values.colwise().mean();
    average += centered.transpose() * centered / static_cast<double>(t_total - 1);
  }
  average /= replicates;
  CHECK((average - target).cwiseAbs().maxCoeff() < 5.0 / std::sqrt(static_cast<double>(t_total)));
}

TEST_CASE("bootstrap results are deterministic and well-formed") {
  const VarModel model = build_star_model({StarVariant::mediator, 0.3, 0.3});
  const TimeSeries series = simulate(model, 400, 1000, 78);

  SignificanceConfig cfg;
  cfg.n_replicates = 40;
  cfg.alpha = 0.1;
  cfg.seed = 79;

  const HoiSignificance first = bootstrap_hoi(series, 1, 20, cfg);
  const HoiSignificance second = bootstrap_hoi(series, 1, 20, cfg);
  CHECK(first.oir.observed == second.oir.observed);
  CHECK(first.oir.distribution == second.oir.distribution);
  CHECK(first.oir.lower == second.oir.lower);
  for (int j = 0; j < 5; ++j) {
    CHECK(first.gradient[j].distribution == second.gradient[j].distribution);
    CHECK(first.gradient[j].significant == second.gradient[j].significant);
  }
  CHECK(static_cast<int>(first.local_oir.size()) == n_pairs(5));
  CHECK(std::is_sorted(first.oir.distribution.begin(), first.oir.distribution.end()));

  // thread count must not change the outcome
  cfg.n_threads = 4;
  const HoiSignificance threaded = bootstrap_hoi(series, 1, 20, cfg);
  CHECK(threaded.oir.distribution == first.oir.distribution);
}

TEST_CASE("pairwise surrogate test finds a real coupling and respects nesting") {
  const VarModel model = build_star_model({StarVariant::source, 0.3, 0.0});
  const TimeSeries series = simulate(model, 1000, 1000, 80);

  SignificanceConfig cfg;
  cfg.n_replicates = 100;
  cfg.seed = 81;

  const SignificanceResult strict = [&] {
    SignificanceConfig c = cfg;
    c.alpha = 0.01;
    return mir_significance(series, 0, 1, 1, 20, c);
  }();
  const SignificanceResult loose = mir_significance(series, 0, 1, 1, 20, cfg);

  CHECK(loose.observed == doctest::Approx(strict.observed));
  CHECK(loose.significant);  // hub-leaf coupling is unmistakable at T=1000
  if (strict.significant) CHECK(loose.significant);

  CHECK_THROWS_AS(mir_significance(series, 2, 2, 1, 20, cfg), InvalidArgument);
}
