#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hoinet/measures.hpp"
#include "hoinet/rng.hpp"

using namespace hoinet;

namespace {

const double kLn2PiE = 1.0 + std::log(2.0 * std::numbers::pi);

LagCovarianceSet star_covs(StarVariant variant, double a31, int q = 20) {
  return process_covariances(build_star_model({variant, 0.3, a31}), q);
}

VarModel random_stable_var(int n, double radius, Rng& rng) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  }
  a *= radius / spectral_radius(a);
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) l(i, j) = 0.4 * rng.gaussian();
  }
  return VarModel{n, 1, {a}, l * l.transpose() + 0.5 * Matrix::Identity(n, n)};
}

}  // namespace

TEST_CASE("entropy rate closed forms") {
  const VarModel white{1, 1, {Matrix::Zero(1, 1)}, Matrix::Identity(1, 1)};
  const LagCovarianceSet covs = process_covariances(white, 5);
  CHECK(entropy_rate(covs, {0}, 5) == doctest::Approx(0.5 * kLn2PiE).epsilon(1e-9));
  CHECK(0.5 * kLn2PiE == doctest::Approx(1.418939).epsilon(1e-6));

  const LagCovarianceSet source = star_covs(StarVariant::source, 0.0);
  CHECK(entropy_rate(source, {1}, 20) ==
        doctest::Approx(0.5 * (kLn2PiE + std::log(1.09))).epsilon(1e-6));

  const VarModel pair{2, 1, {Matrix::Zero(2, 2)}, Matrix::Identity(2, 2)};
  const LagCovarianceSet pair_covs = process_covariances(pair, 5);
  CHECK(entropy_rate(pair_covs, {0, 1}, 5) == doctest::Approx(kLn2PiE).epsilon(1e-9));
}

TEST_CASE("pairwise information rates in the source star") {
  const LagCovarianceSet covs = star_covs(StarVariant::source, 0.0);

  SUBCASE("hub-leaf closed form") {
    CHECK(mir(covs, {0}, {1}, 20) == doctest::Approx(0.5 * std::log(1.09)).epsilon(1e-6));
  }
  SUBCASE("leaf-leaf shared driver, validated against a long-run estimate") {
    const double analytic = mir(covs, {1}, {2}, 20);
    CHECK(analytic > 0.0);
    const VarModel model = build_star_model({StarVariant::source, 0.3, 0.0});
    const TimeSeries series = simulate(model, 1000000, 1000, 61);
    const VarFit fit = fit_least_squares(series, 1);
    const LagCovarianceSet est = process_covariances(fit.model, 20);
    CHECK(std::abs(mir(est, {1}, {2}, 20) - analytic) < 0.005);
  }
  SUBCASE("independent processes share nothing") {
    const VarModel independent{2, 1, {Matrix::Zero(2, 2)}, Matrix::Identity(2, 2)};
    const LagCovarianceSet ind = process_covariances(independent, 10);
    const double v = mir(ind, {0}, {1}, 10);
    CHECK(v >= 0.0);
    CHECK(v < 1e-9);
  }
  SUBCASE("subsets must be disjoint") {
    CHECK_THROWS_AS(mir(covs, {0, 1}, {1}, 20), InvalidArgument);
  }
}

TEST_CASE("network balance signs for the star configurations") {
  CHECK(oir(star_covs(StarVariant::source, 0.0), 20) > 0.0);
  CHECK(oir(star_covs(StarVariant::sink, 0.0), 20) < 0.0);

  // two-node networks carry no higher-order balance, by construction
  Matrix a(2, 2);
  a << 0.2, 0.4, 0.1, -0.3;
  const VarModel pair{2, 1, {a}, Matrix::Identity(2, 2)};
  CHECK(oir(process_covariances(pair, 10), 10) == 0.0);
}

TEST_CASE("gradient identities") {
  const VarModel independent{4, 1, {Matrix::Zero(4, 4)}, Matrix::Identity(4, 4)};
  const LagCovarianceSet ind = process_covariances(independent, 10);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(oir_gradient(ind, j, 10)) < 1e-9);

  Rng rng(62);
  const VarModel triple = random_stable_var(3, 0.7, rng);
  const LagCovarianceSet covs = process_covariances(triple, 20);
  const double omega = oir(covs, 20);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(oir_gradient(covs, j, 20) - omega) < 1e-10);
  }

  const LagCovarianceSet detached = star_covs(StarVariant::mediator, 0.0);
  CHECK(std::abs(oir_gradient(detached, 2, 20)) < 1e-9);
}

TEST_CASE("link-level balance properties") {
  const LagCovarianceSet covs = star_covs(StarVariant::mediator, 0.3);
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      CHECK(std::abs(local_oir(covs, i, j, 20) - local_oir(covs, j, i, 20)) < 1e-10);
    }
  }

  const LagCovarianceSet detached = star_covs(StarVariant::mediator, 0.0);
  for (int j : {0, 1, 3, 4}) CHECK(std::abs(local_oir(detached, 2, j, 20)) < 1e-9);

  // the hub's receiving links carry net synergy
  CHECK(local_oir(detached, 0, 3, 20) < 0.0);
  CHECK(local_oir(detached, 0, 4, 20) < 0.0);
}

TEST_CASE("single-formula link balance agrees with the three-rate route") {
  Rng rng(63);
  for (const LagCovarianceSet& covs :
       {star_covs(StarVariant::mediator, 0.3), process_covariances(random_stable_var(5, 0.75, rng), 20)}) {
    const int n = covs.n_nodes;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        SubsetIndex rest, not_i;
        for (int k = 0; k < n; ++k) {
          if (k != i && k != j) rest.push_back(k);
          if (k != i) not_i.push_back(k);
        }
        const double three_rates =
            mir(covs, {i}, {j}, 20) + mir(covs, {i}, rest, 20) - mir(covs, {i}, not_i, 20);
        CHECK(std::abs(local_oir(covs, i, j, 20) - three_rates) < 1e-9);
      }
    }
  }
}

TEST_CASE("triplet identity chains the pairwise rates") {
  Rng rng(64);
  const VarModel model = random_stable_var(3, 0.7, rng);
  const LagCovarianceSet covs = process_covariances(model, 20);
  const double omega = oir(covs, 20);
  // all three link values and the two-vs-one chain equal the triple balance
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& p : pairs) {
    CHECK(std::abs(local_oir(covs, p[0], p[1], 20) - omega) < 1e-9);
  }
  const double chain =
      mir(covs, {0}, {1}, 20) + mir(covs, {2}, {1}, 20) - mir(covs, {0, 2}, {1}, 20);
  CHECK(std::abs(chain - omega) < 1e-9);
}

TEST_CASE("full analysis of independent processes is flat") {
  Matrix cov = Matrix::Zero(5, 5);
  cov.diagonal() << 1.0, 2.0, 0.5, 4.0, 1.5;
  const VarModel model{5, 1, {Matrix::Zero(5, 5)}, cov};
  const HoiValues values = analyze(model, 20);
  for (int j = 0; j < 5; ++j) {
    CHECK(values.entropy_rates[j] ==
          doctest::Approx(0.5 * (kLn2PiE + std::log(cov(j, j)))).epsilon(1e-9));
    CHECK(std::abs(values.gradient[j]) < 1e-9);
  }
  for (int k = 0; k < n_pairs(5); ++k) {
    CHECK(values.mir[k] < 1e-9);
    CHECK(values.mir[k] >= 0.0);
    CHECK(std::abs(values.local_oir[k]) < 1e-9);
  }
  CHECK(std::abs(values.oir) < 1e-9);
}

TEST_CASE("source star is redundancy-dominated everywhere") {
  const HoiValues values = analyze(build_star_model({StarVariant::source, 0.3, 0.0}), 20);
  for (double g : values.gradient) CHECK(g > 0.0);
  for (double l : values.local_oir) CHECK(l > 0.0);
  CHECK(values.oir > 0.0);
}

TEST_CASE("removing one node decomposes the network balance") {
  Rng rng(65);
  for (const VarModel& model : {build_star_model({StarVariant::mediator, 0.3, 0.3}),
                                build_star_model({StarVariant::sink, 0.3, 0.0}),
                                random_stable_var(5, 0.8, rng)}) {
    const LagCovarianceSet covs = process_covariances(model, 20);
    const HoiValues values = analyze_covariances(covs, 20);
    for (int j = 0; j < 5; ++j) {
      SubsetIndex rest;
      for (int k = 0; k < 5; ++k) {
        if (k != j) rest.push_back(k);
      }
      const double partial = oir(covs, rest, 20);
      CHECK(std::abs(values.oir - partial - values.gradient[j]) < 1e-9);
    }
  }
}

TEST_CASE("scaling one node shifts its entropy rate and nothing else") {
  const double c = 2.5;
  VarModel model = build_star_model({StarVariant::mediator, 0.3, 0.3});
  VarModel scaled = model;
  const int node = 1;
  scaled.coeffs[0].row(node) *= c;
  scaled.coeffs[0].col(node) /= c;
  scaled.innovation_cov.row(node) *= c;
  scaled.innovation_cov.col(node) *= c;

  const HoiValues base = analyze(model, 20);
  const HoiValues shifted = analyze(scaled, 20);
  for (int j = 0; j < 5; ++j) {
    const double expected = base.entropy_rates[j] + (j == node ? std::log(c) : 0.0);
    CHECK(shifted.entropy_rates[j] == doctest::Approx(expected).epsilon(1e-9));
    CHECK(std::abs(shifted.gradient[j] - base.gradient[j]) < 1e-9);
  }
  for (int k = 0; k < n_pairs(5); ++k) {
    CHECK(std::abs(shifted.mir[k] - base.mir[k]) < 1e-9);
    CHECK(std::abs(shifted.local_oir[k] - base.local_oir[k]) < 1e-9);
  }
  CHECK(std::abs(shifted.oir - base.oir) < 1e-9);
}

TEST_CASE("relabeling nodes permutes the outputs") {
  const VarModel model = build_star_model({StarVariant::mediator, 0.3, 0.2});
  const int n = 5;
  const int perm[5] = {3, 0, 4, 1, 2};  // new index of each old node

  VarModel relabeled = model;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      relabeled.coeffs[0](perm[i], perm[j]) = model.coeffs[0](i, j);
      relabeled.innovation_cov(perm[i], perm[j]) = model.innovation_cov(i, j);
    }
  }

  const HoiValues base = analyze(model, 20);
  const HoiValues mapped = analyze(relabeled, 20);
  for (int j = 0; j < n; ++j) {
    CHECK(mapped.gradient[perm[j]] == doctest::Approx(base.gradient[j]).epsilon(1e-9));
    CHECK(mapped.entropy_rates[perm[j]] == doctest::Approx(base.entropy_rates[j]).epsilon(1e-9));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double expected = base.local_oir[pair_index(i, j, n)];
      CHECK(mapped.local_oir[pair_index(perm[i], perm[j], n)] ==
            doctest::Approx(expected).epsilon(1e-9));
    }
  }
  CHECK(mapped.oir == doctest::Approx(base.oir).epsilon(1e-9));
}
