#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "hoinet/numerics.hpp"
#include "hoinet/rng.hpp"

using namespace hoinet;

namespace {

Matrix random_spd(int n, Rng& rng) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  }
  return a * a.transpose() + 0.1 * Matrix::Identity(n, n);
}

Matrix random_stable(int n, double radius, Rng& rng) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  }
  return a * (radius / spectral_radius(a));
}

}  // namespace

TEST_CASE("log_det_pd closed forms") {
  CHECK(log_det_pd(Matrix::Identity(3, 3)) == doctest::Approx(0.0).epsilon(1e-12));
  Matrix d = 2.0 * Matrix::Identity(2, 2);
  CHECK(log_det_pd(d) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("log_det_pd matches eigenvalue oracle") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix m = random_spd(4, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const double expected = es.eigenvalues().array().log().sum();
    CHECK(std::abs(log_det_pd(m) - expected) < 1e-10);
  }
}

TEST_CASE("log_det_pd is additive over block diagonals") {
  Rng rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix a = random_spd(3, rng);
    Matrix b = random_spd(3, rng);
    Matrix block = Matrix::Zero(6, 6);
    block.topLeftCorner(3, 3) = a;
    block.bottomRightCorner(3, 3) = b;
    CHECK(std::abs(log_det_pd(a) + log_det_pd(b) - log_det_pd(block)) < 1e-10);
  }
}

TEST_CASE("log_det_pd rejects bad inputs") {
  Matrix indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(log_det_pd(indefinite), NotPositiveDefinite);

  Matrix asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(log_det_pd(asym), InvalidArgument);
}

TEST_CASE("lyapunov solve: zero dynamics returns q") {
  Rng rng(13);
  Matrix q = random_spd(3, rng);
  Matrix s = solve_discrete_lyapunov(Matrix::Zero(3, 3), q);
  CHECK((s - q).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lyapunov solve: scalar geometric series") {
  Matrix a(1, 1), q(1, 1);
  a << 0.5;
  q << 1.0;
  CHECK(solve_discrete_lyapunov(a, q)(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("lyapunov solve matches fixed-point iteration oracle") {
  Rng rng(14);
  for (int rep = 0; rep < 5; ++rep) {
    Matrix a = random_stable(3, 0.7, rng);
    Matrix q = random_spd(3, rng);
    Matrix s = solve_discrete_lyapunov(a, q);

    CHECK((s - a * s * a.transpose() - q).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() < 1e-12);

    Matrix fixed_point = q;
    for (int it = 0; it < 400; ++it) fixed_point = a * fixed_point * a.transpose() + q;
    CHECK((s - fixed_point).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("lyapunov output is positive semidefinite for psd q") {
  Rng rng(15);
  for (int rep = 0; rep < 5; ++rep) {
    Matrix a = random_stable(4, 0.8, rng);
    Matrix q = Matrix::Zero(4, 4);
    q(0, 0) = 1.0;  // rank-one forcing
    Matrix s = solve_discrete_lyapunov(a, q);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("lyapunov rejects unstable systems") {
  CHECK_THROWS_AS(solve_discrete_lyapunov(Matrix::Identity(2, 2), Matrix::Identity(2, 2)),
                  UnstableSystem);
}

TEST_CASE("spectral radius closed forms") {
  CHECK(spectral_radius(Matrix::Identity(2, 2)) == doctest::Approx(1.0));

  Matrix nilpotent = Matrix::Zero(5, 5);
  for (int i = 1; i < 5; ++i) {
    for (int j = 0; j < i; ++j) nilpotent(i, j) = 2.0;
  }
  CHECK(spectral_radius(nilpotent) == doctest::Approx(0.0).epsilon(1e-12));

  Matrix companion(1, 1);
  companion << 0.9;
  CHECK(spectral_radius(companion) == doctest::Approx(0.9));
}

TEST_CASE("spectral radius is absolutely homogeneous") {
  Rng rng(16);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix a(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a(i, j) = rng.gaussian();
    }
    const double c = 2.0 * rng.uniform() - 1.0;
    CHECK(std::abs(spectral_radius(c * a) - std::abs(c) * spectral_radius(a)) < 1e-8);
  }
}
