#include <doctest.h>

#include <cmath>

#include "doflab/error.hpp"
#include "doflab/omega.hpp"

using namespace doflab;

TEST_CASE("reference optimism values") {
  CHECK(reference_optimism(0, 100, 1.0) == 0.0);
  CHECK(reference_optimism(10, 100, 1.0) == doctest::Approx(0.1 + 10.0 / 89.0).epsilon(1e-14));
  CHECK(reference_optimism(10, 100, 1.0) == doctest::Approx(0.212360).epsilon(1e-6));
  CHECK(reference_optimism(50, 100, 2.0) == doctest::Approx(3.040816).epsilon(1e-6));
  CHECK_THROWS_AS(reference_optimism(99, 100, 1.0), InvalidArgument);
  CHECK_THROWS_AS(reference_optimism(-1, 100, 1.0), InvalidArgument);
}

TEST_CASE("omega_n values") {
  CHECK(omega_n(0.0, 100) == 0.0);
  CHECK(std::abs(omega_n(reference_optimism(10, 100, 1.0), 100) - 10.0) < 1e-9);
  CHECK(std::abs(omega_n(1e6, 100) - 99.0) < 1e-3);
  CHECK(omega_n(1e300, 100) <= 99.0);
  CHECK_THROWS_AS(omega_n(-0.1, 100), InvalidArgument);
  CHECK_THROWS_AS(omega_n(1.0, 1), InvalidArgument);
}

TEST_CASE("omega_n round trip on a dense grid") {
  for (std::size_t n : {10u, 100u, 10000u}) {
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double d = (static_cast<double>(n) - 2.0) * i / 400.0;
      worst = std::max(worst, std::abs(omega_n(reference_optimism(d, n, 1.0), n) - d));
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("omega_n increasing and concave") {
  const std::size_t n = 50;
  double prev = omega_n(0.0, n), prev_step = INFINITY;
  for (int i = 1; i <= 2000; ++i) {
    const double cur = omega_n(i * 0.01, n);
    const double step = cur - prev;
    CHECK(step > 0.0);
    CHECK(step <= prev_step + 1e-12);
    prev = cur;
    prev_step = step;
  }
}

TEST_CASE("omega values") {
  CHECK(omega(0.0) == 0.0);
  CHECK(omega(1.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(omega(0.01) == doctest::Approx(0.0049999).epsilon(1e-4));
  CHECK(omega(0.01) < 0.005);
  CHECK(omega(1e12) < 1.0);
  CHECK(omega(1e12) > 1.0 - 1e-11);
  CHECK_THROWS_AS(omega(-1.0), InvalidArgument);
  // Inverse of u + u/(1 − u).
  for (double u : {0.05, 0.3, 0.7, 0.95}) CHECK(omega(u + u / (1.0 - u)) == doctest::Approx(u).epsilon(1e-13));
}

TEST_CASE("omega_n over n approaches omega") {
  for (double x : {0.5, 2.0, 10.0}) {
    double prev = INFINITY;
    for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
      const double gap = std::abs(omega_n(x, n) / static_cast<double>(n) - omega(x));
      CHECK(gap < prev);
      CHECK(gap < 2.0 / static_cast<double>(n));
      prev = gap;
    }
  }
}

TEST_CASE("derivatives match finite differences") {
  for (double x : {0.1, 1.0, 5.0}) {
    const double h = 1e-6;
    CHECK(omega_derivative(x) == doctest::Approx((omega(x + h) - omega(x - h)) / (2 * h)).epsilon(1e-6));
    CHECK(omega_n_derivative(x, 80) ==
          doctest::Approx((omega_n(x + h, 80) - omega_n(x - h, 80)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("df from optimism") {
  CHECK(df_from_optimism(0.0, 1.0, 100) == 0.0);
  CHECK(df_from_optimism(-0.3, 1.0, 100) == 0.0);
  CHECK(df_from_optimism(reference_optimism(7, 60, 0.5), 0.5, 60) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(df_from_optimism(1e9, 1.0, 100) <= 99.0);
  CHECK_THROWS_AS(df_from_optimism(1.0, 0.0, 100), InvalidArgument);
}
