#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "quench/core.hpp"
#include "quench/errors.hpp"

using namespace quench;

TEST_CASE("normal modes are square roots of the spring constants") {
  auto [m1, m2] = normal_modes({1, 1, 1, 1});
  CHECK(m1.omega_i == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m2.omega_f == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));

  std::tie(m1, m2) = normal_modes({3, 6, 3, 6});
  CHECK(m1.omega_i == doctest::Approx(std::sqrt(3.0)));
  CHECK(m1.omega_f == doctest::Approx(std::sqrt(6.0)));
  CHECK(m2.omega_i == doctest::Approx(3.0));
  CHECK(m2.omega_f == doctest::Approx(std::sqrt(18.0)));

  std::tie(m1, m2) = normal_modes({1, 1, -0.45, -0.45});
  CHECK(m2.omega_i == doctest::Approx(std::sqrt(0.1)).epsilon(1e-14));
}

TEST_CASE("non-positive radicands are domain errors") {
  CHECK_THROWS_AS(normal_modes({1, 1, -0.6, 1}), DomainError);
  CHECK_THROWS_AS(normal_modes({1, 1, 1, -0.5}), DomainError);
  CHECK_THROWS_AS(normal_modes({0, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(mode_thermo({-1, 1}, 1.0), DomainError);
}

TEST_CASE("reference values for a 3 to 5 quench") {
  const auto mt = mode_thermo({3, 5}, 0.5);
  CHECK(mt.b == doctest::Approx(4.942387).epsilon(2e-7));
  CHECK(mt.gamma_E == doctest::Approx(0.680688).epsilon(2e-6));
  CHECK(mt.a_cap == doctest::Approx(2.430188).epsilon(2e-6));
  CHECK(mt.a_plus > mt.a_minus);
  CHECK(mt.a_minus > 0);
  CHECK(std::abs(mt.eps * mt.eps / (mt.a_plus * mt.a_minus) - 1) < 1e-12);
  const double sp = std::sqrt(mt.a_plus), sm = std::sqrt(mt.a_minus);
  CHECK(std::abs(mt.xi - (sp - sm) / (sp + sm)) < 1e-12);
  const double p0 = purity_single(mt);
  CHECK(std::abs(p0 - std::sqrt(mt.a_minus / mt.a_plus)) < 1e-14);
  CHECK(std::abs(mt.xi - (1 - p0) / (1 + p0)) < 1e-12);
}

TEST_CASE("constant frequency reduces to the ordinary thermal state") {
  const auto mt = mode_thermo({2, 2}, 1.0);
  CHECK(mt.b == 1.0);
  CHECK(mt.gamma_E == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(mt.a_cap == 0.0);
  CHECK(mt.a_plus == doctest::Approx(2.0 / std::tanh(1.0)).epsilon(1e-14));
  CHECK(mt.a_minus == doctest::Approx(2.0 * std::tanh(1.0)).epsilon(1e-14));
  CHECK(mt.xi == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  for (double wb : {1e-6, 0.1, 1.0, 10.0, 100.0, 299.0}) {
    const auto m = mode_thermo({1.7, 1.7}, wb / 1.7);
    CHECK(std::abs(m.b - 1) < 1e-15);
    CHECK(std::abs(m.gamma_E - wb) <= 8e-16 * wb);
    CHECK(std::abs(m.a_cap) < 1e-15);
  }
}

TEST_CASE("small beta approaches the initial conditions") {
  const auto mt = mode_thermo({3, 5}, 1e-7);
  CHECK(std::abs(mt.b - 1) < 1e-12);
  CHECK(std::abs(mt.gamma_E) < 1e-6);
  CHECK(std::abs(mt.a_cap) < 1e-5);
  CHECK(purity_single(mt) < 1e-5);
  CHECK_THROWS_AS(mode_thermo({3, 5}, 1e-9), DomainError);
  CHECK_THROWS_AS(mode_thermo({3, 5}, 0.0), DomainError);
}

TEST_CASE("purity and partition function") {
  const auto mt = mode_thermo({1, 1}, 1.0);
  CHECK(purity_single(mt) == doctest::Approx(std::tanh(0.5)).epsilon(1e-14));
  CHECK(partition_single(mt) == doctest::Approx(1 / (2 * std::sinh(0.5))).epsilon(1e-13));
  for (double w : {0.5, 2.0, 7.0}) {
    for (double beta : {0.01, 0.3, 2.0, 9.0}) {
      const auto m = mode_thermo({w, w}, beta);
      CHECK(partition_single(m) == doctest::Approx(1 / (2 * std::sinh(w * beta / 2))).epsilon(1e-12));
    }
  }
  const auto cold = mode_thermo({1, 1}, 40.0);
  CHECK(partition_single(cold) == doctest::Approx(std::exp(-20.0)).epsilon(1e-12));
}

TEST_CASE("large omega beta switches to the asymptotic branch continuously") {
  const ModeQuench mode{3, 5};
  const double x = kAsymptoticThreshold;
  const auto lo = mode_thermo(mode, (x - 1e-9) / 5), hi = mode_thermo(mode, (x + 1e-9) / 5);
  CHECK(hi.b / lo.b == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hi.a_cap == doctest::Approx(lo.a_cap).epsilon(1e-12));
  CHECK(hi.a_minus == doctest::Approx(lo.a_minus).epsilon(1e-12));
  CHECK(hi.xi == doctest::Approx(lo.xi).epsilon(1e-9));
  const auto far = mode_thermo(mode, 1000.0);
  CHECK(std::isfinite(far.a_minus));
  CHECK(far.xi >= 0.0);
}

TEST_CASE("invariants over a parameter grid") {
  for (double wi : {0.3, 1.0, 3.0}) {
    for (double wf : {0.3, 1.0, 3.0, 7.0}) {
      const ModeQuench mode{wi, wf};
      const auto bs = downward_beta_star(mode);
      for (int k = 0; k < 40; ++k) {
        double beta = 0.01 * std::pow(1.25, k);
        if (bs && beta >= 0.99 * *bs) continue;
        const auto mt = mode_thermo(mode, beta);
        INFO("wi=" << wi << " wf=" << wf << " beta=" << beta);
        // a+ - a- can drop below one ulp of a- deep in the cold regime; xi carries the gap there.
        CHECK(mt.a_plus >= mt.a_minus);
        CHECK(mt.a_minus > 0);
        CHECK(mt.xi > 0);
        CHECK(mt.xi < 1);
        if (wf >= wi) CHECK(mt.b >= 1.0);
        const double p0 = purity_single(mt);
        CHECK(std::abs(mt.xi - (1 - p0) / (1 + p0)) < 1e-12);
        CHECK(std::abs(mt.eps * mt.eps / (mt.a_plus * mt.a_minus) - 1) < 1e-12);
      }
    }
  }
}

TEST_CASE("outputs are bit-identical for identical inputs") {
  const auto a = mode_thermo({3, 5}, 0.77), b = mode_thermo({3, 5}, 0.77);
  CHECK(a.xi == b.xi);
  CHECK(a.a_plus == b.a_plus);
}

TEST_CASE("downward quench domain") {
  const ModeQuench mode{5, 3};
  const auto bs = downward_beta_star(mode);
  REQUIRE(bs.has_value());
  CHECK(std::cosh(2 * 3 * *bs) == doctest::Approx(34.0 / 16.0).epsilon(1e-13));
  CHECK_NOTHROW(mode_thermo(mode, 0.9 * *bs));
  try {
    mode_thermo(mode, 1.1 * *bs);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    REQUIRE(e.beta_star().has_value());
    CHECK(*e.beta_star() == doctest::Approx(*bs));
  }
  CHECK_THROWS_AS(mode_thermo(mode, *bs * (1 - 1e-7)), DomainError);
  CHECK_FALSE(downward_beta_star({3, 5}).has_value());
  CHECK_FALSE(downward_beta_star({3, 3}).has_value());
}

TEST_CASE("temperature conversion") {
  CHECK(Temperature::from_beta(4.0).T == 0.25);
  CHECK(Temperature{0.5}.beta() == 2.0);
  CHECK_THROWS_AS(Temperature{0.0}.beta(), DomainError);
}

TEST_CASE("real-time closed forms") {
  const ModeQuench mode{3, 5};
  CHECK(realtime_b(mode, 0.0) == 1.0);
  const double t = 0.3;
  double g = std::atan(0.6 * std::tan(1.5));
  CHECK(realtime_gamma(mode, t) == doctest::Approx(g).epsilon(1e-13));
  // Past the first pole of tan the continuous branch adds pi.
  const double t2 = 0.5;
  g = std::atan(0.6 * std::tan(2.5)) + M_PI;
  CHECK(realtime_gamma(mode, t2) == doctest::Approx(g).epsilon(1e-13));
  CHECK(euclidean_b(mode, 0.5) == doctest::Approx(4.942387).epsilon(2e-7));
  CHECK(euclidean_gamma(mode, 0.5) == doctest::Approx(0.680688).epsilon(2e-6));
}
