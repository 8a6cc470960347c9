// Tests for the Laplace-transform layer: inversion, the scale map, the
// functional-equation residual, PGF-ness verdicts, semigroup scans, and the
// continuous-time limit transform.  Closed forms used as oracles are
// independent of the code paths under test (direct algebra, not the library
// bisection/series machinery).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nstable/families.hpp"
#include "nstable/series.hpp"
#include "nstable/transform.hpp"

namespace {

std::vector<double> s_grid() {
  std::vector<double> s;
  for (int i = 1; i <= 100; ++i) s.push_back(0.01 * i);
  return s;
}

}  // namespace

TEST_CASE("transform inversion matches closed inverses") {
  const auto exp1 = nstable::transform_by_name("exp1");
  const auto delta = nstable::transform_by_name("delta1");
  for (double s : {0.05, 0.3, 0.5, 0.77, 0.99, 1.0}) {
    CHECK(nstable::laplace_inverse(exp1, s) ==
          doctest::Approx((1.0 - s) / s).epsilon(1e-12));
    CHECK(nstable::laplace_inverse(delta, s) ==
          doctest::Approx(-std::log(s)).epsilon(1e-12));
  }
  // Round trip through eval on a second catalog entry.
  const auto cosh_t = nstable::transform_by_name("cosh");
  for (double u : {0.1, 1.0, 4.0, 9.0}) {
    const double s = cosh_t.eval(u);
    CHECK(nstable::laplace_inverse(cosh_t, s) ==
          doctest::Approx(u).epsilon(1e-10));
  }
  CHECK_THROWS_AS(nstable::laplace_inverse(exp1, 0.0), std::domain_error);
  CHECK_THROWS_AS(nstable::laplace_inverse(exp1, 1.5), std::domain_error);
}

TEST_CASE("scale map reproduces the closed geometric form for Exp(1)") {
  // L(u) = 1/(1+u): phi_c(s) = L(c(1-s)/s) = s/(c - (c-1)s), the geometric
  // PGF with p = 1/c.
  const auto exp1 = nstable::transform_by_name("exp1");
  for (double c : {2.0, 3.5}) {
    const auto geo = nstable::geometric(1.0 / c);
    for (double s : s_grid()) {
      CHECK(std::abs(nstable::scale_map(exp1, c, s) - geo.eval(s)) < 1e-12);
    }
  }
  // Identity at c = 1.
  for (double s : s_grid()) {
    CHECK(std::abs(nstable::scale_map(exp1, 1.0, s) - s) < 1e-12);
  }
  CHECK_THROWS_AS(nstable::scale_map(exp1, 0.5, 0.5), std::domain_error);
}

TEST_CASE("scale map of the walk-hitting limit gives the barrier-2 member") {
  // L(u) = 1/cosh(sqrt(2u)) at c = 4: phi_4(s) = s^2/(2 - s^2).
  const auto cosh_t = nstable::transform_by_name("cosh");
  for (double s : s_grid()) {
    const double want = s * s / (2.0 - s * s);
    CHECK(std::abs(nstable::scale_map(cosh_t, 4.0, s) - want) < 1e-12);
  }
}

TEST_CASE("scale map of gamma transforms gives lattice members") {
  // L(u) = (1+u/rate)^(-1/2) at c = 2 has phi_2(s) = the k=2 lattice member
  // with p = 1/2, independent of the rate.
  for (double rate : {0.5, 2.0}) {
    const auto g = nstable::transform_by_name(
        "gamma:shape=0.5,rate=" + std::to_string(rate));
    const auto nb = nstable::negbin_kM(0.5, 2);
    for (double s : s_grid()) {
      CHECK(std::abs(nstable::scale_map(g, 2.0, s) - nb.eval(s)) < 1e-11);
    }
  }
}

TEST_CASE("functional equation residual vanishes for matched pairs") {
  const auto exp1 = nstable::transform_by_name("exp1");
  const auto geo = nstable::geometric(0.5);
  CHECK(nstable::poincare_residual(geo.eval, exp1, 2.0) < 1e-10);

  const auto g = nstable::transform_by_name("gamma:shape=0.5,rate=0.5");
  const auto nb = nstable::negbin_kM(0.5, 2);
  CHECK(nstable::poincare_residual(nb.eval, g, 2.0) < 1e-10);

  // Mismatched pair: the residual is macroscopic.
  CHECK(nstable::poincare_residual(geo.eval, exp1, 3.0) > 1e-2);
}

TEST_CASE("pgfness verdicts split the catalog as expected") {
  const auto exp1 = nstable::transform_by_name("exp1");
  for (double c : {1.25, 1.5, 2.0, std::exp(1.0), 4.0}) {
    CHECK(nstable::pgfness_of_map(exp1, c).is_pgf);
  }

  const auto delta = nstable::transform_by_name("delta1");
  CHECK(nstable::pgfness_of_map(delta, 2.0).is_pgf);
  CHECK(nstable::pgfness_of_map(delta, 3.0).is_pgf);
  CHECK_FALSE(nstable::pgfness_of_map(delta, 1.5).is_pgf);

  const auto cosh_t = nstable::transform_by_name("cosh");
  CHECK(nstable::pgfness_of_map(cosh_t, 4.0).is_pgf);
  for (double c : {2.0, 3.0, 5.0}) {
    CHECK_FALSE(nstable::pgfness_of_map(cosh_t, c).is_pgf);
  }

  // Fractional shape below 1 with non-square-root index: never a PGF.
  const auto g23 = nstable::transform_by_name("gamma:shape=0.666666666666666666");
  for (double c : {1.5, 2.0, 3.0}) {
    CHECK_FALSE(nstable::pgfness_of_map(g23, c).is_pgf);
  }
  // Square-root shape maps to s/sqrt(c - (c-1)s^2), whose central-binomial
  // expansion is a genuine mass series for every c >= 1.
  const auto g12 = nstable::transform_by_name("gamma:shape=0.5");
  CHECK(nstable::pgfness_of_map(g12, 4.0).is_pgf);
  CHECK(nstable::pgfness_of_map(g12, 2.5).is_pgf);

  // Heavy-tailed interpolation accepts everything (stable subordination).
  const auto ml = nstable::transform_by_name("mittag-leffler:alpha=0.6");
  for (double c : {1.5, 2.0, 3.0}) {
    CHECK(nstable::pgfness_of_map(ml, c).is_pgf);
  }
}

TEST_CASE("semigroup scans recover the catalog classifications") {
  std::vector<double> naturals;
  for (int c = 1; c <= 16; ++c) naturals.push_back(c);

  const auto cosh_scan =
      nstable::semigroup_scan(nstable::transform_by_name("cosh"), naturals);
  CHECK(cosh_scan.accepted == std::vector<double>{1.0, 4.0, 9.0, 16.0});
  CHECK(cosh_scan.classification == nstable::SemigroupClass::Squares);
  CHECK(cosh_scan.closure_ok);

  const auto delta_scan = nstable::semigroup_scan(
      nstable::transform_by_name("delta1"), {1.0, 1.5, 2.0, 2.5, 3.0});
  CHECK(delta_scan.accepted == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(delta_scan.classification == nstable::SemigroupClass::Naturals);

  const auto exp_scan = nstable::semigroup_scan(
      nstable::transform_by_name("exp1"),
      {1.0, 1.25, 1.5, 2.0, std::exp(1.0), 4.0});
  CHECK(exp_scan.accepted.size() == 6);
  CHECK(exp_scan.classification == nstable::SemigroupClass::FullInterval);

  const auto g23_scan = nstable::semigroup_scan(
      nstable::transform_by_name("gamma:shape=0.666666666666666666"),
      {1.5, 2.0, 3.0});
  CHECK(g23_scan.accepted.empty());
  CHECK(g23_scan.classification == nstable::SemigroupClass::Trivial);

  CHECK(nstable::to_string(nstable::SemigroupClass::Squares) ==
        std::string("Squares"));
}

TEST_CASE("matched members commute and cross-family members do not") {
  const auto g1 = nstable::geometric(0.5);
  const auto g2 = nstable::geometric(0.25);
  CHECK(nstable::commute_gap(g1.eval, g2.eval) < 1e-10);

  const auto w2 = nstable::chebyshev_hitting(2);
  const auto w3 = nstable::chebyshev_hitting(3);
  CHECK(nstable::commute_gap(w2.eval, w3.eval) < 1e-10);

  const double cross = nstable::commute_gap(g1.eval, w2.eval);
  CHECK(cross > 1e-3);
}

TEST_CASE("continuous-time limit transform inverts the known closed forms") {
  // Pure doubling: L(u) = 1/(1+u), so Linv(s) = (1-s)/s.
  const auto yule = nstable::yule_H();
  for (double s : {0.05, 0.3, 0.6, 0.9, 0.99}) {
    CHECK(nstable::ct_laplace_inverse(yule, s) ==
          doctest::Approx((1.0 - s) / s).epsilon(1e-8));
  }
  // Shifted-geometric brood: L(u) = 2/(1+sqrt(1+4u)) inverts to (1-s)/s^2.
  const auto shifted = nstable::shifted_geom_H();
  for (double s : {0.1, 0.4, 0.7, 0.95}) {
    CHECK(nstable::ct_laplace_inverse(shifted, s) ==
          doctest::Approx((1.0 - s) / (s * s)).epsilon(1e-8));
  }
  // Infinite-mean brood has no mean-one normalization.
  CHECK_THROWS_AS(nstable::ct_laplace_inverse(nstable::neveu_H(), 0.5),
                  std::domain_error);
  CHECK_THROWS_AS(nstable::ct_laplace_inverse(yule, 1.5), std::domain_error);
}

TEST_CASE("continuous-time limit transform evaluates forward correctly") {
  const auto shifted = nstable::shifted_geom_H();
  for (double u = 0.0; u <= 5.0; u += 0.25) {
    const double want = 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * u));
    CHECK(nstable::ct_laplace_eval(shifted, u) ==
          doctest::Approx(want).epsilon(1e-8));
  }
  const auto yule = nstable::yule_H();
  for (double u : {0.5, 2.0, 10.0}) {
    CHECK(nstable::ct_laplace_eval(yule, u) ==
          doctest::Approx(1.0 / (1.0 + u)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(nstable::ct_laplace_eval(yule, -1.0), std::domain_error);
}

TEST_CASE("scale-map flows approach the transform along growing scales") {
  const auto exp1 = nstable::transform_by_name("exp1");
  const auto gaps = nstable::scaling_limit_gaps(exp1, {10.0, 100.0, 1000.0});
  REQUIRE(gaps.size() == 3);
  CHECK(gaps[0] > gaps[1]);
  CHECK(gaps[1] > gaps[2]);
  CHECK(gaps[2] < 2e-3);

  const auto cosh_t = nstable::transform_by_name("cosh");
  const auto cosh_gaps =
      nstable::scaling_limit_gaps(cosh_t, {4.0, 16.0, 256.0, 65536.0});
  CHECK(cosh_gaps.back() < 1e-2);
  for (std::size_t i = 1; i < cosh_gaps.size(); ++i) {
    CHECK(cosh_gaps[i] < cosh_gaps[i - 1]);
  }
  CHECK_THROWS_AS(nstable::scaling_limit_gaps(exp1, {0.5}), std::domain_error);
}

TEST_CASE("mean recovery from the transform is exact for catalog entries") {
  const auto exp1 = nstable::transform_by_name("exp1");
  const std::vector<double> us = {0.2, 0.1, 0.05, 0.025};
  CHECK(nstable::laplace_mean_limit(exp1.eval, us) ==
        doctest::Approx(1.0).epsilon(1e-4));
  const auto g = nstable::transform_by_name("gamma:shape=2,rate=2");
  CHECK(nstable::laplace_mean_limit(g.eval, us) ==
        doctest::Approx(1.0).epsilon(1e-4));
  const auto cosh_t = nstable::transform_by_name("cosh");
  CHECK(nstable::laplace_mean_limit(cosh_t.eval, us) ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(nstable::laplace_mean_limit(exp1.eval, {}),
                  std::domain_error);
  CHECK_THROWS_AS(nstable::laplace_mean_limit(exp1.eval, {-1.0}),
                  std::domain_error);
}

TEST_CASE("transform catalog lookup validates names and parameters") {
  CHECK(nstable::transform_names().size() == 6);
  CHECK_THROWS_AS(nstable::transform_by_name("nosuch"),
                  std::invalid_argument);
  CHECK_THROWS_AS(nstable::transform_by_name("exp1:p=1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(nstable::transform_by_name("gamma"), std::invalid_argument);
  CHECK_THROWS_AS(nstable::transform_by_name("gamma:shape=-1"),
                  std::invalid_argument);
  // Default rate equals shape (mean-one normalization).
  const auto g = nstable::transform_by_name("gamma:shape=2");
  CHECK(g.eval(1.0) == doctest::Approx(std::pow(1.5, -2.0)).epsilon(1e-14));
  // Inversion beyond the searchable u-range reports a domain error.
  const auto exp1 = nstable::transform_by_name("exp1");
  CHECK_THROWS_AS(nstable::laplace_inverse(exp1, 1e-300),
                  std::domain_error);
}
