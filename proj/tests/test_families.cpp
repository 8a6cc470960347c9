// Tests for the PGF family catalog and the branching generating
// distributions.  Closed-form members are checked coefficient-by-coefficient
// against independent mass formulas, samplers against their PGFs, and the
// continuous-time families against their composition rule.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nstable/families.hpp"
#include "nstable/rng.hpp"
#include "nstable/series.hpp"
#include "nstable/stats.hpp"

namespace {

const std::vector<double> kSGrid = {0.0, 0.1, 0.25, 0.4, 0.5,
                                    0.6, 0.75, 0.9, 0.97, 1.0};

double eval_gap(const nstable::PgfFamily& a, const nstable::PgfFamily& b) {
  double worst = 0.0;
  for (double s : kSGrid) worst = std::max(worst, std::abs(a.eval(s) - b.eval(s)));
  return worst;
}

// Largest |F_t(F_u(s)) - F_{t+u}(s)| over the s-grid.
double composition_gap(const std::function<nstable::PgfFamily(double)>& member,
                       double t, double u) {
  const auto ft = member(t);
  const auto fu = member(u);
  const auto fsum = member(t + u);
  double worst = 0.0;
  for (double s : kSGrid) {
    worst = std::max(worst, std::abs(ft.eval(fu.eval(s)) - fsum.eval(s)));
  }
  return worst;
}

// Empirical frequencies of a discrete sampler.
std::map<std::uint64_t, double> empirical_masses(
    const std::function<std::uint64_t(nstable::SplitRng&)>& sample,
    std::size_t n, std::uint64_t seed) {
  nstable::SplitRng rng = nstable::SplitRng(seed).stream(5);
  std::map<std::uint64_t, double> freq;
  for (std::size_t i = 0; i < n; ++i) freq[sample(rng)] += 1.0;
  for (auto& kv : freq) kv.second /= static_cast<double>(n);
  return freq;
}

void check_mass(const std::map<std::uint64_t, double>& freq, std::uint64_t k,
                double want, std::size_t n) {
  const auto it = freq.find(k);
  const double got = it == freq.end() ? 0.0 : it->second;
  const double se = std::sqrt(want * (1.0 - want) / static_cast<double>(n));
  INFO("mass at ", k, ": got ", got, ", want ", want);
  CHECK(std::abs(got - want) <= 4.0 * se + 1e-12);
}

}  // namespace

TEST_CASE("geometric family has the closed evaluation, mean, and masses") {
  const auto g = nstable::geometric(0.3);
  CHECK(g.mean == doctest::Approx(1.0 / 0.3));
  CHECK(g.eval(0.0) == 0.0);
  CHECK(g.eval(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  const auto series = nstable::series_of(g, 40);
  CHECK(series.coeffs[0] == 0.0);
  double mass = 0.3;
  for (std::size_t n = 1; n <= 40; ++n) {
    CHECK(series.coeffs[n] == doctest::Approx(mass).epsilon(1e-13));
    mass *= 0.7;
  }
  // Degenerate edge: p = 1 is the point mass at 1 (the identity member).
  const auto one = nstable::geometric(1.0);
  for (double s : kSGrid) CHECK(one.eval(s) == doctest::Approx(s).epsilon(1e-15));
  CHECK_THROWS_AS(nstable::geometric(0.0), std::invalid_argument);
  CHECK_THROWS_AS(nstable::geometric(1.5), std::invalid_argument);
}

TEST_CASE("negbin lattice masses match the binomial-series oracle") {
  const double p = 0.4;
  const int k = 3;
  const auto f = nstable::negbin_kM(p, k);
  CHECK(f.mean == doctest::Approx(1.0 / p));
  const auto series = nstable::series_of(f, 61);
  // Mass at 1 + k*m is Gamma(m + 1/k)/(Gamma(1/k) m!) p^(1/k) (1-p)^m.
  for (std::size_t m = 0; m <= 20; ++m) {
    const double lg = std::lgamma(static_cast<double>(m) + 1.0 / k) -
                      std::lgamma(1.0 / k) -
                      std::lgamma(static_cast<double>(m) + 1.0);
    const double want = std::exp(lg + std::log(p) / k +
                                 static_cast<double>(m) * std::log1p(-p));
    CHECK(series.coeffs[1 + 3 * m] == doctest::Approx(want).epsilon(1e-11));
  }
  // Off-lattice coefficients vanish.
  for (std::size_t j = 0; j <= 61; ++j) {
    if (j % 3 != 1) CHECK(series.coeffs[j] == 0.0);
  }
  // k = 1 collapses to the geometric family.
  CHECK(eval_gap(nstable::negbin_kM(0.35, 1), nstable::geometric(0.35)) <
        1e-14);
}

TEST_CASE("sibuya family is heavy-tailed with diverging mean increments") {
  const auto f = nstable::sibuya(0.5);
  CHECK(f.mean == nstable::infinite_mean());
  CHECK(nstable::sibuya(1.0).mean == 1.0);
  // (1 - phi(1-h))/h = h^{p-1} grows without bound as h -> 0.
  double prev = 0.0;
  for (double h : {1e-2, 1e-4, 1e-6}) {
    const double slope = (1.0 - f.eval(1.0 - h)) / h;
    CHECK(slope > prev);
    CHECK(slope == doctest::Approx(std::pow(h, -0.5)).epsilon(1e-10));
    prev = slope;
  }
  // Coefficients are the alternating binomial masses, all positive.
  const auto series = nstable::series_of(f, 30);
  double c = 0.5;
  for (std::size_t n = 1; n <= 30; ++n) {
    CHECK(series.coeffs[n] == doctest::Approx(c).epsilon(1e-12));
    c *= (static_cast<double>(n) - 0.5) / (static_cast<double>(n) + 1.0);
  }
}

TEST_CASE("walk hitting-time members match their rational closed forms") {
  const auto f2 = nstable::chebyshev_hitting(2);
  const auto f3 = nstable::chebyshev_hitting(3);
  for (double s : kSGrid) {
    if (s == 0.0) continue;
    CHECK(f2.eval(s) == doctest::Approx(s * s / (2.0 - s * s)).epsilon(1e-13));
    CHECK(f3.eval(s) ==
          doctest::Approx(s * s * s / (4.0 - 3.0 * s * s)).epsilon(1e-13));
  }
  CHECK(f2.eval(0.0) == 0.0);
  CHECK(f2.mean == 4.0);
  CHECK(f3.mean == 9.0);
  // Doubling the barrier composes the members: T_4(x) = T_2(T_2(x)).
  const auto f4 = nstable::chebyshev_hitting(4);
  for (double s : kSGrid) {
    CHECK(f4.eval(s) == doctest::Approx(f2.eval(f2.eval(s))).epsilon(1e-12));
  }
  CHECK(f4.mean == 16.0);
  // n = 1 is one +-1 step, i.e. the identity member.
  for (double s : kSGrid) {
    CHECK(nstable::chebyshev_hitting(1).eval(s) ==
          doctest::Approx(s).epsilon(1e-14));
  }
}

TEST_CASE("walk hitting-time masses agree with a direct walk simulation") {
  // Independent oracle: simulate the symmetric +-1 walk started at 0 and
  // record the first time |position| reaches the barrier.
  const std::size_t n = 10000;
  for (int barrier : {2, 3}) {
    nstable::SplitRng rng = nstable::SplitRng(404).stream(barrier);
    std::map<std::uint64_t, double> freq;
    for (std::size_t i = 0; i < n; ++i) {
      int pos = 0;
      std::uint64_t steps = 0;
      while (pos != barrier && pos != -barrier) {
        pos += rng.uniform() < 0.5 ? 1 : -1;
        ++steps;
      }
      freq[steps] += 1.0;
    }
    for (auto& kv : freq) kv.second /= static_cast<double>(n);
    const auto series =
        nstable::series_of(nstable::chebyshev_hitting(barrier), 12);
    for (std::size_t k = static_cast<std::size_t>(barrier); k <= 8; ++k) {
      const double se = std::sqrt(series.coeffs[k] *
                                  (1.0 - series.coeffs[k]) /
                                  static_cast<double>(n));
      const auto it = freq.find(k);
      const double got = it == freq.end() ? 0.0 : it->second;
      CHECK(std::abs(got - series.coeffs[k]) <= 4.0 * se + 1e-12);
    }
  }
}

TEST_CASE("continuous-time members satisfy the composition rule") {
  CHECK(composition_gap([](double t) { return nstable::yule_member(t); }, 0.4,
                        0.7) < 1e-12);
  CHECK(composition_gap([](double t) { return nstable::neveu_member(t); },
                        0.3, 1.1) < 1e-12);
  CHECK(composition_gap([](double t) { return nstable::geometric_H_ctbp(t); },
                        0.25, 0.5) < 1e-12);
  const auto theta = nstable::theta_member(0.5, 0.5, 0.2);
  REQUIRE(theta.semigroup_member);
  CHECK(composition_gap(theta.semigroup_member, 0.2, 0.9) < 1e-12);

  // t = 0 members are the identity.
  for (double s : kSGrid) {
    CHECK(nstable::yule_member(0.0).eval(s) == doctest::Approx(s).epsilon(1e-14));
    CHECK(nstable::neveu_member(0.0).eval(s) == doctest::Approx(s).epsilon(1e-14));
    CHECK(nstable::geometric_H_ctbp(0.0).eval(s) ==
          doctest::Approx(s).epsilon(1e-12));
  }
  // Every PGF fixes s = 1.
  CHECK(nstable::geometric_H_ctbp(1.0).eval(1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nstable::yule_member(2.0).eval(1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("yule and neveu members are reparameterized geometric and sibuya") {
  CHECK(eval_gap(nstable::yule_member(1.0), nstable::geometric(std::exp(-1.0))) <
        1e-14);
  CHECK(eval_gap(nstable::neveu_member(0.5), nstable::sibuya(std::exp(-0.5))) <
        1e-14);
  CHECK(nstable::neveu_member(0.5).mean == nstable::infinite_mean());
  CHECK(nstable::yule_member(1.0).mean == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("theta members reduce to the geometric family at theta = 1") {
  CHECK(eval_gap(nstable::theta_member(0.37, 1.0, 0.0),
                 nstable::geometric(0.37)) < 1e-13);
  CHECK(nstable::theta_member(0.25, 0.5, 0.0).mean ==
        doctest::Approx(std::pow(0.25, -2.0)));
  // Coefficient seed sums to 1 and is nonnegative.
  const auto series = nstable::series_of(nstable::theta_member(0.5, 0.5, 0.2), 400);
  double sum = 0.0;
  for (double coef : series.coeffs) {
    CHECK(coef >= -1e-12);
    sum += coef;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(nstable::theta_member(0.5, -0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(nstable::theta_member(0.5, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(nstable::theta_member(0.5, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("brood distributions expose consistent pgf, mean, and fixed point") {
  const auto yule = nstable::yule_H();
  CHECK(yule.h(0.5) == 0.25);
  CHECK(yule.offspring_mean == 2.0);
  CHECK(yule.extinction_prob == 0.0);

  const auto shifted = nstable::shifted_geom_H();
  CHECK(shifted.h(0.5) == doctest::Approx(0.25 / 1.5).epsilon(1e-14));
  CHECK(shifted.offspring_mean == 3.0);
  CHECK(shifted.extinction_prob == 0.0);

  const auto neveu = nstable::neveu_H();
  CHECK(neveu.h(1.0) == 1.0);
  CHECK(neveu.offspring_mean == nstable::infinite_mean());
  CHECK(neveu.h(0.5) == doctest::Approx(0.5 + 0.5 * std::log(0.5)).epsilon(1e-14));

  // theta brood with q > 0: the stated extinction probability is a fixed
  // point of h, and h is a genuine PGF at s in [0,1].
  const auto th = nstable::theta_H(-0.5, 0.3);
  CHECK(th.h(0.3) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(th.extinction_prob == 0.3);
  CHECK(th.offspring_mean == nstable::infinite_mean());
  CHECK(th.h(0.0) >= 0.0);
  CHECK(th.h(1.0) == 1.0);
  CHECK_THROWS_AS(nstable::theta_H(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(nstable::theta_H(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("brood samplers reproduce their mass functions") {
  const std::size_t n = 20000;

  const auto yule_freq = empirical_masses(nstable::yule_H().sample, 200, 1);
  CHECK(yule_freq.at(2) == 1.0);

  const auto shifted_freq =
      empirical_masses(nstable::shifted_geom_H().sample, n, 2);
  CHECK(shifted_freq.begin()->first >= 2);
  for (std::uint64_t k = 2; k <= 6; ++k) {
    check_mass(shifted_freq, k, std::pow(2.0, 1.0 - static_cast<double>(k)), n);
  }

  const auto neveu_freq = empirical_masses(nstable::neveu_H().sample, n, 3);
  CHECK(neveu_freq.begin()->first >= 2);
  for (std::uint64_t k = 2; k <= 6; ++k) {
    const double dk = static_cast<double>(k);
    check_mass(neveu_freq, k, 1.0 / (dk * (dk - 1.0)), n);
  }

  // theta brood, both signs of theta: compare empirical E[s^X] to h(s),
  // which sees the whole distribution at once (bounded summand, so the
  // plug-in standard error is honest even when the mean is infinite).
  for (double theta : {0.5, -0.5}) {
    for (double q : {0.0, 0.3}) {
      const auto th = nstable::theta_H(theta, q);
      nstable::SplitRng rng = nstable::SplitRng(77).stream(9);
      std::vector<double> pow_draws(n);
      const double s = 0.6;
      for (auto& x : pow_draws) {
        x = std::pow(s, static_cast<double>(th.sample(rng)));
      }
      const auto m = nstable::sample_moment(pow_draws);
      INFO("theta=", theta, " q=", q);
      CHECK(std::abs(m.mean - th.h(s)) <= 5.0 * m.std_error);
    }
  }
}

TEST_CASE("extinction probability solver finds the smallest fixed point") {
  // Binary branching h(s) = (1-b) + b s^2 dies out with probability
  // min(1, (1-b)/b).
  CHECK(nstable::pgf_extinction_prob(
            [](double s) { return 0.2 + 0.8 * s * s; }) ==
        doctest::Approx(0.25).epsilon(1e-10));
  CHECK(nstable::pgf_extinction_prob(
            [](double s) { return 0.7 + 0.3 * s * s; }) == 1.0);
  CHECK(nstable::pgf_extinction_prob([](double s) { return s * s; }) == 0.0);
  // Critical case: mean one, certain extinction.
  CHECK(nstable::pgf_extinction_prob(
            [](double s) { return 0.25 + 0.5 * s + 0.25 * s * s; }) == 1.0);
}

TEST_CASE("family lookup round-trips names and rejects unknown specs") {
  CHECK(nstable::family_names().size() == 8);

  const auto geo = nstable::family_by_name("geometric:p=0.5");
  CHECK(geo.name == "geometric");
  REQUIRE(geo.params.size() == 1);
  CHECK(geo.params[0] == 0.5);

  const auto nb = nstable::family_by_name("negbin-kM:p=0.5,k=2");
  CHECK(nb.name == "negbin-kM");
  CHECK(nb.params == std::vector<double>{0.5, 2.0});

  CHECK(nstable::family_by_name("sibuya:p=0.6").mean ==
        nstable::infinite_mean());
  CHECK(nstable::family_by_name("chebyshev-hitting:n=2").mean == 4.0);
  CHECK(nstable::family_by_name("yule:t=1").params == std::vector<double>{1.0});
  CHECK(nstable::family_by_name("neveu:t=0.5").name == "neveu");
  CHECK(nstable::family_by_name("geomH-ctbp:t=1").name == "geomH-ctbp");
  const auto th = nstable::family_by_name("theta:p=0.5,theta=0.5");
  CHECK(th.params == std::vector<double>{0.5, 0.5, 0.0});

  CHECK_THROWS_AS(nstable::family_by_name("nosuch"), std::invalid_argument);
  CHECK_THROWS_AS(nstable::family_by_name("geometric"), std::invalid_argument);
  CHECK_THROWS_AS(nstable::family_by_name("negbin-kM:p=0.5,k=2.5"),
                  std::invalid_argument);

  // Families without a closed coefficient rule refuse series extraction.
  nstable::PgfFamily bare;
  bare.eval = [](double s) { return s; };
  CHECK_THROWS_AS(nstable::series_of(bare, 8), std::domain_error);
}
