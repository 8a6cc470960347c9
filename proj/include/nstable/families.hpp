#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nstable/rng.hpp"
#include "nstable/series.hpp"

namespace nstable {

// One member of a composition semigroup of probability generating
// functions.  Members are immutable values; eval is defined on [0,1] with
// eval(1) = 1 and nondecreasing convex behavior.
struct PgfFamily {
  std::string name;                  // catalog name, e.g. "geometric"
  std::vector<double> params;
  std::function<double(double)> eval;
  double mean = 0.0;                 // +infinity for heavy-tailed members
  // Exact coefficient seed, when the family has a closed series.
  std::function<TruncatedSeries(std::size_t order)> series_seed;
  // Continuous-time parameterization t >= 0, when the family forms a
  // semigroup under composition in t (member(t) o member(u) = member(t+u)).
  std::function<PgfFamily(double t)> semigroup_member;
};

inline double infinite_mean() { return std::numeric_limits<double>::infinity(); }

// Catalog constructors.  Parameter violations throw std::invalid_argument.
PgfFamily geometric(double p);                       // p in (0,1]; mass p(1-p)^(n-1), n>=1
PgfFamily negbin_kM(double p, int k);                // lattice 1+k{0,1,...}; mean 1/p
PgfFamily sibuya(double p);                          // 1-(1-s)^p; infinite mean
PgfFamily chebyshev_hitting(int n);                  // hitting time of +-n by simple walk
PgfFamily yule_member(double t);                     // geometric(e^-t)
PgfFamily neveu_member(double t);                    // sibuya(e^-t)
PgfFamily geometric_H_ctbp(double t);                // branching semigroup of shifted_geom_H
PgfFamily theta_member(double p, double theta, double q);  // theta in (0,1], q in [0,1)

// Lookup by "name" or "name:key=value,..." spec string, e.g.
// "geometric:p=0.5" or "theta:p=0.25,theta=0.5,q=0".  Unknown names throw
// std::invalid_argument listing the catalog.
PgfFamily family_by_name(const std::string& spec);
std::vector<std::string> family_names();

// Exact series extraction; throws std::domain_error when the family carries
// no closed coefficient rule.
TruncatedSeries series_of(const PgfFamily& family, std::size_t order);

// Offspring generating distribution of a continuous-time branching process:
// every individual is replaced, at unit rate, by a brood drawn from `mass`
// (support {0,2,3,...}), whose PGF is h.
struct GeneratingDistribution {
  std::string name;
  std::vector<double> params;
  std::function<double(double)> h;        // brood PGF on [0,1]
  double offspring_mean = 0.0;            // h'(1), +infinity allowed
  double extinction_prob = 0.0;           // smallest fixed point of h
  std::function<std::uint64_t(SplitRng&)> sample;
  // Closed-form time-t member of the induced PGF semigroup, when known.
  std::function<PgfFamily(double t)> member;
};

GeneratingDistribution yule_H();            // h(s) = s^2
GeneratingDistribution neveu_H();           // h(s) = s + (1-s)ln(1-s)
GeneratingDistribution shifted_geom_H();    // h(s) = s^2/(2-s)
GeneratingDistribution theta_H(double theta, double q);  // theta in (-1,0)u(0,1]

// Smallest fixed point of a PGF on [0,1] (extinction probability).
double pgf_extinction_prob(const std::function<double(double)>& pgf);

}  // namespace nstable
