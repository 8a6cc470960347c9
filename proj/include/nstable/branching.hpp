#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nstable/families.hpp"
#include "nstable/rng.hpp"
#include "nstable/stats.hpp"

namespace nstable {

// Hard resource ceilings.  Populations saturate at kPopulationCap (the draw
// is clamped and the replica flagged); event-driven simulation stops a
// replica after kEventCap replacement events.  Both conditions are reported
// explicitly rather than silently truncated.
inline constexpr std::uint64_t kPopulationCap = 1'000'000'000ULL;
inline constexpr std::uint64_t kEventCap = 100'000'000ULL;

// Offspring law of a discrete-generation branching process.  `sample` draws
// one brood; `sum_sampler`, when present, draws the exact law of the sum of
// r independent broods in O(1) (closed convolution families).  `cap` is a
// stopping hint: once the running total is known to exceed it the caller
// only needs "over cap", so a draw may return early with any value > cap.
struct OffspringLaw {
  std::string name;
  std::vector<double> params;
  std::function<std::uint64_t(SplitRng&)> sample;
  std::function<double(double)> pgf;
  double mean = 0.0;  // +infinity for heavy-tailed laws
  std::function<std::uint64_t(std::uint64_t r, std::uint64_t cap, SplitRng&)>
      sum_sampler;
};

// Catalog.  Parameter violations throw std::invalid_argument.
OffspringLaw offspring_geometric(double p);        // support {1,2,...}, mean 1/p
OffspringLaw offspring_negbin_kM(double p, int k); // support 1+k{0,1,...}, mean 1/p
OffspringLaw offspring_bernoulli(double p1);       // {0,1}, mean p1
OffspringLaw offspring_binary(double p2);          // {0,2}, mean 2*p2
OffspringLaw offspring_constant(std::uint64_t m);  // deterministic m
OffspringLaw offspring_chebyshev(int n);           // walk hitting-time brood, n in {2,3}
OffspringLaw offspring_sibuya(double p);           // heavy-tailed, infinite mean

// Lookup by "name" or "name:key=value,..." spec string, e.g.
// "geometric:p=0.5" or "chebyshev-hitting:n=2".  Unknown names throw
// std::invalid_argument listing the catalog.
OffspringLaw offspring_by_name(const std::string& spec);
std::vector<std::string> offspring_names();

// Continuous-time generating distributions by spec string: "yule",
// "neveu", "shifted-geom", "theta:theta=...,q=...".
GeneratingDistribution generator_by_name(const std::string& spec);
std::vector<std::string> generator_names();

// Discrete-generation simulation: replica r's row holds N_0 .. N_k.
// Populations are clamped at kPopulationCap; `capped[r]` marks replicas
// whose trajectory touched the clamp (their later entries are floors).
struct BgwResult {
  std::vector<std::vector<std::uint64_t>> trajectories;
  std::vector<std::uint8_t> capped;
  bool any_capped = false;
};

BgwResult simulate_bgw(const OffspringLaw& offspring, std::size_t generations,
                       std::size_t replicas, std::uint64_t seed);

// Fraction of replicas extinct (N = 0) by the given generation horizon.
double extinction_frequency(const OffspringLaw& offspring, std::size_t horizon,
                            std::size_t replicas, std::uint64_t seed);

// Normalized end-generation populations N_k / C_k with zeros retained.
// For finite-mean offspring C_k = mean^k; for infinite-mean offspring the
// deterministic norming does not exist, so the sample median is used and
// flagged.
struct ScalingSamples {
  std::vector<double> values;
  double norm_constant = 0.0;
  bool median_normed = false;
  bool any_capped = false;
};

ScalingSamples scaling_limit_samples(const OffspringLaw& offspring,
                                     std::size_t generations,
                                     std::size_t replicas, std::uint64_t seed);

// Distributional comparison of the random sum X_1 + ... + X_N (N from
// `index_law`) against c*X, over n draws of each from independent streams.
// The ECF gap is evaluated on `u_grid` when non-empty (cosine ECF; suited
// to heavy-tailed summands where KS calibration degrades).
TwoSampleStat random_sum_check(const OffspringLaw& index_law,
                               const std::function<double(SplitRng&)>& summand,
                               double c, std::size_t n, std::uint64_t seed,
                               const std::vector<double>& u_grid = {});

// Event-driven continuous-time branching: each of N(t) particles carries a
// unit-rate replacement clock; at an event one particle is replaced by an
// H-brood.  Exact in law (race of exponentials).  Throws std::domain_error
// unless ctbp_growth_condition(H) holds.  Each replica stops early, with
// its flag set, after kEventCap events or at the population ceiling.
struct CtbpResult {
  std::vector<std::uint64_t> populations;
  std::vector<std::uint8_t> capped;
  bool any_capped = false;
};

CtbpResult simulate_ctbp(const GeneratingDistribution& H, double t_end,
                         std::size_t replicas, std::uint64_t seed);

// Numeric admissibility of H for the event simulation: supercritical
// (right derivative of h at 1 exceeds 1) and non-explosive (the integral
// of 1/(u - h(u)) up to 1 diverges, detected by an increment-ratio probe).
bool ctbp_growth_condition(const GeneratingDistribution& H);

// Long-horizon law of the normalized population against its limit:
//   - yuleH:         e^{-t} N(t) vs Exp(1), KS + Laplace gap
//   - neveuH:        e^{-t} ln N(t) vs Exp(1), KS + Laplace gap, using the
//                    exact time-t marginal (event counts at t = 4 are
//                    astronomically out of reach)
//   - finite-mean H: e^{-(c-1)t} N(t) vs the limit transform solved from
//                    the flow normalization; Laplace gap only (no closed
//                    CDF), KS fields left at their pass-through defaults.
TwoSampleStat ctbp_limit_check(const GeneratingDistribution& H, double t_end,
                               std::size_t replicas, std::uint64_t seed);

// Transform targets for weak_limit_equivalence: the limit of the scaled
// geometric random sum, and the strictly stable factor that the same
// scaling applied to deterministic [c]-term sums converges to.  Gaps are
// Laplace-transform gaps by default, cosine-ECF gaps when use_chf is set
// (two-sided summands).
struct LimitTarget {
  std::function<double(double)> transform;
  std::function<double(double)> stable_factor;
  bool use_chf = false;
  std::vector<double> u_grid;
};

// Common-random-number comparison along c_values: per replica, one uniform
// drives the geometric(1/c) index at every c (quantile coupling) and one
// summand stream is re-read from the start at every c, so the scaled sums
// converge pathwise and the transform gaps decline monotonically until the
// n-replica noise floor.
struct WeakLimitReport {
  std::vector<double> c_values;
  std::vector<double> random_sum_gap;  // scaled random sum vs transform
  std::vector<double> fixed_sum_gap;   // scaled [c]-term sum vs stable_factor
  bool gaps_decreasing = false;        // random_sum_gap nonincreasing
};

WeakLimitReport weak_limit_equivalence(
    const std::function<double(SplitRng&)>& summand, const LimitTarget& target,
    const std::vector<double>& c_values,
    const std::function<double(double)>& scale, std::size_t replicas,
    std::uint64_t seed);

}  // namespace nstable
