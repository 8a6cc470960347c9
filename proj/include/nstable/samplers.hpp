#pragma once

#include <cstdint>

#include "nstable/rng.hpp"

namespace nstable {

// Exact (rejection- or inversion-based, never Gaussian-approximate)
// samplers for the standard laws the simulators lean on.  All of them
// draw exclusively from the supplied stream, so results are reproducible
// per (seed, stream) pair.

// Gamma(shape, scale 1) via Marsaglia-Tsang squeeze; shape < 1 is boosted
// through Gamma(a+1) * U^(1/a).
double sample_gamma(double shape, SplitRng& rng);

// Poisson(mean).  Inversion below mean 10, Hormann's PTRS transformed
// rejection above; exact for the full range used here (mean <= ~1e18).
std::uint64_t sample_poisson(double mean, SplitRng& rng);

// Negative binomial: number of failures before the r-th success with
// success probability p.  Drawn as Poisson(Gamma(r) * (1-p)/p), which is
// the exact gamma-Poisson mixture, in O(1) for any r.
std::uint64_t sample_negative_binomial(double r, double p, SplitRng& rng);

// Geometric on {1,2,...} with success probability p: trials to first success.
std::uint64_t sample_geometric(double p, SplitRng& rng);

// Binomial(n, 1/2) by popcount over raw 64-bit words: exact and O(n/64).
std::uint64_t sample_binomial_half(std::uint64_t n, SplitRng& rng);

// Binomial(n, p) for any p, exact in O(log n): the median order statistic
// of the n underlying uniforms is Beta-distributed, and conditioning on it
// splits the count into one resolved block and one recursive half-size
// binomial; small blocks finish by direct Bernoulli counting.
std::uint64_t sample_binomial(std::uint64_t n, double p, SplitRng& rng);

// Sibuya(p): P(N > n) = prod_{k<=n} (1 - p/k).  Inverted through the
// closed-form survival function (lgamma), so a single draw costs O(log N)
// even though the law has infinite mean.
std::uint64_t sample_sibuya(double p, SplitRng& rng);

// log of a Sibuya(p) draw, exact for astronomically large values where the
// draw itself cannot be represented: the survival function is inverted in
// log space using its n^(-p)/Gamma(1-p) tail.
double sample_log_sibuya(double p, SplitRng& rng);

}  // namespace nstable
