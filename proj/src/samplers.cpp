#include "nstable/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace nstable {

double sample_gamma(double shape, SplitRng& rng) {
  if (!(shape > 0.0)) throw std::invalid_argument("sample_gamma: shape must be positive");
  if (shape < 1.0) {
    // Boost trick: Gamma(a) = Gamma(a+1) * U^(1/a).
    const double g = sample_gamma(shape + 1.0, rng);
    return g * std::pow(rng.uniform(), 1.0 / shape);
  }
  // Marsaglia-Tsang (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

namespace {

std::uint64_t poisson_inversion(double mean, SplitRng& rng) {
  // Knuth product method; used only for small means.
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double prod = rng.uniform();
  while (prod > limit) {
    ++k;
    prod *= rng.uniform();
  }
  return k;
}

std::uint64_t poisson_ptrs(double mean, SplitRng& rng) {
  // Hormann (1993), transformed rejection with squeeze ("PTRS").
  const double slam = std::sqrt(mean);
  const double llam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (kf < 0.0) continue;
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
    if (us < 0.013 && v > us) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * llam - mean - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

}  // namespace

std::uint64_t sample_poisson(double mean, SplitRng& rng) {
  if (mean < 0.0) throw std::invalid_argument("sample_poisson: negative mean");
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_inversion(mean, rng);
  return poisson_ptrs(mean, rng);
}

std::uint64_t sample_negative_binomial(double r, double p, SplitRng& rng) {
  const double lambda = sample_gamma(r, rng) * (1.0 - p) / p;
  return sample_poisson(lambda, rng);
}

std::uint64_t sample_geometric(double p, SplitRng& rng) {
  if (p >= 1.0) return 1;
  if (p == 0.5) {
    // First set bit of a uniform bit stream; chain words for the 2^-64 tail.
    std::uint64_t n = 1;
    for (;;) {
      const std::uint64_t w = rng.next_u64();
      if (w != 0) return n + static_cast<std::uint64_t>(__builtin_ctzll(w));
      n += 64;
    }
  }
  const double g = std::floor(std::log(rng.uniform()) / std::log1p(-p));
  return 1 + static_cast<std::uint64_t>(g);
}

std::uint64_t sample_binomial_half(std::uint64_t n, SplitRng& rng) {
  std::uint64_t total = 0;
  while (n >= 64) {
    total += static_cast<std::uint64_t>(__builtin_popcountll(rng.next_u64()));
    n -= 64;
  }
  if (n > 0) {
    const std::uint64_t mask = (n == 64) ? ~0ULL : ((1ULL << n) - 1ULL);
    total += static_cast<std::uint64_t>(__builtin_popcountll(rng.next_u64() & mask));
  }
  return total;
}

std::uint64_t sample_binomial(std::uint64_t n, double p, SplitRng& rng) {
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("sample_binomial: p must be in [0,1]");
  }
  std::uint64_t count = 0;
  while (n > 64) {
    if (p <= 0.0) return count;
    if (p >= 1.0) return count + n;
    // The k-th order statistic of n uniforms is Beta(k, n+1-k).  Given its
    // value b, the k-1 points below it are uniform on (0,b) and the n-k
    // points above it are uniform on (b,1), so the success count splits
    // into a resolved block plus a binomial on the half containing p.
    const std::uint64_t k = (n + 1) / 2;
    const double ga = sample_gamma(static_cast<double>(k), rng);
    const double gb = sample_gamma(static_cast<double>(n - k + 1), rng);
    const double b = ga / (ga + gb);
    if (p < b) {
      n = k - 1;
      p = p / b;
    } else {
      count += k;
      n -= k;
      p = (p - b) / (1.0 - b);
    }
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    if (rng.uniform() < p) ++count;
  }
  return count;
}

namespace {

// Sibuya survival P(N > n) = Gamma(n+1-p) / (Gamma(1-p) Gamma(n+1)).
double sibuya_survival(double n, double p) {
  return std::exp(std::lgamma(n + 1.0 - p) - std::lgamma(1.0 - p) -
                  std::lgamma(n + 1.0));
}

}  // namespace

std::uint64_t sample_sibuya(double p, SplitRng& rng) {
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("sample_sibuya: p in (0,1] required");
  if (p == 1.0) return 1;
  const double u = rng.uniform();
  // Smallest n >= 1 with survival(n) < u; bracket by doubling, then bisect.
  if (sibuya_survival(1.0, p) < u) return 1;
  std::uint64_t lo = 1, hi = 2;
  while (sibuya_survival(static_cast<double>(hi), p) >= u) {
    lo = hi;
    if (hi > (1ULL << 62)) return hi;  // beyond any realistic resolution
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (sibuya_survival(static_cast<double>(mid), p) < u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double sample_log_sibuya(double p, SplitRng& rng) {
  const double u = rng.uniform();
  constexpr double kExactCut = 1e6;
  if (sibuya_survival(kExactCut, p) >= u) {
    // Deep tail: survival(n) = n^(-p)/Gamma(1-p) up to O(1/n) relative
    // error, so invert the asymptote directly in log space.
    return -(std::log(u) + std::lgamma(1.0 - p)) / p;
  }
  // Head of the law: exact integer inversion as in sample_sibuya.
  if (sibuya_survival(1.0, p) < u) return 0.0;
  std::uint64_t lo = 1, hi = 2;
  while (sibuya_survival(static_cast<double>(hi), p) >= u) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (sibuya_survival(static_cast<double>(mid), p) < u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::log(static_cast<double>(hi));
}

}  // namespace nstable
