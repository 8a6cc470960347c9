#include "nstable/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nstable {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kMinSamplesForAsymptoticP = 1000;

void require_min_n(std::size_t n) {
  if (n < kMinSamplesForAsymptoticP) {
    throw std::invalid_argument(
        "asymptotic KS p-value needs at least 1000 samples");
  }
}

}  // namespace

double kolmogorov_pvalue(double x) {
  if (!(x > 0.0)) return 1.0;
  if (x < 1.18) {
    // Marsaglia-Tsang-Wang evaluation of the CDF, complemented.
    const double v = std::exp(-kPi * kPi / (8.0 * x * x));
    const double cdf = std::sqrt(2.0 * kPi) / x *
                       (v + std::pow(v, 9.0) + std::pow(v, 25.0) +
                        std::pow(v, 49.0));
    return std::min(1.0, std::max(0.0, 1.0 - cdf));
  }
  double tail = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    tail += (j % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-300) break;
  }
  return std::min(1.0, std::max(0.0, tail));
}

double ks_two_sample_stat(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample_stat: empty sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double ks_pvalue(double d, std::size_t n1, std::size_t n2) {
  require_min_n(n1);
  double n_eff = static_cast<double>(n1);
  if (n2 > 0) {
    require_min_n(n2);
    n_eff = static_cast<double>(n1) * static_cast<double>(n2) /
            static_cast<double>(n1 + n2);
  }
  return kolmogorov_pvalue(std::sqrt(n_eff) * d);
}

TwoSampleStat two_sample_test(const std::vector<double>& a,
                              const std::vector<double>& b,
                              const std::vector<double>& u_grid) {
  TwoSampleStat st;
  st.ks_stat = ks_two_sample_stat(a, b);
  st.ks_pvalue = ks_pvalue(st.ks_stat, a.size(), b.size());
  st.ecf_gap = u_grid.empty() ? 0.0 : ecf_gap_two_sample(a, b, u_grid);
  return st;
}

double ks_one_sample_stat(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
  if (sample.empty()) {
    throw std::invalid_argument("ks_one_sample_stat: empty sample");
  }
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double laplace_gap(const std::vector<double>& sample,
                   const std::function<double(double)>& transform,
                   const std::vector<double>& u_grid) {
  if (sample.empty()) {
    throw std::invalid_argument("laplace_gap: empty sample");
  }
  double worst = 0.0;
  for (const double u : u_grid) {
    double acc = 0.0;
    for (const double x : sample) acc += std::exp(-u * x);
    acc /= static_cast<double>(sample.size());
    worst = std::max(worst, std::abs(acc - transform(u)));
  }
  return worst;
}

double ecf_gap(const std::vector<double>& sample,
               const std::function<std::complex<double>(double)>& chf,
               const std::vector<double>& u_grid) {
  if (sample.empty()) {
    throw std::invalid_argument("ecf_gap: empty sample");
  }
  double worst = 0.0;
  for (const double u : u_grid) {
    double re = 0.0, im = 0.0;
    for (const double x : sample) {
      re += std::cos(u * x);
      im += std::sin(u * x);
    }
    const double n = static_cast<double>(sample.size());
    const std::complex<double> emp(re / n, im / n);
    worst = std::max(worst, std::abs(emp - chf(u)));
  }
  return worst;
}

double ecf_gap_two_sample(const std::vector<double>& a,
                          const std::vector<double>& b,
                          const std::vector<double>& u_grid) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ecf_gap_two_sample: empty sample");
  }
  double worst = 0.0;
  for (const double u : u_grid) {
    double re_a = 0.0, im_a = 0.0;
    for (const double x : a) {
      re_a += std::cos(u * x);
      im_a += std::sin(u * x);
    }
    double re_b = 0.0, im_b = 0.0;
    for (const double x : b) {
      re_b += std::cos(u * x);
      im_b += std::sin(u * x);
    }
    const std::complex<double> ea(re_a / static_cast<double>(a.size()),
                                  im_a / static_cast<double>(a.size()));
    const std::complex<double> eb(re_b / static_cast<double>(b.size()),
                                  im_b / static_cast<double>(b.size()));
    worst = std::max(worst, std::abs(ea - eb));
  }
  return worst;
}

double sample_median(std::vector<double> v) {
  if (v.empty()) {
    throw std::invalid_argument("sample_median: empty sample");
  }
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid),
                   v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo =
      *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

Moment sample_moment(const std::vector<double>& v) {
  if (v.size() < 2) {
    throw std::invalid_argument("sample_moment: need at least 2 samples");
  }
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (const double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  const double var = ss / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(n));
  }
  return out;
}

}  // namespace nstable
