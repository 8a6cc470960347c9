#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace nstable {

// Two-sample comparison summary: Kolmogorov-Smirnov statistic with its
// asymptotic p-value, plus the sup-gap between the empirical transforms on
// a u-grid (the heavy-tail-safe statistic).
struct TwoSampleStat {
  double ks_stat = 0.0;
  double ks_pvalue = 1.0;
  double ecf_gap = 0.0;
};

// Asymptotic Kolmogorov survival function P(K > x), two-branch evaluation
// (Marsaglia's form below x = 1.18, the alternating tail series above).
double kolmogorov_pvalue(double x);

// Two-sample Kolmogorov-Smirnov distance (copies are sorted internally).
double ks_two_sample_stat(std::vector<double> a, std::vector<double> b);

// KS + empirical-characteristic-function comparison of two samples on the
// given u-grid.  Enforces the minimum sample size 1000 for the asymptotic
// p-value.
TwoSampleStat two_sample_test(const std::vector<double>& a,
                              const std::vector<double>& b,
                              const std::vector<double>& u_grid);

// One-sample KS distance against a closed-form CDF, and its asymptotic
// p-value at sample size n (n >= 1000 enforced in the p-value).
double ks_one_sample_stat(std::vector<double> sample,
                          const std::function<double(double)>& cdf);
double ks_pvalue(double d, std::size_t n1, std::size_t n2 = 0);

// sup over the grid of |mean exp(-u X) - transform(u)| (positive laws).
double laplace_gap(const std::vector<double>& sample,
                   const std::function<double(double)>& transform,
                   const std::vector<double>& u_grid);

// sup over the grid of |mean exp(iuX) - chf(u)|.
double ecf_gap(const std::vector<double>& sample,
               const std::function<std::complex<double>(double)>& chf,
               const std::vector<double>& u_grid);

// sup over the grid of the modulus gap between two empirical
// characteristic functions.
double ecf_gap_two_sample(const std::vector<double>& a,
                          const std::vector<double>& b,
                          const std::vector<double>& u_grid);

double sample_median(std::vector<double> v);

struct Moment {
  double mean = 0.0;
  double std_error = 0.0;
};

Moment sample_moment(const std::vector<double>& v);

// Uniform grid of n+1 points spanning [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace nstable
