#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nstable {

// Dense truncated power series about 0: coeffs[k] multiplies s^k, and all
// operations are exact-to-truncation in the stored order.  Used as the PGF
// workhorse: probability mass functions are exactly the coefficients.
struct TruncatedSeries {
  std::vector<double> coeffs;

  TruncatedSeries() = default;
  explicit TruncatedSeries(std::size_t order) : coeffs(order + 1, 0.0) {}
  explicit TruncatedSeries(std::vector<double> c) : coeffs(std::move(c)) {}

  std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  double operator[](std::size_t k) const { return k < coeffs.size() ? coeffs[k] : 0.0; }

  // Evaluate at a point by Horner's rule.
  double eval(double s) const;
};

// s itself, to the given order.
TruncatedSeries identity_series(std::size_t order);

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const TruncatedSeries& a, double k);

// Cauchy product truncated to the shorter operand's order.
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

// outer(inner) by Horner substitution: O(M) series multiplies.  The inner
// constant term must lie in [0,1); otherwise the truncated outer series is
// being evaluated outside its reliable disc and we refuse.
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

// k-fold self-composition; k = 0 returns the identity series.
TruncatedSeries iterate(const TruncatedSeries& phi, std::size_t k);

// 1/a with a.coeffs[0] != 0 (standard reciprocal recurrence).
TruncatedSeries reciprocal(const TruncatedSeries& a);

// a^p for real p with a.coeffs[0] > 0 (J.C.P. Miller recurrence).
TruncatedSeries pow_series(const TruncatedSeries& a, double p);

TruncatedSeries sqrt_series(const TruncatedSeries& a);

struct MeanEstimate {
  double value = 0.0;       // sum k * coeffs[k]
  double tail_mass = 0.0;   // 1 - sum coeffs, clamped at 0
  bool lower_bound = false; // set when tail mass exceeds the tolerance
};

// Mean of the mass function given by the coefficients.  When the truncation
// visibly misses mass (tail above tail_tolerance) the estimate is only a
// lower bound and is flagged as such.
MeanEstimate pgf_mean(const TruncatedSeries& phi, double tail_tolerance = 1e-6);

struct PgfVerdict {
  bool is_pgf = false;
  std::optional<std::size_t> first_bad_index;
  double worst_violation = 0.0;  // most negative coefficient encountered
  double tolerance_used = 0.0;
  std::string mode;  // short diagnostic: how the verdict was reached
};

// Coefficient nonnegativity (down to -tolerance * max(1, max|coeff|)) and
// normalization sum <= 1 + tolerance.
PgfVerdict check_pgf(const TruncatedSeries& phi, double tolerance = 1e-9);

}  // namespace nstable
