#include "nstable/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nstable {

double TruncatedSeries::eval(double s) const {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * s + coeffs[i];
  return acc;
}

TruncatedSeries identity_series(std::size_t order) {
  TruncatedSeries s(order);
  if (order >= 1) s.coeffs[1] = 1.0;
  return s;
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t m = std::min(a.order(), b.order());
  TruncatedSeries out(m);
  for (std::size_t k = 0; k <= m; ++k) out.coeffs[k] = a[k] + b[k];
  return out;
}

TruncatedSeries scale(const TruncatedSeries& a, double k) {
  TruncatedSeries out = a;
  for (double& c : out.coeffs) c *= k;
  return out;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t m = std::min(a.order(), b.order());
  TruncatedSeries out(m);
  for (std::size_t i = 0; i <= m; ++i) {
    const double ai = a.coeffs[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; i + j <= m; ++j) out.coeffs[i + j] += ai * b.coeffs[j];
  }
  return out;
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
  if (inner.coeffs.empty() || outer.coeffs.empty())
    throw std::invalid_argument("compose: empty series");
  const double c0 = inner.coeffs[0];
  if (!(c0 >= 0.0 && c0 < 1.0))
    throw std::domain_error("compose: inner constant term must lie in [0,1)");
  const std::size_t m = std::min(outer.order(), inner.order());
  TruncatedSeries in(m);
  for (std::size_t k = 0; k <= m; ++k) in.coeffs[k] = inner[k];
  TruncatedSeries acc(m);
  acc.coeffs[0] = outer[std::min(outer.order(), m)];
  // Horner: acc = acc * inner + outer[k], from high coefficients down.
  for (std::size_t k = std::min(outer.order(), m); k-- > 0;) {
    acc = mul(acc, in);
    acc.coeffs[0] += outer.coeffs[k];
  }
  return acc;
}

TruncatedSeries iterate(const TruncatedSeries& phi, std::size_t k) {
  TruncatedSeries acc = identity_series(phi.order());
  for (std::size_t i = 0; i < k; ++i) acc = compose(phi, acc);
  return acc;
}

TruncatedSeries reciprocal(const TruncatedSeries& a) {
  if (a.coeffs.empty() || a.coeffs[0] == 0.0)
    throw std::domain_error("reciprocal: zero constant term");
  const std::size_t m = a.order();
  TruncatedSeries out(m);
  out.coeffs[0] = 1.0 / a.coeffs[0];
  for (std::size_t n = 1; n <= m; ++n) {
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) s += a.coeffs[k] * out.coeffs[n - k];
    out.coeffs[n] = -s / a.coeffs[0];
  }
  return out;
}

TruncatedSeries pow_series(const TruncatedSeries& a, double p) {
  if (a.coeffs.empty() || !(a.coeffs[0] > 0.0))
    throw std::domain_error("pow_series: constant term must be positive");
  const std::size_t m = a.order();
  TruncatedSeries out(m);
  out.coeffs[0] = std::pow(a.coeffs[0], p);
  // Miller recurrence from f = a^p, f' a = p f a'.
  for (std::size_t n = 1; n <= m; ++n) {
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      s += (p * static_cast<double>(k) - static_cast<double>(n - k)) *
           a.coeffs[k] * out.coeffs[n - k];
    }
    out.coeffs[n] = s / (static_cast<double>(n) * a.coeffs[0]);
  }
  return out;
}

TruncatedSeries sqrt_series(const TruncatedSeries& a) { return pow_series(a, 0.5); }

MeanEstimate pgf_mean(const TruncatedSeries& phi, double tail_tolerance) {
  MeanEstimate est;
  double total = 0.0;
  for (std::size_t k = 0; k < phi.coeffs.size(); ++k) {
    est.value += static_cast<double>(k) * phi.coeffs[k];
    total += phi.coeffs[k];
  }
  est.tail_mass = std::max(0.0, 1.0 - total);
  est.lower_bound = est.tail_mass > tail_tolerance;
  return est;
}

PgfVerdict check_pgf(const TruncatedSeries& phi, double tolerance) {
  PgfVerdict v;
  double max_abs = 0.0;
  for (double c : phi.coeffs) max_abs = std::max(max_abs, std::fabs(c));
  v.tolerance_used = tolerance * std::max(1.0, max_abs);
  v.mode = "coefficients";

  double sum = 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < phi.coeffs.size(); ++k) {
    sum += phi.coeffs[k];
    worst = std::min(worst, phi.coeffs[k]);
    if (phi.coeffs[k] < -v.tolerance_used && !v.first_bad_index) v.first_bad_index = k;
  }
  v.worst_violation = worst;
  const bool nonneg = worst >= -v.tolerance_used;
  const bool normalized = sum <= 1.0 + tolerance;
  if (!normalized && !v.first_bad_index) v.mode = "normalization";
  v.is_pgf = nonneg && normalized;
  return v;
}

}  // namespace nstable
