#include "nstable/transform.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "nstable/families.hpp"
#include "nstable/keyval.hpp"
#include "nstable/quadrature.hpp"

namespace nstable {

namespace {

constexpr double kRelTol = 1e-9;

bool near_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) <= tol;
}

// Least-squares slope and intercept of y against x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  const double denom = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// Transform catalog
// ---------------------------------------------------------------------------

LaplaceSpec exp1_transform() {
  LaplaceSpec t;
  t.name = "exp1";
  t.eval = [](double u) { return 1.0 / (1.0 + u); };
  t.eval_complex = [](std::complex<double> z) { return 1.0 / (1.0 + z); };
  t.deriv_at_0 = -1.0;
  t.u_max = 1e15;
  // The rescaled map is the standard geometric generating function for every
  // scale c >= 1, so the exact series check applies on the whole interval.
  t.series_hint = [](double c,
                     std::size_t order) -> std::optional<TruncatedSeries> {
    return geometric(1.0 / c).series_seed(order);
  };
  return t;
}

LaplaceSpec delta1_transform() {
  LaplaceSpec t;
  t.name = "delta1";
  t.eval = [](double u) { return std::exp(-u); };
  t.eval_complex = [](std::complex<double> z) { return std::exp(-z); };
  t.deriv_at_0 = -1.0;
  t.u_max = 700.0;
  // Rescaling a unit point mass gives the monomial s^c, a generating
  // function exactly when c is a whole number.
  t.series_hint = [](double c,
                     std::size_t order) -> std::optional<TruncatedSeries> {
    if (!near_integer(c)) return std::nullopt;
    const auto m = static_cast<std::size_t>(std::llround(c));
    TruncatedSeries s(std::max(order, m));
    s.coeffs[m] = 1.0;
    return s;
  };
  return t;
}

LaplaceSpec cosh_transform() {
  LaplaceSpec t;
  t.name = "cosh";
  t.eval = [](double u) { return 1.0 / std::cosh(std::sqrt(2.0 * u)); };
  t.eval_complex = [](std::complex<double> z) {
    return 1.0 / std::cosh(std::sqrt(2.0 * z));
  };
  t.deriv_at_0 = -1.0;
  t.u_max = 2.0e5;  // keeps cosh within double range
  // Rescaling the two-sided walk-hitting law works exactly when sqrt(c) is a
  // whole number; the map is then the level-n hitting-time distribution.
  t.series_hint = [](double c,
                     std::size_t order) -> std::optional<TruncatedSeries> {
    const double root = std::sqrt(c);
    if (!near_integer(root)) return std::nullopt;
    const int n = static_cast<int>(std::llround(root));
    return chebyshev_hitting(n).series_seed(
        std::max(order, static_cast<std::size_t>(n)));
  };
  return t;
}

LaplaceSpec gamma_transform(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::invalid_argument("gamma transform requires shape > 0, rate > 0");
  }
  LaplaceSpec t;
  std::ostringstream label;
  label << "gamma(shape=" << shape << ",rate=" << rate << ")";
  t.name = label.str();
  t.params = {shape, rate};
  t.eval = [shape, rate](double u) {
    return std::pow(1.0 + u / rate, -shape);
  };
  t.eval_complex = [shape, rate](std::complex<double> z) {
    return std::pow(1.0 + z / rate, std::complex<double>(-shape, 0.0));
  };
  t.deriv_at_0 = -shape / rate;
  t.u_max = 1e15;
  // When 1/shape is a whole number k, the rescaled map is the generating
  // function of 1 + k * (negative binomial), valid for every c >= 1.
  const double inv_shape = 1.0 / shape;
  if (near_integer(inv_shape) && inv_shape >= 1.0 - 1e-9) {
    const int k = static_cast<int>(std::llround(inv_shape));
    t.series_hint = [k](double c,
                        std::size_t order) -> std::optional<TruncatedSeries> {
      return negbin_kM(1.0 / c, k).series_seed(order);
    };
  }
  return t;
}

LaplaceSpec geomH_limit_transform() {
  LaplaceSpec t;
  t.name = "geomH-limit";
  t.eval = [](double u) { return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * u)); };
  t.eval_complex = [](std::complex<double> z) {
    return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * z));
  };
  t.deriv_at_0 = -1.0;
  t.u_max = 1e18;
  // Every rescale matches the continuous-time population law whose elapsed
  // time satisfies e^{2t} = c, so the exact series check applies on the
  // whole interval.
  t.series_hint = [](double c,
                     std::size_t order) -> std::optional<TruncatedSeries> {
    const double tt = 0.5 * std::log(c);
    return geometric_H_ctbp(tt).series_seed(order);
  };
  return t;
}

LaplaceSpec mittag_leffler_transform(double alpha, double beta) {
  if (!(alpha > 0.0) || alpha > 1.0 || !(beta > 0.0)) {
    throw std::invalid_argument(
        "mittag-leffler transform requires alpha in (0,1], beta > 0");
  }
  LaplaceSpec t;
  std::ostringstream label;
  label << "mittag-leffler(alpha=" << alpha << ",beta=" << beta << ")";
  t.name = label.str();
  t.params = {alpha, beta};
  t.eval = [alpha, beta](double u) {
    return 1.0 / (1.0 + beta * std::pow(u, alpha));
  };
  t.eval_complex = [alpha, beta](std::complex<double> z) {
    return 1.0 / (1.0 + beta * std::pow(z, std::complex<double>(alpha, 0.0)));
  };
  t.deriv_at_0 =
      alpha < 1.0 ? -std::numeric_limits<double>::infinity() : -beta;
  t.u_max = 1e18;
  // The rescaled map is geometric with success probability c^{-alpha}, for
  // every c >= 1.
  t.series_hint = [alpha](double c,
                          std::size_t order) -> std::optional<TruncatedSeries> {
    return geometric(std::pow(c, -alpha)).series_seed(order);
  };
  return t;
}

LaplaceSpec transform_by_name(const std::string& spec) {
  const ParsedSpec ps = parse_spec_string(spec);
  auto no_params = [&ps]() {
    if (!ps.params.empty()) {
      throw std::invalid_argument("transform '" + ps.name +
                                  "' takes no parameters");
    }
  };
  if (ps.name == "exp1") {
    no_params();
    return exp1_transform();
  }
  if (ps.name == "delta1") {
    no_params();
    return delta1_transform();
  }
  if (ps.name == "cosh") {
    no_params();
    return cosh_transform();
  }
  if (ps.name == "geomH-limit") {
    no_params();
    return geomH_limit_transform();
  }
  if (ps.name == "gamma") {
    const double shape = require_param(ps, "shape");
    const double rate = param_or(ps, "rate", shape);
    return gamma_transform(shape, rate);
  }
  if (ps.name == "mittag-leffler") {
    const double alpha = require_param(ps, "alpha");
    const double beta = param_or(ps, "beta", 1.0);
    return mittag_leffler_transform(alpha, beta);
  }
  throw std::invalid_argument("unknown transform '" + ps.name +
                              "'; valid: exp1, delta1, cosh, geomH-limit, "
                              "gamma, mittag-leffler");
}

std::vector<std::string> transform_names() {
  return {"exp1",        "delta1", "cosh",
          "geomH-limit", "gamma",  "mittag-leffler"};
}

// ---------------------------------------------------------------------------
// Inversion and the rescaling map
// ---------------------------------------------------------------------------

double laplace_inverse(const LaplaceSpec& transform, double s) {
  if (!(s > transform.atom) || s > 1.0) {
    throw std::domain_error("laplace_inverse: s must lie in (atom, 1]");
  }
  if (s >= 1.0) return 0.0;

  // Bracket the root by doubling; the transform is strictly decreasing.
  double lo = 0.0;
  double hi = 1e-12;
  while (transform.eval(hi) > s) {
    lo = hi;
    hi *= 2.0;
    if (hi > transform.u_max) {
      throw std::domain_error(
          "laplace_inverse: target not reachable below u_max");
    }
  }
  // Bisect until the interval collapses onto adjacent doubles.
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo) || !(mid < hi)) break;
    if (transform.eval(mid) > s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double scale_map(const LaplaceSpec& transform, double c, double s) {
  if (!(c >= 1.0)) {
    throw std::domain_error("scale_map: requires c >= 1");
  }
  if (s == 1.0) return 1.0;
  if (s == 0.0) {
    if (transform.atom == 0.0) return 0.0;
    throw std::domain_error("scale_map: s = 0 unreachable (atom > 0)");
  }
  return transform.eval(c * laplace_inverse(transform, s));
}

// ---------------------------------------------------------------------------
// Generating-function verdicts for the rescaling map
// ---------------------------------------------------------------------------

namespace {

// Numeric fallback when no exact series is available: decide whether the
// map s -> L(c L^{-1}(s)) looks like a power series with nonnegative
// coefficients.  Three stages: value sanity on [0,1], the leading exponent
// at s -> 0, and forward-difference probes of the remainder.
PgfVerdict numeric_pgf_probe(const LaplaceSpec& transform, double c) {
  PgfVerdict v;
  v.tolerance_used = kRelTol;
  v.is_pgf = true;
  v.worst_violation = 0.0;

  std::map<double, double> cache;
  auto phi = [&](double s) {
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    const double val = scale_map(transform, c, s);
    cache.emplace(s, val);
    return val;
  };

  // Stage 0: values must be nonnegative, nondecreasing, and reach 1 at s=1.
  double prev = 0.0;
  for (int i = 0; i <= 8; ++i) {
    const double s = static_cast<double>(i) / 8.0;
    const double val = phi(s);
    if (val < -1e-12 || val < prev - 1e-12) {
      v.is_pgf = false;
      v.worst_violation = val - prev;
      v.mode = "numeric/monotonicity";
      return v;
    }
    prev = val;
  }
  if (std::abs(phi(1.0) - 1.0) > 1e-9) {
    v.is_pgf = false;
    v.worst_violation = phi(1.0) - 1.0;
    v.mode = "numeric/normalization";
    return v;
  }

  // Stage 1: the exponent of the leading power at s -> 0 must be a whole
  // number.  Fit log(phi) against log(s) across three decades.
  {
    std::vector<double> xs, ys;
    const int pts = 20;
    for (int i = 0; i < pts; ++i) {
      const double frac = static_cast<double>(i) / (pts - 1);
      const double s = 1e-6 * std::pow(1e3, frac);  // 1e-6 .. 1e-3
      const double val = phi(s);
      if (!(val > 0.0)) {
        v.is_pgf = false;
        v.worst_violation = val;
        v.mode = "numeric/negative-value";
        return v;
      }
      xs.push_back(std::log(s));
      ys.push_back(std::log(val));
    }
    const double rho = fit_line(xs, ys).slope;
    if (std::abs(rho - std::round(rho)) > 0.02 || rho < 0.5) {
      v.is_pgf = false;
      v.worst_violation = rho - std::round(rho);
      std::ostringstream m;
      m << "numeric/leading-exponent rho=" << rho;
      v.mode = m.str();
      return v;
    }
  }

  // Stage 2: forward differences at 0.  For a power series with nonnegative
  // coefficients, Delta^n phi(0) over step h scales like h^n with a
  // nonnegative constant; a persistent fractional scaling exponent or a
  // persistently negative difference rules a series out.
  const std::vector<double> steps = {0.02, 0.01, 0.005, 0.0025};
  for (int n = 2; n <= 12; ++n) {
    std::vector<double> binom(static_cast<std::size_t>(n) + 1, 0.0);
    binom[0] = 1.0;
    for (int j = 1; j <= n; ++j) {
      binom[static_cast<std::size_t>(j)] =
          binom[static_cast<std::size_t>(j - 1)] *
          static_cast<double>(n - j + 1) / static_cast<double>(j);
    }
    const double floor_n = std::ldexp(1e-13, n);  // 2^n * 1e-13
    std::vector<double> lx, ly, diffs;
    for (const double h : steps) {
      double d = 0.0;
      for (int j = 0; j <= n; ++j) {
        const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
        d += sign * binom[static_cast<std::size_t>(j)] *
             phi(static_cast<double>(j) * h);
      }
      diffs.push_back(d);
      if (std::abs(d) > 30.0 * floor_n) {
        lx.push_back(std::log(h));
        ly.push_back(std::log(std::abs(d)));
      }
    }
    if (lx.size() < 3) continue;  // differences at this order are noise
    const double slope = fit_line(lx, ly).slope;
    const bool fractional = std::abs(slope - std::round(slope)) > 0.1;
    if (slope < static_cast<double>(n) - 0.3 && fractional) {
      v.is_pgf = false;
      v.worst_violation = slope;
      std::ostringstream m;
      m << "numeric/fractional-remainder order=" << n << " slope=" << slope;
      v.mode = m.str();
      return v;
    }
    bool all_negative = true;
    for (const double d : diffs) {
      if (d > -30.0 * floor_n) all_negative = false;
    }
    if (all_negative) {
      v.is_pgf = false;
      v.first_bad_index = static_cast<std::size_t>(n);
      v.worst_violation = diffs.back();
      std::ostringstream m;
      m << "numeric/negative-difference order=" << n;
      v.mode = m.str();
      return v;
    }
  }

  v.mode = "numeric/clean";
  return v;
}

}  // namespace

PgfVerdict pgfness_of_map(const LaplaceSpec& transform, double c,
                          std::size_t order) {
  if (transform.series_hint) {
    if (auto hint = transform.series_hint(c, order)) {
      PgfVerdict v = check_pgf(*hint, kRelTol);
      v.mode = "series/" + v.mode;
      return v;
    }
  }
  return numeric_pgf_probe(transform, c);
}

// ---------------------------------------------------------------------------
// Residuals and gaps
// ---------------------------------------------------------------------------

double poincare_residual(const std::function<double(double)>& phi,
                         const LaplaceSpec& transform, double c, double u_hi,
                         std::size_t grid) {
  double worst = 0.0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double u = u_hi * static_cast<double>(i) / static_cast<double>(grid);
    const double lhs = phi(transform.eval(u));
    const double rhs = transform.eval(c * u);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double commute_gap(const std::function<double(double)>& a,
                   const std::function<double(double)>& b, std::size_t grid) {
  double worst = 0.0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(grid);
    worst = std::max(worst, std::abs(a(b(s)) - b(a(s))));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Semigroup scan
// ---------------------------------------------------------------------------

namespace {

bool near_rel(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool same_set(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!near_rel(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

std::string to_string(SemigroupClass cls) {
  switch (cls) {
    case SemigroupClass::Trivial:
      return "Trivial";
    case SemigroupClass::Cyclic:
      return "Cyclic";
    case SemigroupClass::Naturals:
      return "Naturals";
    case SemigroupClass::Squares:
      return "Squares";
    case SemigroupClass::FullInterval:
      return "FullInterval";
    case SemigroupClass::Unclassified:
      return "Unclassified";
  }
  return "Unclassified";
}

ScanResult semigroup_scan(const LaplaceSpec& transform,
                          const std::vector<double>& c_grid, std::size_t order,
                          unsigned threads) {
  ScanResult result;
  result.c_grid = c_grid;
  result.verdicts.resize(c_grid.size());

  unsigned workers = threads > 0 ? threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(
                             workers, static_cast<unsigned>(c_grid.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < c_grid.size(); ++i) {
      result.verdicts[i] = pgfness_of_map(transform, c_grid[i], order);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= c_grid.size()) return;
        result.verdicts[i] = pgfness_of_map(transform, c_grid[i], order);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    if (result.verdicts[i].is_pgf) result.accepted.push_back(c_grid[i]);
  }

  // Classify the accepted set against structural templates, most specific
  // first.
  const std::vector<double> grid_sorted = sorted_unique(c_grid);
  const std::vector<double> accepted_sorted = sorted_unique(result.accepted);

  std::vector<double> ones, integers, squares;
  for (const double c : grid_sorted) {
    if (near_rel(c, 1.0)) ones.push_back(c);
    if (near_integer(c)) integers.push_back(c);
    if (near_integer(std::sqrt(c))) squares.push_back(c);
  }

  auto classify = [&]() -> SemigroupClass {
    // Nothing accepted beyond the always-admissible identity scale.
    if (accepted_sorted.empty()) {
      return SemigroupClass::Trivial;
    }
    if (!grid_sorted.empty() && same_set(accepted_sorted, grid_sorted)) {
      return SemigroupClass::FullInterval;
    }
    if (!ones.empty() && same_set(accepted_sorted, ones)) {
      return SemigroupClass::Trivial;
    }
    if (!squares.empty() && same_set(accepted_sorted, squares)) {
      return SemigroupClass::Squares;
    }
    if (!integers.empty() && same_set(accepted_sorted, integers)) {
      return SemigroupClass::Naturals;
    }
    // Cyclic: accepted = the powers of the smallest accepted base > 1 that
    // land on the grid.
    for (const double a : accepted_sorted) {
      if (a <= 1.0 + 1e-9) continue;
      std::vector<double> powers;
      for (const double c : grid_sorted) {
        const double k = std::log(c) / std::log(a);
        if (k > -0.5 && near_integer(k, 1e-6) &&
            near_rel(std::pow(a, std::round(k)), c, 1e-6)) {
          powers.push_back(c);
        }
      }
      if (same_set(accepted_sorted, sorted_unique(powers))) {
        result.cyclic_base = a;
        return SemigroupClass::Cyclic;
      }
      break;  // only the smallest accepted base can generate it
    }
    return SemigroupClass::Unclassified;
  };
  result.classification = classify();

  // Closure check: any product of accepted scales that lands on the grid
  // must itself be accepted.
  result.closure_ok = true;
  auto is_accepted = [&](double g) {
    for (const double acc : accepted_sorted) {
      if (near_rel(acc, g)) return true;
    }
    return false;
  };
  for (const double a : accepted_sorted) {
    for (const double b : accepted_sorted) {
      const double p = a * b;
      for (const double g : grid_sorted) {
        if (near_rel(g, p) && !is_accepted(g)) result.closure_ok = false;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Scaling limits
// ---------------------------------------------------------------------------

std::vector<double> scaling_limit_gaps(const LaplaceSpec& transform,
                                       const std::vector<double>& c_sequence,
                                       double u_hi, std::size_t grid) {
  std::vector<double> gaps;
  gaps.reserve(c_sequence.size());
  for (const double c : c_sequence) {
    if (!(c >= 1.0)) {
      throw std::domain_error("scaling_limit_gaps: requires c >= 1");
    }
    double worst = 0.0;
    for (std::size_t i = 1; i <= grid; ++i) {
      const double u =
          u_hi * static_cast<double>(i) / static_cast<double>(grid);
      const double s = std::exp(-u / c);
      const double mapped = scale_map(transform, c, s);
      worst = std::max(worst, std::abs(mapped - transform.eval(u)));
    }
    gaps.push_back(worst);
  }
  return gaps;
}

double laplace_mean_limit(const std::function<double(double)>& transform,
                          const std::vector<double>& u_sequence) {
  std::vector<double> xs, ys;
  for (const double u : u_sequence) {
    if (!(u > 0.0)) {
      throw std::domain_error("laplace_mean_limit: u values must be positive");
    }
    xs.push_back(u);
    ys.push_back((1.0 - transform(u)) / u);
  }
  if (xs.empty()) {
    throw std::domain_error("laplace_mean_limit: empty u sequence");
  }
  if (xs.size() == 1) return ys[0];
  // Neville polynomial extrapolation of the ratio sequence to u = 0: the
  // ratio is analytic at 0 for finite-mean transforms, so the degree-(n-1)
  // interpolant removes the O(u), ..., O(u^(n-1)) bias terms that a plain
  // line fit would leave behind.
  std::vector<double> p = ys;
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double dx = xs[i + level] - xs[i];
      if (dx == 0.0) {
        throw std::domain_error("laplace_mean_limit: u values must be distinct");
      }
      p[i] = (xs[i + level] * p[i] - xs[i] * p[i + 1]) / dx;
    }
  }
  return p[0];
}

// ---------------------------------------------------------------------------
// Continuous-time limit transform, inverted from the generator alone
// ---------------------------------------------------------------------------

double ct_laplace_inverse(const GeneratingDistribution& generator, double s) {
  const double c = generator.offspring_mean;
  if (!std::isfinite(c) || !(c > 1.0)) {
    throw std::domain_error(
        "ct_laplace_inverse: requires a supercritical generator with finite "
        "mean");
  }
  const double q = generator.extinction_prob;
  if (!(s > q) || !(s < 1.0)) {
    throw std::domain_error("ct_laplace_inverse: s must lie in (q, 1)");
  }

  const auto& h = generator.h;
  // Regularized integrand: (c-1)/(h(x)-x) - 1/(x-1), whose singular parts
  // at x -> 1 cancel.  Evaluated directly away from 1; over the last
  // stretch, where cancellation would eat the precision, a linear local
  // model anchored at t0 and 2*t0 is integrated instead.
  auto g = [&](double x) {
    const double hx = h(x);
    const double num = (c - 1.0) * (x - 1.0) - (hx - x);
    const double den = (hx - x) * (x - 1.0);
    return num / den;
  };

  const double t0 = 1e-4;
  const double upper = 1.0 - t0;
  const double g1 = g(1.0 - t0);
  const double g2 = g(1.0 - 2.0 * t0);
  const double a0 = 2.0 * g1 - g2;        // model value at x = 1
  const double a1 = (g2 - g1) / t0;       // model slope in t = 1 - x

  double integral = 0.0;
  if (s < upper) {
    integral += integrate(g, s, upper, 1e-12);
    integral += a0 * t0 + 0.5 * a1 * t0 * t0;
  } else {
    const double t_s = 1.0 - s;
    integral += a0 * t_s + 0.5 * a1 * t_s * t_s;
  }
  return (1.0 - s) * std::exp(-integral);
}

double ct_laplace_eval(const GeneratingDistribution& generator, double u) {
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw std::domain_error("ct_laplace_eval: u must be finite and nonnegative");
  }
  if (u == 0.0) return 1.0;
  const double q = generator.extinction_prob;
  // ct_laplace_inverse decreases from +inf (s -> q) to 0 (s -> 1); bracket
  // the root and bisect to machine spacing.
  double lo = q + 1e-12;
  double hi = 1.0 - 1e-15;
  if (ct_laplace_inverse(generator, lo) <= u) return lo;
  for (int iter = 0; iter < 120 && hi - lo > 1e-16 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (ct_laplace_inverse(generator, mid) > u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace nstable
