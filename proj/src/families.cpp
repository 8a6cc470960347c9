#include "nstable/families.hpp"

#include <cmath>
#include <stdexcept>

#include "nstable/keyval.hpp"
#include "nstable/samplers.hpp"

namespace nstable {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double pgf_extinction_prob(const std::function<double(double)>& pgf) {
  if (pgf(0.0) <= 0.0) return 0.0;  // no mass at zero: certain survival
  // Smallest root of pgf(q) = q on [0,1): pgf(q) - q starts positive at 0
  // and is negative just below 1 in the supercritical case; bisect the sign
  // change, falling back to 1 for (sub)critical laws.  The probe point sits
  // 1e-6 below 1 so that the critical case pgf(s) - s = O((1-s)^2) still
  // clears evaluation roundoff; roots within 1e-6 of 1 are reported as 1.
  double lo = 0.0, hi = 1.0 - 1e-6;
  if (pgf(hi) - hi >= 0.0) return 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (pgf(mid) - mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PgfFamily geometric(double p) {
  require(p > 0.0 && p <= 1.0, "geometric: p in (0,1] required");
  PgfFamily f;
  f.name = "geometric";
  f.params = {p};
  f.eval = [p](double s) { return p * s / (1.0 - (1.0 - p) * s); };
  f.mean = 1.0 / p;
  f.series_seed = [p](std::size_t order) {
    TruncatedSeries out(order);
    double mass = p;
    for (std::size_t n = 1; n <= order; ++n) {
      out.coeffs[n] = mass;
      mass *= (1.0 - p);
    }
    return out;
  };
  return f;
}

PgfFamily negbin_kM(double p, int k) {
  require(p > 0.0 && p <= 1.0, "negbin-kM: p in (0,1] required");
  require(k >= 1, "negbin-kM: k >= 1 required");
  PgfFamily f;
  f.name = "negbin-kM";
  f.params = {p, static_cast<double>(k)};
  const double inv_k = 1.0 / static_cast<double>(k);
  f.eval = [p, k, inv_k](double s) {
    return std::pow(p, inv_k) * s / std::pow(1.0 - (1.0 - p) * std::pow(s, k), inv_k);
  };
  f.mean = 1.0 / p;
  f.series_seed = [p, k, inv_k](std::size_t order) {
    // Support 1 + k*m: coefficient p^(1/k) * C(m-1+1/k, m) (1-p)^m.
    TruncatedSeries out(order);
    double b = std::pow(p, inv_k);
    for (std::size_t m = 0; 1 + static_cast<std::size_t>(k) * m <= order; ++m) {
      out.coeffs[1 + static_cast<std::size_t>(k) * m] = b;
      b *= (static_cast<double>(m) + inv_k) / (static_cast<double>(m) + 1.0) * (1.0 - p);
    }
    return out;
  };
  return f;
}

PgfFamily sibuya(double p) {
  require(p > 0.0 && p <= 1.0, "sibuya: p in (0,1] required");
  PgfFamily f;
  f.name = "sibuya";
  f.params = {p};
  f.eval = [p](double s) { return 1.0 - std::pow(1.0 - s, p); };
  f.mean = (p < 1.0) ? infinite_mean() : 1.0;
  f.series_seed = [p](std::size_t order) {
    TruncatedSeries out(order);
    double c = p;  // |binom(p, n)| with alternating-sign cancellation folded in
    for (std::size_t n = 1; n <= order; ++n) {
      out.coeffs[n] = c;
      c *= (static_cast<double>(n) - p) / (static_cast<double>(n) + 1.0);
    }
    return out;
  };
  return f;
}

namespace {

// Coefficients of the Chebyshev polynomial T_n.
std::vector<double> chebyshev_coeffs(int n) {
  std::vector<double> prev{1.0};        // T_0
  if (n == 0) return prev;
  std::vector<double> cur{0.0, 1.0};    // T_1
  for (int m = 2; m <= n; ++m) {
    std::vector<double> next(m + 1, 0.0);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2.0 * cur[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

PgfFamily chebyshev_hitting(int n) {
  require(n >= 1, "chebyshev-hitting: n >= 1 required");
  PgfFamily f;
  f.name = "chebyshev-hitting";
  f.params = {static_cast<double>(n)};
  const auto tn = chebyshev_coeffs(n);
  f.eval = [tn, n](double s) {
    if (s <= 0.0) return (n == 0) ? 1.0 : 0.0;
    // 1 / T_n(1/s) evaluated through the reversed polynomial to stay finite:
    // s^n / (sum_j tn[j] s^(n-j)).
    double denom = 0.0;
    for (std::size_t j = tn.size(); j-- > 0;) {
      denom += tn[j] * std::pow(s, static_cast<double>(tn.size() - 1 - j));
    }
    return std::pow(s, n) / denom;
  };
  f.mean = static_cast<double>(n) * static_cast<double>(n);
  f.series_seed = [tn, n](std::size_t order) {
    // Reciprocal of p(s) = s^n T_n(1/s) (constant term 2^(n-1) != 0),
    // shifted up by n.
    TruncatedSeries p(order);
    for (std::size_t j = 0; j < tn.size(); ++j) {
      const std::size_t k = tn.size() - 1 - j;  // power of s carrying tn[j]
      if (k <= order) p.coeffs[k] += tn[j];
    }
    TruncatedSeries r = reciprocal(p);
    TruncatedSeries out(order);
    for (std::size_t k = 0; k + static_cast<std::size_t>(n) <= order; ++k) {
      out.coeffs[k + static_cast<std::size_t>(n)] = r.coeffs[k];
    }
    return out;
  };
  return f;
}

PgfFamily yule_member(double t) {
  require(t >= 0.0, "yule: t >= 0 required");
  PgfFamily f = geometric(std::exp(-t));
  f.name = "yule";
  f.params = {t};
  f.semigroup_member = [](double u) { return yule_member(u); };
  return f;
}

PgfFamily neveu_member(double t) {
  require(t >= 0.0, "neveu: t >= 0 required");
  PgfFamily f = sibuya(std::exp(-t));
  f.name = "neveu";
  f.params = {t};
  f.semigroup_member = [](double u) { return neveu_member(u); };
  return f;
}

PgfFamily geometric_H_ctbp(double t) {
  require(t >= 0.0, "geomH-ctbp: t >= 0 required");
  PgfFamily f;
  f.name = "geomH-ctbp";
  f.params = {t};
  const double growth = std::exp(2.0 * t);  // offspring mean 3 => e^{(3-1)t}
  f.eval = [growth](double s) {
    if (s == 0.0) return 0.0;
    return 2.0 * s / (s + std::sqrt(s * s + 4.0 * (1.0 - s) * growth));
  };
  f.mean = growth;
  f.series_seed = [growth](std::size_t order) {
    // 2s / (s + sqrt(s^2 + 4(1-s)g)) expanded with series sqrt/reciprocal;
    // the radicand 4g - 4g s + s^2 has constant term 4g > 0.
    TruncatedSeries radicand(order);
    radicand.coeffs[0] = 4.0 * growth;
    if (order >= 1) radicand.coeffs[1] = -4.0 * growth;
    if (order >= 2) radicand.coeffs[2] = 1.0;
    TruncatedSeries root = sqrt_series(radicand);
    TruncatedSeries denom = root;
    if (order >= 1) denom.coeffs[1] += 1.0;
    TruncatedSeries inv = reciprocal(denom);
    TruncatedSeries out(order);
    for (std::size_t k = 0; k + 1 <= order; ++k) out.coeffs[k + 1] = 2.0 * inv.coeffs[k];
    return out;
  };
  f.semigroup_member = [](double u) { return geometric_H_ctbp(u); };
  return f;
}

namespace {

struct ThetaPieces {
  double w;      // (1-q)^theta
  double denom;  // 1 + theta - (1-q)^theta
};

ThetaPieces theta_pieces(double theta, double q) {
  require(theta >= -1.0 && theta <= 1.0 && theta != 0.0,
          "theta: theta in [-1,1] \\ {0} required");
  require(q >= 0.0 && q < 1.0, "theta: q in [0,1) required");
  ThetaPieces tp;
  tp.w = std::pow(1.0 - q, theta);
  tp.denom = 1.0 + theta - tp.w;
  return tp;
}

}  // namespace

PgfFamily theta_member(double p, double theta, double q) {
  require(p > 0.0 && p <= 1.0, "theta: p in (0,1] required");
  require(theta > 0.0 && theta <= 1.0,
          "theta: member requires theta in (0,1]; for theta < 0 the branching "
          "process explodes and the time-t composition is defective");
  theta_pieces(theta, q);  // validates q
  PgfFamily f;
  f.name = "theta";
  f.params = {p, theta, q};
  const double wq = std::pow(1.0 - q, -theta);
  f.eval = [p, theta, q, wq](double s) {
    if (s >= 1.0) return 1.0;
    (void)q;
    const double bracket = p * std::pow(1.0 - s, -theta) + (1.0 - p) * wq;
    return 1.0 - std::pow(bracket, -1.0 / theta);
  };
  f.mean = std::pow(p, -1.0 / theta);
  f.series_seed = [p, theta, wq](std::size_t order) {
    // (1-s)^(-theta) has the all-positive binomial expansion.
    TruncatedSeries neg(order);
    double c = 1.0;
    for (std::size_t n = 0; n <= order; ++n) {
      neg.coeffs[n] = c;
      c *= (theta + static_cast<double>(n)) / (static_cast<double>(n) + 1.0);
    }
    TruncatedSeries bracket = scale(neg, p);
    bracket.coeffs[0] += (1.0 - p) * wq;
    TruncatedSeries powed = pow_series(bracket, -1.0 / theta);
    TruncatedSeries out = scale(powed, -1.0);
    out.coeffs[0] += 1.0;
    return out;
  };
  const double kappa = theta * std::pow(1.0 - q, theta) / theta_pieces(theta, q).denom;
  f.semigroup_member = [theta, q, kappa](double t) {
    return theta_member(std::exp(-kappa * t), theta, q);
  };
  return f;
}

TruncatedSeries series_of(const PgfFamily& family, std::size_t order) {
  if (!family.series_seed)
    throw std::domain_error("series_of: family '" + family.name +
                            "' has no closed coefficient rule");
  return family.series_seed(order);
}

// ---------------------------------------------------------------------------
// Generating distributions for continuous-time branching.
// ---------------------------------------------------------------------------

GeneratingDistribution yule_H() {
  GeneratingDistribution g;
  g.name = "yuleH";
  g.h = [](double s) { return s * s; };
  g.offspring_mean = 2.0;
  g.extinction_prob = 0.0;
  g.sample = [](SplitRng&) { return std::uint64_t{2}; };
  g.member = [](double t) { return yule_member(t); };
  return g;
}

GeneratingDistribution neveu_H() {
  GeneratingDistribution g;
  g.name = "neveuH";
  g.h = [](double s) {
    if (s >= 1.0) return 1.0;
    return s + (1.0 - s) * std::log1p(-s);
  };
  g.offspring_mean = infinite_mean();
  g.extinction_prob = 0.0;
  // Expanding h gives mass 1/(n(n-1)) at n >= 2, i.e. survival 1/n, which
  // inverts to 1 + floor(1/U).
  g.sample = [](SplitRng& rng) {
    const double u = rng.uniform();
    const double v = std::floor(1.0 / u);
    if (v > 9.0e18) return std::uint64_t{1} << 62;
    return 1 + static_cast<std::uint64_t>(v);
  };
  g.member = [](double t) { return neveu_member(t); };
  return g;
}

GeneratingDistribution shifted_geom_H() {
  GeneratingDistribution g;
  g.name = "shifted-geomH";
  g.h = [](double s) { return s * s / (2.0 - s); };
  g.offspring_mean = 3.0;
  g.extinction_prob = 0.0;
  // Mass 2^(1-n) at n >= 2: 2 + geometric failures at p = 1/2.
  g.sample = [](SplitRng& rng) { return 1 + sample_geometric(0.5, rng); };
  g.member = [](double t) { return geometric_H_ctbp(t); };
  return g;
}

GeneratingDistribution theta_H(double theta, double q) {
  const ThetaPieces tp = theta_pieces(theta, q);
  require(theta > -1.0, "thetaH: theta = -1 violates h(1) = 1");
  GeneratingDistribution g;
  g.name = "thetaH";
  g.params = {theta, q};
  g.h = [theta, tp](double s) {
    if (s >= 1.0) return 1.0;
    const double oms = 1.0 - s;
    return s + (std::pow(oms, 1.0 + theta) - tp.w * oms) / tp.denom;
  };
  g.offspring_mean =
      (theta > 0.0) ? 1.0 + tp.w / tp.denom : infinite_mean();
  g.extinction_prob = q;  // h(q) = q by construction
  // Masses: P(0) = (1-w)/d, P(n) = (-1)^n binom(1+theta, n)/d for n >= 2.
  // Survival for n >= 2 has the closed form
  //   P(H > n) = theta * Gamma(n-theta) / (Gamma(1-theta) Gamma(n+1) d),
  // enabling O(log) inversion even for the heavy-tailed theta < 0 branch.
  g.sample = [theta, tp](SplitRng& rng) -> std::uint64_t {
    const double p0 = (1.0 - tp.w) / tp.denom;
    const double u = rng.uniform();
    if (u < p0) return 0;
    const double target = 1.0 - u;  // find smallest n >= 2 with survival < target
    const auto survival = [theta, tp](double n) {
      return theta / tp.denom *
             std::exp(std::lgamma(n - theta) - std::lgamma(1.0 - theta) -
                      std::lgamma(n + 1.0));
    };
    if (survival(2.0) < target) return 2;
    std::uint64_t lo = 2, hi = 4;
    while (survival(static_cast<double>(hi)) >= target) {
      lo = hi;
      if (hi > (1ULL << 62)) return hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (survival(static_cast<double>(mid)) < target) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  };
  if (theta > 0.0) {
    g.member = [theta, q](double t) {
      const ThetaPieces tp2 = theta_pieces(theta, q);
      const double kappa = theta * tp2.w / tp2.denom;
      return theta_member(std::exp(-kappa * t), theta, q);
    };
  }
  return g;
}

PgfFamily family_by_name(const std::string& spec) {
  const ParsedSpec ps = parse_spec_string(spec);
  const auto integral = [&ps](const std::string& key) {
    const double v = require_param(ps, key);
    const double r = std::nearbyint(v);
    if (!(std::abs(v - r) < 1e-9)) {
      throw std::invalid_argument(ps.name + ": parameter '" + key +
                                  "' must be an integer");
    }
    return static_cast<int>(r);
  };
  if (ps.name == "geometric") return geometric(require_param(ps, "p"));
  if (ps.name == "negbin-kM") {
    return negbin_kM(require_param(ps, "p"), integral("k"));
  }
  if (ps.name == "sibuya") return sibuya(require_param(ps, "p"));
  if (ps.name == "chebyshev-hitting") return chebyshev_hitting(integral("n"));
  if (ps.name == "yule") return yule_member(require_param(ps, "t"));
  if (ps.name == "neveu") return neveu_member(require_param(ps, "t"));
  if (ps.name == "geomH-ctbp") return geometric_H_ctbp(require_param(ps, "t"));
  if (ps.name == "theta") {
    return theta_member(require_param(ps, "p"), require_param(ps, "theta"),
                        param_or(ps, "q", 0.0));
  }
  throw std::invalid_argument(
      "unknown PGF family '" + ps.name +
      "'; available: geometric, negbin-kM, sibuya, chebyshev-hitting, yule, "
      "neveu, geomH-ctbp, theta");
}

std::vector<std::string> family_names() {
  return {"geometric", "negbin-kM", "sibuya", "chebyshev-hitting",
          "yule",      "neveu",     "geomH-ctbp", "theta"};
}

}  // namespace nstable
