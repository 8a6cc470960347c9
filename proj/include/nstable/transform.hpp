#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nstable/families.hpp"
#include "nstable/series.hpp"

namespace nstable {

// A Laplace transform L(u) = E[exp(-uY)] of a nonnegative law, together
// with whatever closed-form extras the catalog knows about it.  eval must
// be continuous and strictly decreasing from 1 to `atom` on [0, u_max].
struct LaplaceSpec {
  std::string name;
  std::vector<double> params;
  std::function<double(double)> eval;
  std::function<std::complex<double>(std::complex<double>)> eval_complex;  // optional
  double deriv_at_0 = -1.0;  // -E[Y]; -1 for the mean-one normalization
  double atom = 0.0;         // mass at +infinity: lim_{u->inf} L(u)
  double u_max = 1e15;
  // Exact series of the scale map at c, when available for that c.
  std::function<std::optional<TruncatedSeries>(double c, std::size_t order)> series_hint;
};

// Catalog: the transforms exercised by the scan and limit checks.
LaplaceSpec exp1_transform();                    // 1/(1+u), Exp(1)
LaplaceSpec delta1_transform();                  // e^-u, unit point mass
LaplaceSpec cosh_transform();                    // 1/cosh(sqrt(2u)), walk-hitting limit
LaplaceSpec gamma_transform(double shape, double rate);  // (1+u/rate)^(-shape)
LaplaceSpec geomH_limit_transform();             // 2/(1+sqrt(1+4u))
LaplaceSpec mittag_leffler_transform(double alpha, double beta);  // 1/(1+beta u^alpha)

LaplaceSpec transform_by_name(const std::string& spec);
std::vector<std::string> transform_names();

// u >= 0 with |L(u) - s| at roundoff: geometric bracketing plus bisection
// to ULP on the strictly decreasing eval.  s must lie in (atom, 1].
double laplace_inverse(const LaplaceSpec& L, double s);

// The scale map phi_c(s) = L(c * L^{-1}(s)): the candidate PGF attached to
// scale c.  c >= 1; phi_1 is the identity up to roundoff.
double scale_map(const LaplaceSpec& L, double c, double s);

// Decides whether phi_c is a PGF.  Tiered: exact series when the catalog
// has one for this c; otherwise small-s exponent regression (non-integer
// leading power rejects), fractional-power remainder probes via high-order
// divided differences, and absolute-monotonicity sign checks to order 12.
PgfVerdict pgfness_of_map(const LaplaceSpec& L, double c, std::size_t order = 64);

// sup_{u in grid} |phi(L(u)) - L(c u)| over a uniform grid on [0, u_hi].
double poincare_residual(const std::function<double(double)>& phi,
                         const LaplaceSpec& L, double c, double u_hi = 20.0,
                         std::size_t grid = 201);

// sup-norm commutator gap of two maps on a uniform s-grid in [0,1].
double commute_gap(const std::function<double(double)>& a,
                   const std::function<double(double)>& b,
                   std::size_t grid = 101);

enum class SemigroupClass { Trivial, Cyclic, Naturals, Squares, FullInterval, Unclassified };

std::string to_string(SemigroupClass c);

struct ScanResult {
  std::vector<double> c_grid;
  std::vector<PgfVerdict> verdicts;
  std::vector<double> accepted;
  SemigroupClass classification = SemigroupClass::Unclassified;
  double cyclic_base = 0.0;  // set for Cyclic(a)
  bool closure_ok = true;    // accepted set closed under products inside the grid
};

ScanResult semigroup_scan(const LaplaceSpec& L, const std::vector<double>& c_grid,
                          std::size_t order = 64, unsigned threads = 0);

// sup_u |phi_c(e^(-u/c)) - L(u)| on a u-grid in [0, u_hi] for the largest
// scale of the sequence; returns the per-c gaps (last entry = largest c).
std::vector<double> scaling_limit_gaps(const LaplaceSpec& L,
                                       const std::vector<double>& c_sequence,
                                       double u_hi = 5.0, std::size_t grid = 101);

// Inverse transform of the continuous-time branching limit law, computed
// from the generating PGF h alone:
//   Linv(s) = (1-s) * exp(-I(s)),
//   I(s) = integral_s^1 [ (c-1)/(h(x)-x) - 1/(x-1) ] dx,  c = h'(1),
// which is the unique mean-one normalization of the limit.  Requires a
// supercritical h and s strictly between the extinction probability and 1.
double ct_laplace_inverse(const GeneratingDistribution& H, double s);

// Forward evaluation L(u) of the same limit transform, solved from
// ct_laplace_inverse by bisection (the inverse is strictly decreasing on
// (q, 1)).  L(0) = 1; L decreases to q as u grows.
double ct_laplace_eval(const GeneratingDistribution& H, double u);

// E[Y] recovered from the transform as the extrapolated limit of
// (1 - L(u))/u along a decreasing u-sequence (linear Richardson fit).
double laplace_mean_limit(const std::function<double(double)>& L,
                          const std::vector<double>& u_sequence);

}  // namespace nstable
