#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nstable/rng.hpp"
#include "nstable/transform.hpp"

namespace nstable {

// Exponent of a strictly stable characteristic function: the sampled law
// has E[exp(iuX)] = exp(-conj(g(u))) with g(u) = (beta + i gamma sgn u)|u|^a.
// The conjugate convention makes the extreme-skew boundary gamma =
// beta*tan(pi*alpha/2) the *positive* one-sided law (see sample notes).
struct StableExponent {
  double alpha = 2.0;  // index in (0, 2]
  double beta = 1.0;   // scale-like coefficient, >= 0
  double gamma = 0.0;  // skew-like coefficient
};

// Admissibility rules:
//   alpha in (0,2]; beta >= 0;
//   alpha = 2            -> gamma = 0;
//   alpha in (0,1)u(1,2) -> |gamma| <= beta * |tan(pi*alpha/2)|;
//   alpha = 1            -> gamma unrestricted;
//   beta = 0             -> gamma = 0 (point mass at 0), except alpha = 1
//                           where gamma acts as a pure shift.
bool check_admissible(const StableExponent& e);

// g(u) = (beta + i*gamma*sgn(u)) * |u|^alpha; g(0) = 0.
std::complex<double> g_eval(const StableExponent& e, double u);

// One draw from the strictly stable law with exponent e, via the
// Chambers-Mallows-Stuck trigonometric method (exact, no rejection).
double sample_stable(const StableExponent& e, SplitRng& rng);

// n i.i.d. draws, deterministic in (e, seed).  Degenerate exponents yield
// the appropriate constant vector.
std::vector<double> sample_strictly_stable(const StableExponent& e,
                                           std::size_t n, std::uint64_t seed);

// Draws of Y^{1/alpha} * Z with Y from mix_sampler (nonnegative) and Z
// strictly stable with exponent e, independent streams per component.
std::vector<double> sample_product_representation(
    const std::function<double(SplitRng&)>& mix_sampler,
    const StableExponent& e, std::size_t n, std::uint64_t seed);

// Density of the positive law with transform 1/(1+sqrt(u)):
//   f(x) = 1/sqrt(pi x) - e^x erfc(sqrt(x)),  x > 0.
double kovalenko_half_density(double x);

// Scaled complementary error function exp(t^2) erfc(t), stable for large t.
double erfcx(double t);

// f(u) = L(g(u)): characteristic function of the product-representation law
// assembled from a transform with a complex evaluator.  Throws
// std::invalid_argument when the transform lacks one.
std::complex<double> evaluate_f(const LaplaceSpec& transform,
                                const StableExponent& e, double u);

// A law with a closed-form transform and an exact sampler, used to validate
// sampler/transform agreement.
struct ClosedFormLaw {
  std::string name;
  std::string summary;          // one-line human description
  bool positive = false;        // supported on [0, inf): Laplace comparisons
  bool heavy_tailed = false;    // infinite variance: transform gaps only
  std::function<double(SplitRng&)> sample;
  std::function<double(double)> laplace;             // set when positive
  std::function<std::complex<double>(double)> chf;   // E[exp(iuX)], optional
  std::function<double(double)> cdf;                 // optional closed form
  std::vector<double> u_grid;   // designated transform-comparison grid
};

ClosedFormLaw exponential1_law();
ClosedFormLaw gamma_law(double shape, double rate);
ClosedFormLaw linnik_law(double alpha, double beta);
ClosedFormLaw laplace_dist_law(double beta);
ClosedFormLaw mittag_leffler_law(double alpha, double beta);
ClosedFormLaw kovalenko_half_law();
ClosedFormLaw gaussian_mix_law(double sigma);

// Parses "name" or "name:key=val,...".  Valid names: exp1, gamma, linnik,
// laplace, mittag-leffler, kovalenko, gaussmix.
ClosedFormLaw law_by_name(const std::string& spec);
std::vector<std::string> law_names();

}  // namespace nstable
