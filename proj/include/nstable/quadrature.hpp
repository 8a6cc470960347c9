#pragma once

#include <functional>

namespace nstable {

// Adaptive Gauss-Kronrod (G7,K15) integration on a finite interval.
// Subdivides until the embedded error estimate of every panel is below the
// tolerance share; intended for the smooth-after-substitution integrands
// used by the transform checks.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 30);

// Integral over [a, infinity) through the rational substitution
// x = a + t/(1-t), t in [0,1).
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double abs_tol = 1e-10);

}  // namespace nstable
