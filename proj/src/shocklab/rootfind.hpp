#pragma once

#include <functional>

#include "common.hpp"

namespace shocklab {

// Bisection on [a,b] with f(a), f(b) of opposite sign; returns the midpoint of
// the final interval with |interval| <= xtol.
double bisect(const std::function<double(double)>& f, double a, double b, double xtol,
              int max_iter = 200);

// Newton from x0 protected by a bisection bracket [a,b] (must contain a sign
// change).  Used for the scalar EOS inversions.
double newton_bisect(const std::function<double(double)>& f,
                     const std::function<double(double)>& df, double x0, double a, double b,
                     double xtol, int max_iter = 100);

// All real roots of a3 x^3 + a2 x^2 + a1 x + a0, each polished by one Newton
// step.  Complex pairs are omitted.
std::vector<double> cubic_roots(double a3, double a2, double a1, double a0);

}  // namespace shocklab
