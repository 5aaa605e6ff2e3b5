#pragma once

#include "common.hpp"

namespace shocklab {

// Least-squares fit of D(lambda) ~ C1 * exp(C2 * sqrt(lambda)) from samples
// given as complex logs (so magnitudes far outside double range are fine).
// The error is the paper's convergence metric: the maximum relative error
// between D and the fit at lambda = R and lambda = i*R.
struct HfFit {
    double c1 = 0.0;
    double c2 = 0.0;
    double error = 0.0;
};

HfFit fit_hf(const std::vector<Complex>& lambdas, const std::vector<LogComplex>& values,
             double radius);

}  // namespace shocklab
