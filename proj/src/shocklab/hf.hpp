#pragma once

#include "evans.hpp"
#include "fit.hpp"

namespace shocklab {

struct HfRow {
    double radius;
    double error;
    double c1, c2;
};

struct HfStudy {
    std::vector<HfRow> rows;
    bool converged = false;
    double recommended_radius = 0.0;  // first radius with error <= threshold
};

struct HfOptions {
    double r_start = 2.0;
    double r_max = 1024.0;
    double threshold = 0.2;  // convergence criterion on the fit's relative error
    int arc_points = 8;      // samples on the upper quarter arc, endpoints included
};

// Doubling-radius study of how well C1 exp(C2 sqrt(lambda)) approximates the
// Evans function on |lambda| = R; stops at the first radius whose maximum
// relative error at lambda = R, iR is below the threshold.
HfStudy hf_radius(ContourEvaluator& ev, const HfOptions& opt);

// Single-radius fit sampled on the upper quarter arc.
HfFit hf_fit_at_radius(ContourEvaluator& ev, double radius, int arc_points);

}  // namespace shocklab
