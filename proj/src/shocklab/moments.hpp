#pragma once

#include "evans.hpp"

namespace shocklab {

struct RootEstimate {
    Complex location;
    int multiplicity = 1;
    std::string trail;  // subdivision trail, e.g. "r0t1"
};

struct MomentOptions {
    WindingOptions winding;
    double fd_step_rel = 1e-6;   // d/dlambda by centered difference, step 1e-6*max(1,|lambda|)
    int max_depth = 14;
    double inner_radius_frac = 1e-4;  // sector floor keeps contours off lambda = 0
    bool polish = true;
};

// Roots of an analytic function inside the semicircle |lambda| < R, Re >= 0,
// by winding + method of moments with divide-and-conquer sector subdivision
// (at most two roots recovered per subcontour).  Output is conjugate-symmetrized.
std::vector<RootEstimate> moment_roots(ContourEvaluator& ev, double radius,
                                       const MomentOptions& opt);

// As above for a standalone function (synthetic oracles and tests).
std::vector<RootEstimate> moment_roots(const std::function<Complex(Complex)>& f, double radius,
                                       const MomentOptions& opt);

// Winding on a small full circle (used for root re-insertion checks).
int winding_circle(ContourEvaluator& ev, Complex center, double radius,
                   const WindingOptions& opt);

}  // namespace shocklab
