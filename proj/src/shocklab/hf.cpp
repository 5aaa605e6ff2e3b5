#include "hf.hpp"


#include <algorithm>
#include <cmath>
namespace shocklab {

HfFit hf_fit_at_radius(ContourEvaluator& ev, double radius, int arc_points) {
    if (arc_points < 4) throw ConfigError("hf_fit_at_radius: need at least 4 arc points");
    // extra points at larger radii keep the phase unwrap unambiguous
    int n = std::max(arc_points, int(4.0 * std::sqrt(radius)));
    ev.begin_walk();
    std::vector<std::pair<double, Complex>> pts;
    std::vector<Complex> lambdas;
    for (int j = 0; j < n; ++j) {
        double th = 0.5 * kPi * j / double(n - 1);
        Complex lam = radius * Complex(std::cos(th), std::sin(th));
        pts.push_back({j / double(n - 1), lam});
        lambdas.push_back(lam);
    }
    std::vector<LogComplex> vals = ev.evaluate(pts);
    return fit_hf(lambdas, vals, radius);
}

HfStudy hf_radius(ContourEvaluator& ev, const HfOptions& opt) {
    HfStudy study;
    for (double r = opt.r_start; r <= opt.r_max * (1.0 + 1e-12); r *= 2.0) {
        HfFit fit = hf_fit_at_radius(ev, r, opt.arc_points);
        study.rows.push_back({r, fit.error, fit.c1, fit.c2});
        if (fit.error <= opt.threshold) {
            study.converged = true;
            study.recommended_radius = r;
            break;
        }
    }
    return study;
}

}  // namespace shocklab
