#pragma once

#include <functional>
#include <optional>

#include "common.hpp"

namespace shocklab {

enum class OdeMethod { Stiff, NonStiff };

struct IntegratorSpec {
    OdeMethod method = OdeMethod::Stiff;
    double rtol = 1e-6;
    double atol = 1e-8;
    int max_steps = 200000;
    double initial_step = 0.0;  // 0 -> automatic
    double max_step = 0.0;      // 0 -> unbounded; caps stored-node spacing
    void validate() const {
        if (rtol <= 0.0 || atol <= 0.0) throw ConfigError("IntegratorSpec: tolerances must be positive");
        if (max_steps <= 0) throw ConfigError("IntegratorSpec: max_steps must be positive");
    }
};

using OdeRhs = std::function<void(double x, const double* y, double* dydx)>;
// Optional analytic Jacobian (row-major n x n); when absent the stiff solver
// uses internal finite differences.
using OdeJac = std::function<void(double x, const double* y, double* jac)>;
// Events are scalar functions whose sign change stops the integration; the
// crossing is located on the dense output.
using EventFn = std::function<double(double x, const double* y)>;
// Called after each accepted step; may modify y in place (return true if it
// did, so derivative bookkeeping is refreshed).  Used for frame
// re-orthonormalization in the Evans evolution.
using StepCallback = std::function<bool(double x, double* y)>;

struct OdeNode {
    double x;
    std::vector<double> y;
    std::vector<double> f;
};

struct Trajectory {
    std::vector<OdeNode> nodes;
    bool event_hit = false;
    int event_index = -1;
    int steps = 0;
    // cubic Hermite dense output on the stored nodes
    std::vector<double> eval(double x) const;
    const OdeNode& back() const { return nodes.back(); }
};

Trajectory integrate(const IntegratorSpec& spec, int n, const OdeRhs& f, const OdeJac* jac,
                     double x0, double x1, const std::vector<double>& y0,
                     const std::vector<EventFn>& events = {},
                     const StepCallback* on_step = nullptr);

}  // namespace shocklab
