#include "hugoniot.hpp"

#include <algorithm>

#include "rootfind.hpp"

namespace shocklab {

ShockTriple shock_from_states(const EquationOfState& model, double tau_m, double S_m,
                              double tau_p, double S_p) {
    ShockTriple sh;
    sh.minus = thermo_eval(model, tau_m, S_m);
    sh.plus = thermo_eval(model, tau_p, S_p);
    sh.jump_tau = sh.plus.tau - sh.minus.tau;
    sh.jump_p = sh.plus.p - sh.minus.p;
    sh.jump_e = sh.plus.e - sh.minus.e;
    if (sh.jump_tau == 0.0)
        throw DegenerateShock("shock_from_states: [tau] = 0");
    double s2 = -sh.jump_p / sh.jump_tau;
    if (!(s2 > 0.0))
        throw DegenerateShock("shock_from_states: -[p]/[tau] <= 0");
    sh.sigma = -std::sqrt(s2);  // 1-shock branch
    sh.jump_v = -sh.sigma * sh.jump_tau;
    sh.v_minus = 0.0;
    sh.v_plus = sh.jump_v;
    sh.lax_left = sh.minus.c * sh.minus.c < s2;
    sh.lax_right = s2 < sh.plus.c * sh.plus.c;
    sh.lax = sh.lax_left && sh.lax_right;
    return sh;
}

double hugoniot_residual(const EquationOfState& model, const ThermoState& ref, double tau,
                         double S) {
    ThermoState st = thermo_eval(model, tau, S);
    return (st.e - ref.e) + 0.5 * (st.p + ref.p) * (tau - ref.tau);
}

namespace {

// Solve H(tau, S) = 0 for tau on (lo, hi), assuming a sign change; bisection
// followed by two guarded Newton polish steps (dH/dtau = (p_tau [tau] - [p])/2
// with jumps relative to ref).
double solve_tau(const EquationOfState& model, const ThermoState& ref, double S, double lo,
                 double hi) {
    auto H = [&](double tau) { return hugoniot_residual(model, ref, tau, S); };
    double tol = kHugoniotBisectTol * std::max(1.0, std::abs(hi));
    double tau = bisect(H, lo, hi, tol, kHugoniotMaxIter);
    for (int polish = 0; polish < 2; ++polish) {
        ThermoState st = thermo_eval(model, tau, S);
        double dH = 0.5 * (st.p_tau * (tau - ref.tau) - (st.p - ref.p)) ;
        if (dH == 0.0) break;
        double step = H(tau) / dH;
        double next = tau - step;
        if (next <= lo || next >= hi) break;
        tau = next;
    }
    return tau;
}

// Flags record whether each quantity moved in the Smith-regime direction
// between consecutive samples: backward curves expect tau up, p down,
// sigma^2 down, |[v]| up; forward curves expect tau down (may fail), p up,
// sigma^2 up, |[v]| up.
void attach_monotonicity(HugoniotCurve& curve) {
    auto& ss = curve.samples;
    bool backward = curve.direction == HugoniotCurve::Direction::Backward;
    for (size_t k = 0; k < ss.size(); ++k) {
        if (k == 0) {
            ss[k].mono_tau = ss[k].mono_p = ss[k].mono_v = ss[k].mono_sigma2 = true;
            continue;
        }
        const ShockTriple& a = ss[k - 1].shock;
        const ShockTriple& b = ss[k].shock;
        const ThermoState& pa = backward ? a.minus : a.plus;
        const ThermoState& pb = backward ? b.minus : b.plus;
        double s2a = a.sigma * a.sigma, s2b = b.sigma * b.sigma;
        ss[k].mono_tau = backward ? (pb.tau > pa.tau) : (pb.tau < pa.tau);
        ss[k].mono_p = backward ? (pb.p < pa.p) : (pb.p > pa.p);
        ss[k].mono_sigma2 = backward ? (s2b < s2a) : (s2b > s2a);
        ss[k].mono_v = std::abs(b.jump_v) > std::abs(a.jump_v);
    }
}

}  // namespace

HugoniotCurve trace_backward(const EquationOfState& model, double tau_p, double S_p,
                             const std::vector<double>& s_grid) {
    HugoniotCurve curve;
    curve.direction = HugoniotCurve::Direction::Backward;
    curve.anchor = thermo_eval(model, tau_p, S_p);
    const ThermoState& ref = curve.anchor;

    for (size_t i = 0; i + 1 < s_grid.size(); ++i)
        if (!(s_grid[i + 1] < s_grid[i]))
            throw ConfigError("trace_backward: entropy grid must be strictly decreasing");
    if (!s_grid.empty() && !(s_grid.front() < S_p))
        throw ConfigError("trace_backward: grid must start below the anchor entropy");

    double tau_lo = tau_p;
    for (double S : s_grid) {
        auto H = [&](double t) { return hugoniot_residual(model, ref, t, S); };
        double lo = std::max(tau_lo, tau_p);
        double hi = 0.0;
        bool bracketed = false;
        if (ref.p > 0.0) {
            hi = 2.0 * ref.e / ref.p + ref.tau;  // tau_max bound, valid while p > 0 on the curve
            bracketed = (H(lo) > 0.0) != (H(hi) > 0.0);
            if (!bracketed && lo > tau_p) {
                lo = tau_p;
                bracketed = (H(lo) > 0.0) != (H(hi) > 0.0);
            }
        }
        if (!bracketed) {
            // either p_+ <= 0 (tau_max invalid, e.g. the local model anchored
            // at (1,0)) or p turns negative along the curve; grow by doubling
            lo = std::max(tau_lo, tau_p);
            double width = std::max(1.0, 0.5 * tau_p);
            hi = lo + width;
            double f_lo = H(lo);
            while ((H(hi) > 0.0) == (f_lo > 0.0)) {
                width *= 2.0;
                hi = lo + width;
                if (hi > 1e6)
                    throw BracketFailure("trace_backward: no sign change up to tau = 1e6 at S = " +
                                         std::to_string(S));
            }
        }
        double tau = solve_tau(model, ref, S, lo, hi);
        CurveSample cs;
        cs.S = S;
        cs.tau = tau;
        cs.shock = shock_from_states(model, tau, S, tau_p, S_p);
        cs.residual = std::abs(hugoniot_residual(model, ref, tau, S));
        cs.lax_ok = cs.shock.lax && cs.shock.sigma < 0.0;
        curve.samples.push_back(cs);
        tau_lo = tau;  // tau increases as S decreases in the Smith regime
    }
    attach_monotonicity(curve);
    return curve;
}

HugoniotCurve trace_forward(const EquationOfState& model, double tau_m, double S_m,
                            const std::vector<double>& s_grid) {
    HugoniotCurve curve;
    curve.direction = HugoniotCurve::Direction::Forward;
    curve.anchor = thermo_eval(model, tau_m, S_m);
    const ThermoState& ref = curve.anchor;

    for (size_t i = 0; i + 1 < s_grid.size(); ++i)
        if (!(s_grid[i + 1] > s_grid[i]))
            throw ConfigError("trace_forward: entropy grid must be strictly increasing");
    if (!s_grid.empty() && !(s_grid.front() > S_m))
        throw ConfigError("trace_forward: grid must start above the anchor entropy");

    double tau_prev = tau_m;
    for (double S : s_grid) {
        // right states have tau < tau_-; the curve is a continuous graph
        // tau(S), so bracket in an expanding window around the previous sample
        auto H = [&](double t) { return hugoniot_residual(model, ref, t, S); };
        double w = std::max(0.02 * tau_m, 1e-4);
        double lo = 0.0, hi = 0.0;
        bool bracketed = false;
        while (w < 4.0 * tau_m) {
            lo = std::max(tau_prev - w, 1e-9);
            hi = std::min(tau_prev + w, tau_m * (1.0 - 1e-12));
            if (hi > lo && (H(lo) > 0.0) != (H(hi) > 0.0)) { bracketed = true; break; }
            w *= 2.0;
        }
        if (!bracketed)
            throw BracketFailure("trace_forward: no sign change near tau = " +
                                 std::to_string(tau_prev) + " at S = " + std::to_string(S));
        double tau = solve_tau(model, ref, S, lo, hi);
        tau_prev = tau;
        CurveSample cs;
        cs.S = S;
        cs.tau = tau;
        cs.shock = shock_from_states(model, tau_m, S_m, tau, S);
        cs.residual = std::abs(hugoniot_residual(model, ref, tau, S));
        cs.lax_ok = cs.shock.lax && cs.shock.sigma < 0.0;
        curve.samples.push_back(cs);
    }
    attach_monotonicity(curve);
    return curve;
}

double local_cubic_solve(double S) {
    if (S > 0.0) throw DomainError("local_cubic_solve: backward branch requires S <= 0");
    double es = std::exp(S);
    std::vector<double> roots = cubic_roots(1.0, 2.0 * S - 3.0, 3.0 * es, -es);
    // backward branch: the largest real root (>= 1 on S <= 0)
    double tau = roots.back();
    // one more Newton polish against the full cubic
    double f = ((tau + (2.0 * S - 3.0)) * tau + 3.0 * es) * tau - es;
    double df = (3.0 * tau + 2.0 * (2.0 * S - 3.0)) * tau + 3.0 * es;
    if (df != 0.0) tau -= f / df;
    return tau;
}

double stable_hugoniot_entropy(double tau_p, double S_p, double tau) {
    double x = tau / tau_p;
    if (!(x > 1.0 / 3.0 && x < 3.0))
        throw DomainError("stable_hugoniot_entropy: tau/tau_p outside (1/3, 3)");
    return S_p + std::log((3.0 * tau_p - tau) / (3.0 * tau - tau_p) * (tau * tau) /
                          (tau_p * tau_p));
}

}  // namespace shocklab
