#include "lopatinski.hpp"

#include <cmath>

#include "linalg.hpp"
#include "rootfind.hpp"

namespace shocklab {

namespace {

// phat partials at a (tau, S) point via the change-of-variables identities.
struct PhatPoint {
    double p_e, p_tau, c2;
};
PhatPoint phat_at(const ThermoState& st) {
    PhatPoint h;
    h.p_e = -st.raw.e_ts / st.raw.e_s;
    h.p_tau = -st.raw.e_tt + st.raw.e_ts * st.raw.e_t / st.raw.e_s;
    h.c2 = -h.p_tau + st.p * h.p_e;
    return h;
}

}  // namespace

ShockConditions condition_ladder(const EquationOfState& model, const ShockTriple& shock) {
    (void)model;
    const ThermoState& up = shock.plus;
    PhatPoint h = phat_at(up);
    double c = up.c, c2 = up.c * up.c;
    double sigma = shock.sigma;
    double jp = shock.jump_p;

    ShockConditions sc;
    sc.lop = Condition::make(up.p_S * jp - up.T * up.p_tau * (sigma / c - 1.0));
    // partial-EOS coordinates: phat_e [p] < c (c - sigma)
    sc.lop_alt = Condition::make(h.p_e * jp - c * (c - sigma));
    sc.strong_p = Condition::make(h.p_e / c2 - 1.0 / jp);
    sc.weak_p = Condition::make(h.p_e / c2 - 2.0 / jp);
    sc.monotone = Condition::make(h.p_e * jp - (sigma * sigma + c2));
    sc.fwdmon = Condition::make(h.p_e * jp - 2.0 * sigma * sigma);
    sc.gruneisen = up.tau * up.p_S / up.T;
    sc.mach = std::abs(sigma) / c;
    double M = sc.mach;
    if (sc.gruneisen > 0.0) {
        sc.majda = Condition::make((shock.minus.tau / up.tau - 1.0) * M * M -
                                   (1.0 + M) / sc.gruneisen);
    } else {
        // Majda's condition fails whenever the Gruneisen coefficient is <= 0
        sc.majda = Condition::make(1.0 + M);
    }
    return sc;
}

LopatinskiEvaluation lopatinski_delta(const EquationOfState& model, const ShockTriple& shock) {
    if (!shock.lax || !(shock.sigma < 0.0))
        throw NonHyperbolic("lopatinski_delta: not a Lax 1-shock; refusing to sign-normalize");
    const ThermoState& up = shock.plus;
    if (!(up.T > 0.0)) throw DomainError("lopatinski_delta: T <= 0 at U_+");

    double jt = shock.jump_tau, jp = shock.jump_p;
    double c = up.c, sigma = shock.sigma;
    LopatinskiEvaluation ev;
    ev.delta = jt * (up.p_S * c * jp + up.T * c * c * (sigma - c));

    PhatPoint h = phat_at(up);
    ev.delta_pform = jt * ((sigma - c) * c * c + h.p_e * c * jp);

    // explicit 3x3 determinant from the outgoing eigenvector columns in
    // (tau, v, e) coordinates, with A^0 applied and [U] = [tau](1,-sigma,-p_+)
    double v = shock.v_plus, p = up.p;
    Mat m = Mat::from_rows({{1.0, -h.p_e, 1.0},
                            {-sigma, 0.0, -c},
                            {-p, h.p_tau, -v * c - p}});
    ev.delta_matrix = jt * determinant(m).real();

    // small-amplitude reference sign for gas 1-shocks is +, so the signed
    // determinant is just the sign of delta
    ev.sign_delta = (ev.delta > 0.0) ? 1 : (ev.delta < 0.0 ? -1 : 0);
    ev.conditions = condition_ladder(model, shock);
    return ev;
}

double transition_residual(const ShockTriple& shock) {
    // (Lop) residual p_S [p] - T p_tau (sigma/c - 1); equals p_S ([p] - theta*phi)
    // with theta = 1 + |sigma|/c, phi = T c^2 / p_S, so its zero is the
    // stability transition along the curve.
    const ThermoState& up = shock.plus;
    return up.p_S * shock.jump_p - up.T * up.p_tau * (shock.sigma / up.c - 1.0);
}

std::optional<TransitionBracket> find_inviscid_transition(const EquationOfState& model,
                                                          const HugoniotCurve& curve) {
    if (curve.direction != HugoniotCurve::Direction::Backward)
        throw ConfigError("find_inviscid_transition: backward curve required");
    const auto& ss = curve.samples;
    int flip = -1;
    double r_prev = 0.0;
    for (size_t k = 0; k < ss.size(); ++k) {
        if (!ss[k].lax_ok) continue;
        double r = transition_residual(ss[k].shock);
        if (k > 0 && flip < 0 && (r > 0.0) != (r_prev > 0.0)) flip = int(k);
        r_prev = r;
        if (flip >= 0) break;
    }
    if (flip < 0) return std::nullopt;

    double s_hi = ss[flip - 1].S, s_lo = ss[flip].S;  // s_lo < s_hi
    const ThermoState& anchor = curve.anchor;
    auto residual_at = [&](double S) {
        HugoniotCurve probe = trace_backward(model, anchor.tau, anchor.S, {S});
        return std::pair<double, ShockTriple>(transition_residual(probe.samples[0].shock),
                                              probe.samples[0].shock);
    };
    double f_hi = residual_at(s_hi).first;
    while (s_hi - s_lo > 1e-7) {
        double mid = 0.5 * (s_lo + s_hi);
        double fm = residual_at(mid).first;
        if ((fm > 0.0) == (f_hi > 0.0)) { s_hi = mid; f_hi = fm; }
        else s_lo = mid;
    }
    auto [r_lo, sh_lo] = residual_at(s_lo);
    auto [r_hi, sh_hi] = residual_at(s_hi);
    TransitionBracket tb;
    tb.s_lo = s_lo;
    tb.s_hi = s_hi;
    tb.tau_lo = sh_hi.minus.tau;  // tau is decreasing in S along the backward curve
    tb.tau_hi = sh_lo.minus.tau;
    tb.residual_lo = r_lo;
    tb.residual_hi = r_hi;
    double d_lo = lopatinski_delta(model, sh_lo).delta;
    double d_hi = lopatinski_delta(model, sh_hi).delta;
    tb.delta_sign_consistent = (d_lo > 0.0) != (d_hi > 0.0);
    return tb;
}

double isentropic_delta(const std::function<double(double)>& p,
                        const std::function<double(double)>& dp, double tau_m, double tau_p) {
    double jt = tau_p - tau_m;
    double jp = p(tau_p) - p(tau_m);
    double s2 = -jp / jt;
    if (!(s2 > 0.0)) throw DegenerateShock("isentropic_delta: -[p]/[tau] <= 0");
    double sigma = -std::sqrt(s2);
    double c_p = std::sqrt(-dp(tau_p));
    return jt * (sigma - c_p);
}

double designer_delta(double gamma, double M) {
    if (!(gamma > 0.0)) throw DomainError("designer_delta: gamma must be positive");
    return -2.0 * gamma * std::cos(2.0 * M * kPi * gamma);
}

int designer_sign_delta(double gamma, double M) {
    // small-amplitude limit gives delta -> -2 gamma < 0, so stability is delta < 0
    double d = designer_delta(gamma, M);
    return d < 0.0 ? 1 : (d > 0.0 ? -1 : 0);
}

}  // namespace shocklab
