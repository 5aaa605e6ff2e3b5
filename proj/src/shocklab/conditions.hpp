#pragma once

#include <optional>

#include "eos.hpp"

namespace shocklab {

// One named condition: holds iff residual < 0.  `defined` is false where the
// residual's ingredients leave the condition's domain (e.g. e <= 0).
struct Condition {
    double residual = std::numeric_limits<double>::quiet_NaN();
    bool holds = false;
    bool defined = false;
    static Condition make(double residual) {
        Condition c;
        c.residual = residual;
        c.defined = std::isfinite(residual);
        c.holds = c.defined && residual < 0.0;
        return c;
    }
    static Condition undefined() { return Condition{}; }
};

// Pointwise EOS conditions at a single (tau, S): Smith's structural (G1)-(G6),
// the pressure-law properties (J1)-(J4), and the Weak/Medium/Strong ladder.
struct PointConditions {
    double tau, S;
    Condition g[6];   // G1..G6
    Condition j[4];   // J1..J4
    Condition weak, medium_u, medium_s, strong;
};

PointConditions audit_point(const EquationOfState& model, double tau, double S);

// Grid audit over a (tau, S) rectangle plus (H1)-(H2) sentinel checks.
struct StructuralReport {
    std::vector<PointConditions> points;
    // all_hold[k]: condition k held at every sampled point; order:
    // G1..G6, J1..J4, Weak, Medium_U, Medium_S, Strong
    static constexpr int kNumConditions = 14;
    bool all_hold[kNumConditions];
    int fail_count[kNumConditions];
    bool h1_ok = false, h2_ok = false;  // asymptotic audits at sentinel entropies
    static const char* condition_name(int k);
};

StructuralReport check_structural(const EquationOfState& model, double tau_lo, double tau_hi,
                                  double s_lo, double s_hi, int n_tau, int n_s);

// Exactness residual T p_T - e_tau - p of a (tau, T) pair of gas laws,
// sampled on a grid (partials by centered differences).
using TauTFn = std::function<double(double tau, double T)>;
std::vector<double> exactness_check(const TauTFn& e_law, const TauTFn& p_law, double tau_lo,
                                    double tau_hi, double T_lo, double T_hi, int n_tau, int n_T);

// (tau, e)-form test: residual T phat_e - p That_e + That_tau.
using TauEFn = std::function<double(double tau, double e)>;
std::vector<double> exactness_check_taue(const TauEFn& p_law, const TauEFn& T_law, double tau_lo,
                                         double tau_hi, double e_lo, double e_hi, int n_tau,
                                         int n_e);

}  // namespace shocklab
