#pragma once

#include <functional>
#include <optional>

#include "conditions.hpp"
#include "hugoniot.hpp"

namespace shocklab {

// Shock-level stability conditions evaluated at U_+ (with jumps).
// Each holds iff residual < 0.
struct ShockConditions {
    Condition lop;        // p_S [p] < T p_tau (sigma/c - 1)
    Condition lop_alt;    // partial-EOS coordinates: phat_e [p] < c (c - sigma)
    Condition strong_p;   // Strong': phat_e / c^2 < 1/[p]
    Condition weak_p;     // Weak':   phat_e / c^2 < 2/[p]
    Condition monotone;   // phat_e [p] < sigma^2 + c^2
    Condition fwdmon;     // Erpenbeck: phat_e [p] < 2 sigma^2
    Condition majda;      // (1+M)/Gruneisen > (tau_-/tau_+ - 1) M^2
    double gruneisen;     // tau p_S / T at U_+
    double mach;          // Eulerian Mach number |sigma|/c at U_+
};

struct LopatinskiEvaluation {
    double delta;         // closed form (entropy coordinates), evaluated at U_+
    double delta_matrix;  // explicit 3x3 determinant, partial-EOS coordinates
    double delta_pform;   // closed form, partial-EOS coordinates
    int sign_delta;       // signed determinant: +1 stable side, -1 unstable
    ShockConditions conditions;
};

// Both closed-form Lopatinski determinants and the explicit 3x3 determinant.
// Entropy form: delta = [tau] (p_S c [p] + T c^2 (sigma - c)).
// Partial-EOS form: delta/T, computed from phat_e.  The small-amplitude
// reference sign for gas 1-shocks is +, so sign_delta = sgn(delta).
LopatinskiEvaluation lopatinski_delta(const EquationOfState& model, const ShockTriple& shock);

ShockConditions condition_ladder(const EquationOfState& model, const ShockTriple& shock);

struct TransitionBracket {
    double s_lo, s_hi;      // entropy bracket around the delta = 0 crossing
    double tau_lo, tau_hi;  // corresponding tau values (tau at s_hi, s_lo resp.)
    double residual_lo, residual_hi;
    bool delta_sign_consistent;  // closed-form delta flips in the same bracket
};

// Locate the sign change of the stability residual [p] - theta*phi (the
// global Medium_S-type residual whose flip is the delta = 0 crossing) along a
// backward curve, bisected in S_- to width 1e-7.
std::optional<TransitionBracket> find_inviscid_transition(const EquationOfState& model,
                                                          const HugoniotCurve& curve);

// Per-shock value of the transition residual.
double transition_residual(const ShockTriple& shock);

// Isentropic sub-case delta = [tau](sigma - c_+) for a barotropic p(tau).
double isentropic_delta(const std::function<double(double)>& p,
                        const std::function<double(double)>& dp, double tau_m, double tau_p);

// Designer-system inviscid determinant delta = -2 gamma cos(2 M pi gamma);
// the signed version is + where delta < 0 (small-amplitude reference sign).
double designer_delta(double gamma, double M);
int designer_sign_delta(double gamma, double M);

}  // namespace shocklab
