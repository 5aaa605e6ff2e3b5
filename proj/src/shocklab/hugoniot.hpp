#pragma once

#include <optional>

#include "eos.hpp"

namespace shocklab {

// Lax 1-shock data.  Jump convention is [q] = q_plus - q_minus throughout,
// with the normalization v_minus = 0, so sigma < 0, [tau] < 0, [p] > 0 and
// v_plus = -sigma*[tau] < 0 on the physical branch.
struct ShockTriple {
    ThermoState minus, plus;
    double sigma;
    double jump_tau, jump_p, jump_v, jump_e;
    double v_minus = 0.0, v_plus;
    bool lax_left, lax_right, lax;  // c_-^2 < sigma^2, sigma^2 < c_+^2, both + sigma<0
};

ShockTriple shock_from_states(const EquationOfState& model, double tau_m, double S_m,
                              double tau_p, double S_p);

// Hugoniot residual H = [e] + (1/2)(p + p_ref)[tau], jumps relative to ref.
double hugoniot_residual(const EquationOfState& model, const ThermoState& ref, double tau,
                         double S);

struct CurveSample {
    double S, tau;
    ShockTriple shock;    // (minus, plus) ordered as a 1-shock
    double residual;      // |H| at the accepted root
    bool lax_ok;
    bool mono_tau, mono_p, mono_v, mono_sigma2;  // vs previous sample
};

struct HugoniotCurve {
    enum class Direction { Backward, Forward };
    Direction direction;
    ThermoState anchor;
    std::vector<CurveSample> samples;
};

// Backward 1-Hugoniot: left states U_- = (tau, S) connected to the fixed
// right state U_+, sampled on a strictly decreasing entropy grid.  Bisection
// on the bracket (tau_+, tau_max), tau_max = 2 e_+/p_+ + tau_+ when p_+ > 0,
// else grown by doubling.
HugoniotCurve trace_backward(const EquationOfState& model, double tau_p, double S_p,
                             const std::vector<double>& s_grid);

// Forward 1-Hugoniot: right states U_+ reachable from the fixed left state,
// sampled on an increasing entropy grid.  tau-vs-S monotonicity is recorded
// but may legitimately fail.
HugoniotCurve trace_forward(const EquationOfState& model, double tau_m, double S_m,
                            const std::vector<double>& s_grid);

// Explicit backward-branch solution of the local model's Hugoniot cubic
// tau^3 + (2S-3) tau^2 + 3 e^S tau - e^S = 0 anchored at (1, 0); valid S <= 0.
double local_cubic_solve(double S);

// Closed-form entropy along the stable model's Hugoniot through (tau_p, S_p):
// S - S_p = log( (3 tau_p - tau)/(3 tau - tau_p) * tau^2/tau_p^2 ), 1/3 < tau/tau_p < 3.
double stable_hugoniot_entropy(double tau_p, double S_p, double tau);

constexpr double kHugoniotBisectTol = 1e-12;  // in tau, scaled by max(1, tau_max)
constexpr int kHugoniotMaxIter = 200;

}  // namespace shocklab
