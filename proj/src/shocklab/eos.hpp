#pragma once

#include <functional>
#include <memory>

#include "common.hpp"

namespace shocklab {

// Partial derivatives of the internal energy e = ebar(tau, S), through third
// order in tau and second in S.
struct EosDerivs {
    double e;
    double e_t, e_s;        // first order (t = tau)
    double e_tt, e_ts, e_ss;
    double e_ttt;
};

enum class EosKind { Global, Local, Stable, Polytropic, Custom };

// Immutable equation-of-state model.  The four built-in models carry
// hand-differentiated closed-form bundles; Custom models supply only ebar and
// get Richardson-extrapolated finite differences (the global model's
// stiffness punishes naive differencing, so built-ins stay analytic).
class EquationOfState {
  public:
    static EquationOfState global(double C);
    static EquationOfState local();
    static EquationOfState stable();
    static EquationOfState polytropic(double Gamma, double cv);
    static EquationOfState custom(std::string name, std::function<double(double, double)> ebar);

    EosKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double C() const { return C_; }

    EosDerivs derivs(double tau, double S) const;
    double energy(double tau, double S) const;

  private:
    EquationOfState() = default;
    EosKind kind_ = EosKind::Custom;
    std::string name_;
    double C_ = 0.0, Gamma_ = 0.0, cv_ = 0.0;
    std::function<double(double, double)> ebar_;
};

// One thermodynamic point with its derivative bundle.
// p = -e_tau, T = e_S, c = sqrt(e_tautau) (Lagrangian sound speed).
struct ThermoState {
    double tau, S;
    double e, p, T, c;
    double p_tau, p_S, p_tautau, e_SS;
    EosDerivs raw;
};

// Throws DomainError (tau <= 0) or NonHyperbolic (e_tautau <= 0).
ThermoState thermo_eval(const EquationOfState& model, double tau, double S);

// Pressure law p = phat(tau, e) obtained by inverting e = ebar(tau, S) in S.
struct PressureLawView {
    double tau, e, S;  // S solves ebar(tau, S) = e
    double p;          // phat(tau, e)
    double p_tau;      // phat_tau = -e_tt + e_ts * e_t / e_s
    double p_e;        // phat_e = -e_ts / e_s
    double c2;         // -p_tau + p * p_e
};

PressureLawView pressure_law(const EquationOfState& model, double tau, double e);

// (tau, T) view used by the Navier-Stokes blocks: p = pcheck(tau, T),
// e = echeck(tau, T), evaluated analytically at a (tau, S) point.
struct TauTView {
    double T;
    double p, e;
    double p_tau, p_T;
    double e_tau, e_T;
};
TauTView tau_T_view(const EquationOfState& model, double tau, double S);

}  // namespace shocklab
