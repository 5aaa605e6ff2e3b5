#include "eos.hpp"

#include <cmath>

#include "rootfind.hpp"

namespace shocklab {

namespace {

// Richardson-extrapolated centered differences for Custom models.
double richardson_d(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

}  // namespace

EquationOfState EquationOfState::global(double C) {
    if (!(C > 0.0)) throw DomainError("global model requires C > 0");
    EquationOfState m;
    m.kind_ = EosKind::Global;
    m.name_ = "global";
    m.C_ = C;
    return m;
}

EquationOfState EquationOfState::local() {
    EquationOfState m;
    m.kind_ = EosKind::Local;
    m.name_ = "local";
    return m;
}

EquationOfState EquationOfState::stable() {
    EquationOfState m;
    m.kind_ = EosKind::Stable;
    m.name_ = "stable";
    return m;
}

EquationOfState EquationOfState::polytropic(double Gamma, double cv) {
    if (!(Gamma > 0.0) || !(cv > 0.0)) throw DomainError("polytropic model requires Gamma, cv > 0");
    EquationOfState m;
    m.kind_ = EosKind::Polytropic;
    m.name_ = "polytropic";
    m.Gamma_ = Gamma;
    m.cv_ = cv;
    return m;
}

EquationOfState EquationOfState::custom(std::string name,
                                        std::function<double(double, double)> ebar) {
    EquationOfState m;
    m.kind_ = EosKind::Custom;
    m.name_ = std::move(name);
    m.ebar_ = std::move(ebar);
    return m;
}

double EquationOfState::energy(double tau, double S) const { return derivs(tau, S).e; }

EosDerivs EquationOfState::derivs(double tau, double S) const {
    if (!(tau > 0.0)) throw DomainError("EquationOfState: tau must be positive");
    EosDerivs d{};
    switch (kind_) {
        case EosKind::Global: {
            // e = exp(S)/tau + C^2 * exp(S/C^2 - tau/C)
            double A = std::exp(S);
            double E = std::exp(S / (C_ * C_) - tau / C_);
            d.e = A / tau + C_ * C_ * E;
            d.e_t = -A / (tau * tau) - C_ * E;
            d.e_s = A / tau + E;
            d.e_tt = 2.0 * A / (tau * tau * tau) + E;
            d.e_ts = -A / (tau * tau) - E / C_;
            d.e_ss = A / tau + E / (C_ * C_);
            d.e_ttt = -6.0 * A / (tau * tau * tau * tau) - E / C_;
            break;
        }
        case EosKind::Local: {
            // e = exp(S)/tau + S + tau^2/2
            double A = std::exp(S);
            d.e = A / tau + S + 0.5 * tau * tau;
            d.e_t = -A / (tau * tau) + tau;
            d.e_s = A / tau + 1.0;
            d.e_tt = 2.0 * A / (tau * tau * tau) + 1.0;
            d.e_ts = -A / (tau * tau);
            d.e_ss = A / tau;
            d.e_ttt = -6.0 * A / (tau * tau * tau * tau);
            break;
        }
        case EosKind::Stable: {
            // e = exp(S)/tau + tau^2/2
            double A = std::exp(S);
            d.e = A / tau + 0.5 * tau * tau;
            d.e_t = -A / (tau * tau) + tau;
            d.e_s = A / tau;
            d.e_tt = 2.0 * A / (tau * tau * tau) + 1.0;
            d.e_ts = -A / (tau * tau);
            d.e_ss = A / tau;
            d.e_ttt = -6.0 * A / (tau * tau * tau * tau);
            break;
        }
        case EosKind::Polytropic: {
            // e = exp(S/cv) / tau^Gamma
            double e = std::exp(S / cv_) * std::pow(tau, -Gamma_);
            double G = Gamma_;
            d.e = e;
            d.e_t = -G * e / tau;
            d.e_s = e / cv_;
            d.e_tt = G * (G + 1.0) * e / (tau * tau);
            d.e_ts = -G * e / (cv_ * tau);
            d.e_ss = e / (cv_ * cv_);
            d.e_ttt = -G * (G + 1.0) * (G + 2.0) * e / (tau * tau * tau);
            break;
        }
        case EosKind::Custom: {
            const auto& f = ebar_;
            // stencil widths: wider for higher orders to keep roundoff noise
            // below the Richardson truncation error
            double ht = 1e-4 * std::max(1.0, std::abs(tau));
            double hs = 1e-4 * std::max(1.0, std::abs(S));
            double ht2 = 1e-3 * std::max(1.0, std::abs(tau));
            double hs2 = 1e-3 * std::max(1.0, std::abs(S));
            double ht3 = 2e-3 * std::max(1.0, std::abs(tau));
            d.e = f(tau, S);
            d.e_t = richardson_d([&](double t) { return f(t, S); }, tau, ht);
            d.e_s = richardson_d([&](double s) { return f(tau, s); }, S, hs);
            d.e_tt = richardson_d(
                [&](double t) {
                    return richardson_d([&](double t2) { return f(t2, S); }, t, ht2);
                },
                tau, ht2);
            d.e_ss = richardson_d(
                [&](double s) {
                    return richardson_d([&](double s2) { return f(tau, s2); }, s, hs2);
                },
                S, hs2);
            d.e_ts = richardson_d(
                [&](double t) {
                    return richardson_d([&](double s) { return f(t, s); }, S, hs2);
                },
                tau, ht2);
            d.e_ttt = richardson_d(
                [&](double t) {
                    return richardson_d(
                        [&](double t2) {
                            return richardson_d([&](double t3) { return f(t3, S); }, t2, ht3);
                        },
                        t, ht3);
                },
                tau, ht3);
            break;
        }
    }
    return d;
}

ThermoState thermo_eval(const EquationOfState& model, double tau, double S) {
    if (!(tau > 0.0)) throw DomainError("thermo_eval: tau must be positive");
    EosDerivs d = model.derivs(tau, S);
    if (!(d.e_tt > 0.0))
        throw NonHyperbolic("thermo_eval: e_tautau <= 0 at (tau, S) = (" + std::to_string(tau) +
                            ", " + std::to_string(S) + ")");
    ThermoState st;
    st.tau = tau;
    st.S = S;
    st.e = d.e;
    st.p = -d.e_t;
    st.T = d.e_s;
    st.c = std::sqrt(d.e_tt);
    st.p_tau = -d.e_tt;
    st.p_S = -d.e_ts;
    st.p_tautau = -d.e_ttt;
    st.e_SS = d.e_ss;
    st.raw = d;
    return st;
}

PressureLawView pressure_law(const EquationOfState& model, double tau, double e) {
    // invert e = ebar(tau, S) in S; e_S = T > 0 makes this monotone where (G3) holds
    auto f = [&](double S) { return model.energy(tau, S) - e; };
    double a = 0.0, b = 0.0;
    {
        double width = 1.0;
        bool bracketed = false;
        for (int i = 0; i < 60; ++i) {
            a = -width;
            b = width;
            double fa = f(a), fb = f(b);
            if (std::isfinite(fa) && std::isfinite(fb) && (fa <= 0.0) != (fb <= 0.0)) {
                bracketed = true;
                break;
            }
            width *= 2.0;
        }
        if (!bracketed)
            throw InversionFailure("pressure_law: no S with ebar(tau, S) = e in bracket (tau = " +
                                   std::to_string(tau) + ", e = " + std::to_string(e) + ")");
    }
    auto df = [&](double S) { return model.derivs(tau, S).e_s; };
    double S = newton_bisect(f, df, 0.5 * (a + b), a, b, 1e-12);
    EosDerivs d = model.derivs(tau, S);
    PressureLawView v;
    v.tau = tau;
    v.e = e;
    v.S = S;
    v.p = -d.e_t;
    v.p_e = -d.e_ts / d.e_s;
    v.p_tau = -d.e_tt + d.e_ts * d.e_t / d.e_s;
    v.c2 = -v.p_tau + v.p * v.p_e;
    return v;
}

TauTView tau_T_view(const EquationOfState& model, double tau, double S) {
    EosDerivs d = model.derivs(tau, S);
    if (!(d.e_ss > 0.0))
        throw SingularCoefficient("tau_T_view: e_SS <= 0 (parabolicity fails)");
    TauTView v;
    v.T = d.e_s;
    v.p = -d.e_t;
    v.e = d.e;
    // S = Scheck(tau, T): S_T = 1/e_SS, S_tau = -e_tS/e_SS
    v.p_T = -d.e_ts / d.e_ss;
    v.p_tau = -d.e_tt + d.e_ts * d.e_ts / d.e_ss;
    v.e_T = d.e_s / d.e_ss;
    v.e_tau = d.e_t - d.e_s * d.e_ts / d.e_ss;
    return v;
}

}  // namespace shocklab
