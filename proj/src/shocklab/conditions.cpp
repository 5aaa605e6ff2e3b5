#include "conditions.hpp"

#include <cmath>

namespace shocklab {

PointConditions audit_point(const EquationOfState& model, double tau, double S) {
    EosDerivs d = model.derivs(tau, S);
    PointConditions pc;
    pc.tau = tau;
    pc.S = S;
    double e = d.e, p = -d.e_t, T = d.e_s;
    double p_tau_s = -d.e_tt;      // (d/dtau at fixed S) of p
    double p_tautau_s = -d.e_ttt;
    double p_S = -d.e_ts;

    pc.g[0] = Condition::make(-e);            // G1: e > 0
    pc.g[1] = Condition::make(-p);            // G2: p > 0
    pc.g[2] = Condition::make(-T);            // G3: T > 0
    pc.g[3] = Condition::make(p_tau_s);       // G4: p_tau < 0
    pc.g[4] = Condition::make(-p_tautau_s);   // G5: p_tautau > 0
    pc.g[5] = Condition::make(-p_S);          // G6: p_S > 0

    // (J1)-(J4) in the phat(tau, e) form; the characteristic derivative
    // (d_tau - p d_e) phat equals p_tau at fixed S.
    pc.j[0] = Condition::make(-p);
    pc.j[1] = Condition::make(p_tau_s);
    pc.j[2] = Condition::make(-p_tautau_s);
    double phat_e = (T != 0.0) ? p_S / T : std::numeric_limits<double>::quiet_NaN();
    pc.j[3] = Condition::make(-phat_e);

    // Smith's ladder in the phat form; Medium forms need e > 0.
    double phat_tau = -d.e_tt + d.e_ts * d.e_t / d.e_s;
    double c2 = d.e_tt;
    pc.strong = Condition::make(phat_tau);
    pc.weak = Condition::make(phat_tau - 0.5 * p * phat_e);
    if (e > 0.0 && c2 > 0.0) {
        pc.medium_u = Condition::make(phat_tau - p * p / (2.0 * e));
        pc.medium_s = Condition::make(phat_tau - std::sqrt(c2) * p / std::sqrt(2.0 * e));
    } else {
        pc.medium_u = Condition::undefined();
        pc.medium_s = Condition::undefined();
    }
    return pc;
}

namespace {
const Condition& nth_condition(const PointConditions& pc, int k) {
    if (k < 6) return pc.g[k];
    if (k < 10) return pc.j[k - 6];
    switch (k) {
        case 10: return pc.weak;
        case 11: return pc.medium_u;
        case 12: return pc.medium_s;
        default: return pc.strong;
    }
}
}  // namespace

const char* StructuralReport::condition_name(int k) {
    static const char* names[kNumConditions] = {"G1", "G2", "G3", "G4",       "G5",       "G6",
                                                "J1", "J2", "J3", "J4",       "Weak",     "Medium_U",
                                                "Medium_S", "Strong"};
    return names[k];
}

StructuralReport check_structural(const EquationOfState& model, double tau_lo, double tau_hi,
                                  double s_lo, double s_hi, int n_tau, int n_s) {
    if (n_tau < 1 || n_s < 1) throw ConfigError("check_structural: grid must be nonempty");
    StructuralReport rep;
    for (int k = 0; k < StructuralReport::kNumConditions; ++k) {
        rep.all_hold[k] = true;
        rep.fail_count[k] = 0;
    }
    for (int i = 0; i < n_tau; ++i) {
        double tau = (n_tau == 1) ? tau_lo : tau_lo + (tau_hi - tau_lo) * i / double(n_tau - 1);
        for (int j = 0; j < n_s; ++j) {
            double S = (n_s == 1) ? s_lo : s_lo + (s_hi - s_lo) * j / double(n_s - 1);
            PointConditions pc = audit_point(model, tau, S);
            for (int k = 0; k < StructuralReport::kNumConditions; ++k) {
                const Condition& c = nth_condition(pc, k);
                if (!c.holds) {
                    rep.all_hold[k] = false;
                    ++rep.fail_count[k];
                }
            }
            rep.points.push_back(pc);
        }
    }
    // (H1)-(H2) audited at sentinel entropies: e and p small/decreasing at the
    // negative sentinel, large/increasing at the positive one.  Sentinels
    // scale with C^2 for the global model (limits are not computable; trends are).
    double scale = (model.kind() == EosKind::Global) ? model.C() * model.C() : 1.0;
    double s_neg = -40.0 * scale, s_pos = 40.0 * scale;
    double tau_mid = 0.5 * (tau_lo + tau_hi);
    auto pe = [&](double S) {
        EosDerivs d = model.derivs(tau_mid, S);
        return std::pair<double, double>(d.e, -d.e_t);
    };
    auto [e0, p0] = pe(0.0);
    auto [e_neg, p_neg] = pe(s_neg);
    auto [e_neg2, p_neg2] = pe(s_neg * 0.5);
    auto [e_pos, p_pos] = pe(s_pos);
    auto [e_pos2, p_pos2] = pe(s_pos * 0.5);
    auto vanishes = [](double far, double near, double ref) {
        return std::abs(far) <= std::abs(near) && std::abs(far) < 1e-6 * (1.0 + std::abs(ref));
    };
    auto diverges = [](double far, double near, double ref) {
        return far >= near && far > 1e6 * (1.0 + std::abs(ref));
    };
    rep.h1_ok = vanishes(e_neg, e_neg2, e0) && diverges(e_pos, e_pos2, e0);
    rep.h2_ok = vanishes(p_neg, p_neg2, p0) && diverges(p_pos, p_pos2, p0);
    return rep;
}

std::vector<double> exactness_check(const TauTFn& e_law, const TauTFn& p_law, double tau_lo,
                                    double tau_hi, double T_lo, double T_hi, int n_tau, int n_T) {
    if (n_tau < 1 || n_T < 1) throw ConfigError("exactness_check: grid must be nonempty");
    std::vector<double> res;
    res.reserve(size_t(n_tau) * n_T);
    for (int i = 0; i < n_tau; ++i) {
        double tau = (n_tau == 1) ? tau_lo : tau_lo + (tau_hi - tau_lo) * i / double(n_tau - 1);
        double ht = 1e-6 * std::max(1.0, std::abs(tau));
        for (int j = 0; j < n_T; ++j) {
            double T = (n_T == 1) ? T_lo : T_lo + (T_hi - T_lo) * j / double(n_T - 1);
            double hT = 1e-6 * std::max(1.0, std::abs(T));
            double p_T = (p_law(tau, T + hT) - p_law(tau, T - hT)) / (2.0 * hT);
            double e_tau = (e_law(tau + ht, T) - e_law(tau - ht, T)) / (2.0 * ht);
            res.push_back(T * p_T - e_tau - p_law(tau, T));
        }
    }
    return res;
}

std::vector<double> exactness_check_taue(const TauEFn& p_law, const TauEFn& T_law, double tau_lo,
                                         double tau_hi, double e_lo, double e_hi, int n_tau,
                                         int n_e) {
    if (n_tau < 1 || n_e < 1) throw ConfigError("exactness_check_taue: grid must be nonempty");
    std::vector<double> res;
    res.reserve(size_t(n_tau) * n_e);
    for (int i = 0; i < n_tau; ++i) {
        double tau = (n_tau == 1) ? tau_lo : tau_lo + (tau_hi - tau_lo) * i / double(n_tau - 1);
        double ht = 1e-6 * std::max(1.0, std::abs(tau));
        for (int j = 0; j < n_e; ++j) {
            double e = (n_e == 1) ? e_lo : e_lo + (e_hi - e_lo) * j / double(n_e - 1);
            double he = 1e-6 * std::max(1.0, std::abs(e));
            double p_e = (p_law(tau, e + he) - p_law(tau, e - he)) / (2.0 * he);
            double T_e = (T_law(tau, e + he) - T_law(tau, e - he)) / (2.0 * he);
            double T_tau = (T_law(tau + ht, e) - T_law(tau - ht, e)) / (2.0 * ht);
            res.push_back(T_law(tau, e) * p_e - p_law(tau, e) * T_e + T_tau);
        }
    }
    return res;
}

}  // namespace shocklab
