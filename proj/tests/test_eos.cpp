#include <doctest.h>

#include <shocklab/conditions.hpp>
#include <shocklab/eos.hpp>

#include "oracles.hpp"

using namespace shocklab;

TEST_CASE("thermo_eval: local model at (1,0)") {
    ThermoState st = thermo_eval(EquationOfState::local(), 1.0, 0.0);
    CHECK(st.p == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(st.e == doctest::Approx(1.5));
    CHECK(st.T == doctest::Approx(2.0));
    CHECK(st.raw.e_tt == doctest::Approx(3.0));
    CHECK(st.raw.e_ts == doctest::Approx(-1.0));
}

TEST_CASE("thermo_eval: global and stable closed forms") {
    for (double C : {2.0, 10.0, 100.0}) {
        ThermoState st = thermo_eval(EquationOfState::global(C), 1.0, 0.0);
        CHECK(st.e == doctest::Approx(1.0 + C * C * std::exp(-1.0 / C)).epsilon(1e-14));
    }
    ThermoState st = thermo_eval(EquationOfState::stable(), 1.0, 0.0);
    CHECK(st.p == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(st.c * st.c == doctest::Approx(3.0));
}

TEST_CASE("thermo_eval: errors") {
    CHECK_THROWS_AS(thermo_eval(EquationOfState::local(), -1.0, 0.0), DomainError);
    auto concave = EquationOfState::custom("concave", [](double tau, double S) {
        return -0.5 * tau * tau + S;
    });
    CHECK_THROWS_AS(thermo_eval(concave, 1.0, 0.0), NonHyperbolic);
}

TEST_CASE("finite-difference consistency of analytic bundles") {
    std::vector<EquationOfState> models = {EquationOfState::global(10.0),
                                           EquationOfState::local(), EquationOfState::stable(),
                                           EquationOfState::polytropic(5.0 / 3.0, 1.0)};
    Rng rng(7);
    for (const auto& m : models) {
        for (int trial = 0; trial < 12; ++trial) {
            double tau = rng.uniform(0.4, 8.0), S = rng.uniform(-4.0, 2.0);
            double ht = 1e-5 * std::max(1.0, tau), hs = 1e-5 * std::max(1.0, std::abs(S));
            EosDerivs d = m.derivs(tau, S);
            auto e_of_tau = [&](double t) { return m.derivs(t, S).e; };
            auto e_of_S = [&](double s) { return m.derivs(tau, s).e; };
            auto et_of_tau = [&](double t) { return m.derivs(t, S).e_t; };
            auto et_of_S = [&](double s) { return m.derivs(tau, s).e_t; };
            auto es_of_S = [&](double s) { return m.derivs(tau, s).e_s; };
            auto ett_of_tau = [&](double t) { return m.derivs(t, S).e_tt; };
            CHECK(oracles::fd1(e_of_tau, tau, ht) ==
                  doctest::Approx(d.e_t).epsilon(1e-6));
            CHECK(oracles::fd1(e_of_S, S, hs) == doctest::Approx(d.e_s).epsilon(1e-6));
            CHECK(oracles::fd1(et_of_tau, tau, ht) == doctest::Approx(d.e_tt).epsilon(1e-6));
            CHECK(oracles::fd1(et_of_S, S, hs) == doctest::Approx(d.e_ts).epsilon(1e-6));
            CHECK(oracles::fd1(es_of_S, S, hs) == doctest::Approx(d.e_ss).epsilon(1e-6));
            CHECK(oracles::fd1(ett_of_tau, tau, ht) == doctest::Approx(d.e_ttt).epsilon(1e-6));
        }
    }
}

TEST_CASE("custom model FD bundle matches the local analytic one") {
    auto fd = EquationOfState::custom("local-fd", [](double tau, double S) {
        return std::exp(S) / tau + S + 0.5 * tau * tau;
    });
    auto exact = EquationOfState::local();
    for (double tau : {0.7, 1.0, 3.0}) {
        for (double S : {-2.0, 0.0, 1.0}) {
            EosDerivs a = fd.derivs(tau, S), b = exact.derivs(tau, S);
            CHECK(a.e == doctest::Approx(b.e).epsilon(1e-12));
            CHECK(a.e_t == doctest::Approx(b.e_t).epsilon(1e-8));
            CHECK(a.e_s == doctest::Approx(b.e_s).epsilon(1e-8));
            CHECK(a.e_tt == doctest::Approx(b.e_tt).epsilon(1e-6));
            CHECK(a.e_ts == doctest::Approx(b.e_ts).epsilon(1e-6));
            CHECK(a.e_ss == doctest::Approx(b.e_ss).epsilon(1e-6));
            CHECK(a.e_ttt == doctest::Approx(b.e_ttt).epsilon(2e-5));
        }
    }
}

TEST_CASE("pressure_law: polytropic gives phat = Gamma e / tau") {
    auto m = EquationOfState::polytropic(2.0 / 3.0, 1.5);
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        double tau = rng.uniform(0.5, 4.0), e = rng.uniform(0.2, 5.0);
        PressureLawView v = pressure_law(m, tau, e);
        CHECK(v.p == doctest::Approx(2.0 / 3.0 * e / tau).epsilon(1e-10));
    }
}

TEST_CASE("pressure_law: local model p_e at (1, 3/2)") {
    PressureLawView v = pressure_law(EquationOfState::local(), 1.0, 1.5);
    CHECK(v.S == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(v.p_e == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("pressure_law: global model p_tau against a finite-difference oracle") {
    auto m = EquationOfState::global(10.0);
    double tau = 1.0;
    double e = m.energy(1.0, 0.0);
    PressureLawView v = pressure_law(m, tau, e);
    auto phat = [&](double t) { return pressure_law(m, t, e).p; };
    double fd = oracles::fd1(phat, tau, 1e-6 * tau);
    CHECK(v.p_tau == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("pressure_law: inversion failure below the energy range") {
    // stable model has e >= tau^2/2 > 0; e below that is unreachable
    CHECK_THROWS_AS(pressure_law(EquationOfState::stable(), 2.0, 0.5), InversionFailure);
}

TEST_CASE("two derivative routes agree: c^2 = -phat_tau + p phat_e") {
    std::vector<EquationOfState> models = {EquationOfState::global(10.0),
                                           EquationOfState::local(), EquationOfState::stable(),
                                           EquationOfState::polytropic(1.4, 0.7)};
    Rng rng(13);
    for (const auto& m : models) {
        for (int trial = 0; trial < 25; ++trial) {
            double tau = rng.uniform(0.5, 6.0), S = rng.uniform(-3.0, 1.5);
            ThermoState st = thermo_eval(m, tau, S);
            PressureLawView v = pressure_law(m, tau, st.e);
            CHECK(std::abs(v.c2 - st.c * st.c) <= 1e-10 * st.c * st.c);
        }
    }
}

TEST_CASE("tau-T view identities") {
    auto m = EquationOfState::global(10.0);
    double tau = 2.0, S = -1.0;
    TauTView v = tau_T_view(m, tau, S);
    // centered differences of the inverted laws
    auto p_of_T = [&](double T) {
        // solve e_S(tau, s) = T for s by bisection
        auto f = [&](double s) { return m.derivs(tau, s).e_s - T; };
        double lo = S - 2.0, hi = S + 2.0;
        while (hi - lo > 1e-13) {
            double mid = 0.5 * (lo + hi);
            if ((f(mid) > 0) == (f(lo) > 0)) lo = mid;
            else hi = mid;
        }
        return -m.derivs(tau, 0.5 * (lo + hi)).e_t;
    };
    double fd = oracles::fd1(p_of_T, v.T, 1e-6 * v.T);
    CHECK(v.p_T == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("check_structural: global model passes (G1)-(G6) and the H audits") {
    StructuralReport rep =
        check_structural(EquationOfState::global(10.0), 0.5, 20.0, -30.0, 2.0, 24, 24);
    for (int k = 0; k < 6; ++k) {
        INFO("condition ", StructuralReport::condition_name(k));
        CHECK(rep.all_hold[k]);
    }
    CHECK(rep.h1_ok);
    CHECK(rep.h2_ok);
}

TEST_CASE("check_structural: local model fails (G2) somewhere, keeps (G3)-(G6)") {
    StructuralReport rep =
        check_structural(EquationOfState::local(), 0.5, 12.0, -8.0, 1.0, 24, 24);
    CHECK_FALSE(rep.all_hold[1]);  // G2
    for (int k = 2; k < 6; ++k) {
        INFO("condition ", StructuralReport::condition_name(k));
        CHECK(rep.all_hold[k]);
    }
    CHECK_FALSE(rep.h1_ok);
}

TEST_CASE("check_structural: polytropic Gamma = 2/3 satisfies (Strong) everywhere") {
    StructuralReport rep = check_structural(EquationOfState::polytropic(2.0 / 3.0, 1.0), 0.3,
                                            10.0, -5.0, 5.0, 20, 20);
    CHECK(rep.all_hold[13]);  // Strong
}

TEST_CASE("pointwise ladder: Strong => Medium_U => Medium_S => Weak where (J1)-(J4) hold") {
    std::vector<EquationOfState> models = {EquationOfState::global(10.0),
                                           EquationOfState::local(), EquationOfState::stable(),
                                           EquationOfState::polytropic(1.4, 1.0)};
    Rng rng(19);
    int tested = 0;
    for (const auto& m : models) {
        for (int trial = 0; trial < 400; ++trial) {
            double tau = rng.uniform(0.3, 15.0), S = rng.uniform(-12.0, 2.0);
            PointConditions pc = audit_point(m, tau, S);
            bool j_ok = pc.j[0].holds && pc.j[1].holds && pc.j[2].holds && pc.j[3].holds;
            if (!j_ok || !pc.medium_u.defined) continue;
            ++tested;
            if (pc.strong.holds) CHECK(pc.medium_u.holds);
            if (pc.medium_u.holds) CHECK(pc.medium_s.holds);
            if (pc.medium_s.holds) CHECK(pc.weak.holds);
        }
    }
    CHECK(tested > 200);
}

TEST_CASE("exactness: ideal gas and van der Waals pass, broken pair fails") {
    double R = 1.7, a = 0.3, b = 0.05;
    auto ideal_e = [R](double, double T) { return 1.5 * R * T; };
    auto ideal_p = [R](double tau, double T) { return R * T / tau; };
    for (double r : exactness_check(ideal_e, ideal_p, 0.5, 4.0, 0.5, 4.0, 8, 8))
        CHECK(std::abs(r) < 1e-8);

    auto vdw_e = [R, a](double tau, double T) { return 1.5 * R * T - a / tau; };
    auto vdw_p = [R, a, b](double tau, double T) { return R * T / (tau - b) - a / (tau * tau); };
    for (double r : exactness_check(vdw_e, vdw_p, 0.5, 4.0, 0.5, 4.0, 8, 8))
        CHECK(std::abs(r) < 1e-7);

    auto broken_e = [R](double tau, double T) { return 1.5 * R * T + tau; };
    for (double r : exactness_check(broken_e, ideal_p, 0.5, 4.0, 0.5, 4.0, 8, 8))
        CHECK(r == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("exactness in (tau, e) form") {
    // polytropic: phat = G e / tau, That = e / cv; T phat_e = p That_e - That_tau
    double G = 0.9, cv = 1.3;
    auto p_law = [G](double tau, double e) { return G * e / tau; };
    auto T_law = [cv](double, double e) { return e / cv; };
    for (double r : exactness_check_taue(p_law, T_law, 0.5, 4.0, 0.5, 4.0, 8, 8))
        CHECK(std::abs(r) < 1e-8);
}
