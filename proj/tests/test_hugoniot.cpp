#include <doctest.h>

#include <shocklab/hugoniot.hpp>
#include <shocklab/rootfind.hpp>

#include "oracles.hpp"

using namespace shocklab;

namespace {
std::vector<double> down_grid(double from, double step, double to) {
    std::vector<double> g;
    for (double s = from; s >= to - 1e-12; s -= step) g.push_back(s);
    return g;
}
}  // namespace

TEST_CASE("hugoniot_residual: zero amplitude and the local-model cubic") {
    auto local = EquationOfState::local();
    ThermoState ref = thermo_eval(local, 1.0, 0.0);
    CHECK(hugoniot_residual(local, ref, 1.0, 0.0) == doctest::Approx(0.0).epsilon(1e-14));

    // 2 tau^2 H(tau, S) equals the explicit cubic anchored at (1, 0)
    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        double tau = rng.uniform(1.0, 14.0), S = rng.uniform(-7.0, 0.0);
        double H = hugoniot_residual(local, ref, tau, S);
        double es = std::exp(S);
        double cubic = ((tau + (2.0 * S - 3.0)) * tau + 3.0 * es) * tau - es;
        CHECK(2.0 * tau * tau * H == doctest::Approx(cubic).epsilon(1e-11));
    }
}

TEST_CASE("hugoniot_residual: reported global-model point") {
    // the published 17-digit left state lies on the C = 100 backward curve
    auto global = EquationOfState::global(100.0);
    ThermoState ref = thermo_eval(global, 1.0, 0.0);
    double H = hugoniot_residual(global, ref, 12.089548257354499, -6.0);
    CHECK(std::abs(H) / std::max(1.0, std::abs(ref.e)) < 1e-8);
    HugoniotCurve curve = trace_backward(global, 1.0, 0.0, {-6.0});
    CHECK(std::abs(curve.samples[0].tau - 12.089548257354499) < 1e-9);
}

TEST_CASE("trace_backward: global model Smith-regime monotonicity") {
    auto global = EquationOfState::global(10.0);
    // the S -> -inf tail needs |S| >> C^2 before e, p become small
    HugoniotCurve curve = trace_backward(global, 1.0, 0.0, down_grid(-0.5, 0.5, -400.0));
    ThermoState anchor = curve.anchor;
    double tau_max = 2.0 * anchor.e / anchor.p + anchor.tau;
    REQUIRE(curve.samples.size() > 10);
    for (size_t k = 0; k < curve.samples.size(); ++k) {
        const CurveSample& cs = curve.samples[k];
        CHECK(cs.residual < 1e-10 * std::max(1.0, std::abs(anchor.e)));
        CHECK(cs.lax_ok);
        CHECK(cs.mono_tau);
        CHECK(cs.mono_p);
        CHECK(cs.mono_sigma2);
        // Smith regime: sgn [S] = -sgn [tau]
        CHECK(cs.shock.jump_tau < 0.0);
        CHECK(cs.shock.plus.S - cs.shock.minus.S > 0.0);
    }
    // S -> -inf end: tau approaches tau_max with e, p -> 0
    const CurveSample& far = curve.samples.back();
    CHECK(far.tau > 0.95 * tau_max);
    CHECK(far.tau < tau_max);
    CHECK(std::abs(far.shock.minus.p) < 0.05 * anchor.p);
    CHECK(std::abs(far.shock.minus.e) < 0.05 * anchor.e);
}

TEST_CASE("trace_backward: local model large-amplitude asymptotics") {
    auto local = EquationOfState::local();
    HugoniotCurve curve = trace_backward(local, 1.0, 0.0, down_grid(-5.0, 5.0, -40.0));
    const CurveSample& far = curve.samples.back();  // S = -40
    CHECK(far.tau / (-2.0 * far.S) == doctest::Approx(1.0).epsilon(0.06));
    CHECK(far.shock.minus.e / (2.0 * far.S * far.S) == doctest::Approx(1.0).epsilon(0.12));
}

TEST_CASE("local_cubic_solve") {
    CHECK(local_cubic_solve(0.0) == doctest::Approx(1.0).epsilon(1e-9));
    // transition bracket from the cubic
    double t = local_cubic_solve(-3.334829);
    CHECK(t == doctest::Approx(9.6589769).epsilon(1e-6));

    // cubic vs bisection on H for 200 random S in [-8, 0]
    auto local = EquationOfState::local();
    ThermoState ref = thermo_eval(local, 1.0, 0.0);
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        double S = rng.uniform(-8.0, 0.0);
        double tau_cubic = local_cubic_solve(S);
        auto H = [&](double tau) { return hugoniot_residual(local, ref, tau, S); };
        double tau_bisect = bisect(H, 1.0 + 1e-9, 40.0, 1e-13, 300);
        CHECK(std::abs(tau_cubic - tau_bisect) < 1e-9);
    }
}

TEST_CASE("stable model closed form reproduced by the tracer") {
    auto stable = EquationOfState::stable();
    HugoniotCurve curve = trace_backward(stable, 1.0, 0.0, down_grid(-0.5, 0.5, -11.5));
    for (const CurveSample& cs : curve.samples) {
        double S_closed = stable_hugoniot_entropy(1.0, 0.0, cs.tau);
        CHECK(std::abs(S_closed - cs.S) < 1e-8);
    }
    // backward curve approaches tau = 3 tau_+ as S -> -inf
    CHECK(curve.samples.back().tau < 3.0);
    CHECK(curve.samples.back().tau > 2.8);
}

TEST_CASE("trace_forward: global model from the paper's left state") {
    auto global = EquationOfState::global(100.0);
    std::vector<double> grid;
    for (double s = -5.9; s <= 0.4; s += 0.1) grid.push_back(s);
    HugoniotCurve curve = trace_forward(global, 12.089548257354499, -6.0, grid);
    // passes through the original right state (1, 0)
    double best = 1e9;
    for (const CurveSample& cs : curve.samples)
        if (std::abs(cs.S) < 0.051) best = std::min(best, std::abs(cs.tau - 1.0));
    CHECK(best < 5e-3);
    // sigma^2 increasing along the forward curve; tau not monotone (Fig. 1)
    int tau_flips = 0;
    for (size_t k = 1; k < curve.samples.size(); ++k) {
        CHECK(curve.samples[k].mono_sigma2);
        if (!curve.samples[k].mono_tau) ++tau_flips;
    }
    CHECK(tau_flips > 0);
}

TEST_CASE("trace curves: empty grid keeps just the anchor") {
    auto local = EquationOfState::local();
    HugoniotCurve c1 = trace_backward(local, 1.0, 0.0, {});
    CHECK(c1.samples.empty());
    CHECK(c1.anchor.tau == 1.0);
    HugoniotCurve c2 = trace_forward(local, 9.0, -3.0, {});
    CHECK(c2.samples.empty());
}

TEST_CASE("shock_from_states") {
    auto local = EquationOfState::local();
    CHECK_THROWS_AS(shock_from_states(local, 1.0, 0.0, 1.0, 0.0), DegenerateShock);

    // large amplitude: sigma^2 ~ 1 + 1/tau_-
    double S = -8.0;
    double tau = local_cubic_solve(S);
    ShockTriple sh = shock_from_states(local, tau, S, 1.0, 0.0);
    CHECK(sh.lax);
    CHECK(sh.sigma < 0.0);
    CHECK(sh.sigma * sh.sigma == doctest::Approx(1.0 + 1.0 / tau).epsilon(4.0 / (tau * tau)));
    // sigma^2 = -[p]/[tau] and [v] = -sigma [tau]
    CHECK(sh.sigma * sh.sigma ==
          doctest::Approx(-sh.jump_p / sh.jump_tau).epsilon(1e-12));
    CHECK(sh.jump_v == doctest::Approx(-sh.sigma * sh.jump_tau).epsilon(1e-12));
}

TEST_CASE("trace_backward: sigma^2 strictly decreasing between consecutive samples") {
    auto global = EquationOfState::global(10.0);
    HugoniotCurve curve = trace_backward(global, 1.5, 0.5, down_grid(-0.3, 0.4, -20.0));
    for (size_t k = 1; k < curve.samples.size(); ++k) {
        double a = sqr(curve.samples[k - 1].shock.sigma);
        double b = sqr(curve.samples[k].shock.sigma);
        CHECK(b < a);
    }
}
