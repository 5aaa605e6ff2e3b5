#include "profile.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace shocklab {

namespace {

struct FluxMismatch {
    double f1, f2, v;
};

FluxMismatch flux_mismatch(const EquationOfState& model, const ShockTriple& shock, double tau,
                           double S) {
    EosDerivs d = model.derivs(tau, S);
    double sigma = shock.sigma;
    double v = -sigma * (tau - shock.minus.tau);  // v_- = 0
    double p = -d.e_t;
    FluxMismatch f;
    f.v = v;
    f.f1 = -sigma * v + p - shock.minus.p;
    f.f2 = -sigma * (d.e + 0.5 * v * v - shock.minus.e) + p * v;
    return f;
}

}  // namespace

TwodeRhs twode_rhs(const EquationOfState& model, const ShockTriple& shock, double mu,
                   double kappa, double tau, double S) {
    if (!(mu > 0.0) || !(kappa > 0.0))
        throw SingularCoefficient("twode_rhs: mu, kappa must be positive");
    if (shock.sigma == 0.0) throw SingularCoefficient("twode_rhs: sigma = 0");
    EosDerivs d = model.derivs(tau, S);
    if (d.e_ss == 0.0) throw SingularCoefficient("twode_rhs: e_SS = 0");
    FluxMismatch f = flux_mismatch(model, shock, tau, S);
    double z1 = f.f1 / mu;
    double z2 = (f.f2 - f.v * f.f1) / kappa;
    TwodeRhs r;
    r.dtau = tau * (-z1 / shock.sigma);
    r.dS = tau * (d.e_ts * z1 / (shock.sigma * d.e_ss) + z2 / d.e_ss);
    return r;
}

EndstateLinearization endstate_linearization(const EquationOfState& model,
                                             const ShockTriple& shock, double mu, double kappa,
                                             int side) {
    const ThermoState& st = (side < 0) ? shock.minus : shock.plus;
    double sigma = shock.sigma;
    double v = (side < 0) ? 0.0 : shock.v_plus;
    double s2 = sigma * sigma;
    // dF at the equilibrium (F = 0 there): dv/dtau = -sigma along the slaving
    double dF[2][2] = {{s2 + st.p_tau, st.p_S},
                       {v * (s2 + st.p_tau), -sigma * st.T + st.p_S * v}};
    // N^-1 = [[1/mu, 0], [-v/kappa, 1/kappa]]
    double z[2][2];
    for (int j = 0; j < 2; ++j) {
        z[0][j] = dF[0][j] / mu;
        z[1][j] = (-v * dF[0][j] + dF[1][j]) / kappa;
    }
    // M^-1 = [[-1/sigma, 0], [e_ts/(sigma e_ss), 1/e_ss]]
    EndstateLinearization lin;
    double ets = st.raw.e_ts, ess = st.raw.e_ss;
    if (ess == 0.0) throw SingularCoefficient("endstate_linearization: e_SS = 0");
    for (int j = 0; j < 2; ++j) {
        lin.a[0][j] = st.tau * (-z[0][j] / sigma);
        lin.a[1][j] = st.tau * (ets * z[0][j] / (sigma * ess) + z[1][j] / ess);
    }
    double tr = lin.a[0][0] + lin.a[1][1];
    double det = lin.a[0][0] * lin.a[1][1] - lin.a[0][1] * lin.a[1][0];
    double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        double sq = std::sqrt(disc);
        lin.eig[0] = 0.5 * (tr - sq);
        lin.eig[1] = 0.5 * (tr + sq);
        lin.eigs_real = true;
    } else {
        double sq = std::sqrt(-disc);
        lin.eig[0] = Complex(0.5 * tr, -0.5 * sq);
        lin.eig[1] = Complex(0.5 * tr, 0.5 * sq);
        lin.eigs_real = false;
    }
    for (int j = 0; j < 2; ++j) {
        // eigenvector of a real 2x2 for a real eigenvalue
        double lam = lin.eig[j].real();
        double r1x = lin.a[0][0] - lam, r1y = lin.a[0][1];
        double r2x = lin.a[1][0], r2y = lin.a[1][1] - lam;
        double vx, vy;
        if (std::abs(r1x) + std::abs(r1y) >= std::abs(r2x) + std::abs(r2y)) { vx = -r1y; vy = r1x; }
        else { vx = -r2y; vy = r2x; }
        double n = std::hypot(vx, vy);
        if (n == 0.0) { vx = (j == 0); vy = (j == 1); n = 1.0; }
        lin.eigvec[0][j] = vx / n;
        lin.eigvec[1][j] = vy / n;
    }
    if (lin.eigs_real && lin.eig[0].real() < 0.0 && lin.eig[1].real() > 0.0)
        lin.type = FixedPointType::Saddle;
    else if (lin.eig[0].real() > 0.0 && lin.eig[1].real() > 0.0)
        lin.type = FixedPointType::Repellor;
    else if (lin.eig[0].real() < 0.0 && lin.eig[1].real() < 0.0)
        lin.type = FixedPointType::Attractor;
    else
        lin.type = FixedPointType::Other;
    double m = std::max(std::abs(lin.eig[0]), std::abs(lin.eig[1]));
    lin.spectral_gap = (m > 0.0) ? std::abs(lin.eig[0].real() - lin.eig[1].real()) / m : 0.0;
    return lin;
}

ViscousProfile::Point ViscousProfile::at(double xq) const {
    Point p;
    if (xq <= x.front()) {
        p = {shock.minus.tau, shock.minus.S, 0.0, 0.0};
        return p;
    }
    if (xq >= x.back()) {
        p = {shock.plus.tau, shock.plus.S, 0.0, 0.0};
        return p;
    }
    size_t lo = 0, hi = x.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (x[mid] <= xq) lo = mid;
        else hi = mid;
    }
    double h = x[hi] - x[lo];
    double t = (xq - x[lo]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    double d00 = (6 * t2 - 6 * t) / h, d10 = 3 * t2 - 4 * t + 1;
    double d01 = (6 * t - 6 * t2) / h, d11 = 3 * t2 - 2 * t;
    p.tau = h00 * tau[lo] + h * h10 * dtau[lo] + h01 * tau[hi] + h * h11 * dtau[hi];
    p.S = h00 * S[lo] + h * h10 * dS[lo] + h01 * S[hi] + h * h11 * dS[hi];
    p.dtau = d00 * tau[lo] + d10 * dtau[lo] + d01 * tau[hi] + d11 * dtau[hi];
    p.dS = d00 * S[lo] + d10 * dS[lo] + d01 * S[hi] + d11 * dS[hi];
    return p;
}

double ViscousProfile::midpoint_residual() const {
    double scale = 0.0;
    for (size_t k = 0; k < x.size(); ++k) scale = std::max(scale, std::hypot(dtau[k], dS[k]));
    if (scale == 0.0) scale = 1.0;
    double worst = 0.0;
    for (size_t k = 0; k + 1 < x.size(); ++k) {
        double xm = 0.5 * (x[k] + x[k + 1]);
        Point p = at(xm);
        TwodeRhs r = twode_rhs(model, shock, mu, kappa, p.tau, p.S);
        worst = std::max(worst, std::hypot(p.dtau - r.dtau, p.dS - r.dS) / scale);
    }
    return worst;
}

ViscousProfile shoot_profile(const EquationOfState& model, const ShockTriple& shock, double mu,
                             double kappa, int max_mesh) {
    EndstateLinearization lin = endstate_linearization(model, shock, mu, kappa, +1);
    if (lin.type != FixedPointType::Saddle)
        throw NoConnection("shoot_profile: U_+ is not a saddle");
    // stable direction; preferred sign points toward U_-, but the connection
    // can approach along either branch, so the other sign is retried on failure
    int s_idx = lin.eig[0].real() < 0.0 ? 0 : 1;
    double ex = lin.eigvec[0][s_idx], ey = lin.eigvec[1][s_idx];
    double to_minus_tau = shock.minus.tau - shock.plus.tau;
    double to_minus_S = shock.minus.S - shock.plus.S;
    double dot = ex * to_minus_tau + ey * to_minus_S;
    if (dot < 0.0) { ex = -ex; ey = -ey; }

    // bounding box: twice the rectangle spanned by the endstates, padded
    double tlo = std::min(shock.minus.tau, shock.plus.tau);
    double thi = std::max(shock.minus.tau, shock.plus.tau);
    double slo = std::min(shock.minus.S, shock.plus.S);
    double shi = std::max(shock.minus.S, shock.plus.S);
    double tpad = std::max(0.5 * (thi - tlo), 1.0), spad = std::max(0.5 * (shi - slo), 1.0);
    double tau_floor = 0.2 * std::min(shock.minus.tau, shock.plus.tau);
    tlo -= tpad; thi += tpad; slo -= spad; shi += spad;
    tlo = std::max(tlo, tau_floor);

    OdeRhs rhs = [&](double, const double* y, double* dy) {
        TwodeRhs r = twode_rhs(model, shock, mu, kappa, y[0], y[1]);
        dy[0] = r.dtau;
        dy[1] = r.dS;
    };
    std::vector<EventFn> events;
    events.push_back([&](double, const double* y) {
        return std::hypot(y[0] - shock.minus.tau, y[1] - shock.minus.S) - kProfileProximity;
    });
    events.push_back([&](double, const double* y) {
        double m = std::min({y[0] - tlo, thi - y[0], y[1] - slo, shi - y[1]});
        return m;  // negative outside the box
    });

    IntegratorSpec spec;
    spec.method = OdeMethod::Stiff;
    // custom models carry finite-difference derivative noise, so chasing
    // tighter tolerances there just makes the controller thrash
    spec.rtol = (model.kind() == EosKind::Custom) ? 1e-8 : 1e-10;
    spec.atol = spec.rtol * 1e-2;
    spec.max_steps = 400000;
    double rate = std::max(std::abs(lin.eig[0]), std::abs(lin.eig[1]));
    spec.initial_step = std::min(0.01 / std::max(rate, 1e-6), 1.0);
    spec.max_step = 0.5;  // bounds mesh gaps so Hermite queries stay accurate

    // backward in x; far more span than any profile needs, events terminate
    auto attempt = [&](double sx, double sy) -> std::optional<Trajectory> {
        std::vector<double> y0 = {shock.plus.tau + kProfileOffset * sx,
                                  shock.plus.S + kProfileOffset * sy};
        try {
            Trajectory trj = integrate(spec, 2, rhs, nullptr, 0.0, -1e7, y0, events);
            if (trj.event_hit && trj.event_index == 0) return trj;
        } catch (const Error&) {
            // fall through to the other branch
        }
        return std::nullopt;
    };
    std::optional<Trajectory> shot = attempt(ex, ey);
    if (!shot) shot = attempt(-ex, -ey);
    if (!shot)
        throw NoConnection("shoot_profile: neither stable-manifold branch connects to U_-");
    Trajectory& trj = *shot;

    // mesh in increasing x (integration produced decreasing x)
    ViscousProfile prof(model, shock, mu, kappa);
    size_t n = trj.nodes.size();
    std::vector<size_t> keep;
    {
        // selection measure: normalized (tau, S) arc length plus normalized
        // x-extent, so the exponential tails keep mesh nodes too
        std::vector<double> arc(n, 0.0);
        double tspan = std::max(thi - tlo, 1e-12), sspan = std::max(shi - slo, 1e-12);
        double xspan = std::max(std::abs(trj.nodes.back().x - trj.nodes.front().x), 1e-12);
        for (size_t k = 1; k < n; ++k) {
            double dt = (trj.nodes[k].y[0] - trj.nodes[k - 1].y[0]) / tspan;
            double ds = (trj.nodes[k].y[1] - trj.nodes[k - 1].y[1]) / sspan;
            double dx = (trj.nodes[k].x - trj.nodes[k - 1].x) / xspan;
            arc[k] = arc[k - 1] + std::hypot(dt, ds) + std::abs(dx);
        }
        keep.push_back(0);
        if (int(n) <= max_mesh) {
            for (size_t k = 1; k < n; ++k) keep.push_back(k);
        } else {
            double total = arc.back();
            size_t k = 1;
            for (int m = 1; m + 1 < max_mesh; ++m) {
                double target = total * m / double(max_mesh - 1);
                while (k + 1 < n && arc[k] < target) ++k;
                if (keep.back() != k) keep.push_back(k);
            }
            if (keep.back() != n - 1) keep.push_back(n - 1);
        }
    }
    for (size_t idx = keep.size(); idx-- > 0;) {
        const OdeNode& node = trj.nodes[keep[idx]];
        prof.x.push_back(node.x);
        prof.tau.push_back(node.y[0]);
        prof.S.push_back(node.y[1]);
        prof.dtau.push_back(node.f[0]);
        prof.dS.push_back(node.f[1]);
    }
    // recenter the steepest point at x = 0
    size_t steep = 0;
    double best = -1.0;
    for (size_t k = 0; k < prof.x.size(); ++k) {
        double m = std::hypot(prof.dtau[k], prof.dS[k]);
        if (m > best) { best = m; steep = k; }
    }
    double shift = prof.x[steep];
    for (double& xx : prof.x) xx -= shift;
    prof.L_minus = -prof.x.front();
    prof.L_plus = prof.x.back();
    prof.end_dist_minus =
        std::hypot(prof.tau.front() - shock.minus.tau, prof.S.front() - shock.minus.S);
    prof.end_dist_plus =
        std::hypot(prof.tau.back() - shock.plus.tau, prof.S.back() - shock.plus.S);
    return prof;
}

}  // namespace shocklab
