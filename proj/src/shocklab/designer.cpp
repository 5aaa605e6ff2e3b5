#include "designer.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace shocklab {

double spectral_bound(double amax) { return 4.0 * amax * amax; }

namespace {

// integrate u' = (A(vbar(x)) + shift I) u between x0 and x1 (2-D real)
std::vector<double> evolve_u(const DesignerEvansSystem& sys, std::vector<double> u, double shift,
                             double x0, double x1) {
    OdeRhs rhs = [&](double x, const double* y, double* dy) {
        Mat a = DesignerEvansSystem::rotation_block(sys.M() * kPi * sys.vbar(x));
        dy[0] = a(0, 0).real() * y[0] + a(0, 1).real() * y[1] + shift * y[0];
        dy[1] = a(1, 0).real() * y[0] + a(1, 1).real() * y[1] + shift * y[1];
    };
    IntegratorSpec spec;
    spec.method = OdeMethod::NonStiff;
    spec.rtol = 1e-9;
    spec.atol = 1e-11;
    spec.max_steps = 400000;
    return integrate(spec, 2, rhs, nullptr, x0, x1, u).back().y;
}

// integrate the 4-D lambda = 0 Evans column c' = (A_ev(x,0) + shift I) c
std::vector<double> evolve_col4(const DesignerEvansSystem& sys, std::vector<double> c,
                                double shift, double x0, double x1) {
    OdeRhs rhs = [&](double x, const double* y, double* dy) {
        Mat a = sys.coeff(x, Complex(0.0, 0.0));
        for (int i = 0; i < 4; ++i) {
            double s = shift * y[i];
            for (int j = 0; j < 4; ++j) s += a(i, j).real() * y[j];
            dy[i] = s;
        }
    };
    IntegratorSpec spec;
    spec.method = OdeMethod::NonStiff;
    spec.rtol = 1e-9;
    spec.atol = 1e-11;
    spec.max_steps = 400000;
    return integrate(spec, 4, rhs, nullptr, x0, x1, c).back().y;
}

}  // namespace

NuResult transversality_nu(double gamma, double M) {
    DesignerEvansSystem sys(gamma, M);
    double L = sys.L_minus();
    double th = M * gamma * kPi;
    // r- = (cos, sin)/2: unstable (+1) mode at -inf, grows like e^{+x}
    std::vector<double> um = {0.5 * std::cos(th), 0.5 * std::sin(th)};
    um = evolve_u(sys, um, -1.0, -L, 0.0);
    // r+ = -(sin, cos)/2: stable (-1) mode at +inf, decays like e^{-x}
    std::vector<double> up = {-0.5 * std::sin(th), -0.5 * std::cos(th)};
    up = evolve_u(sys, up, +1.0, L, 0.0);
    NuResult r;
    r.raw = um[0] * up[1] - um[1] * up[0];
    r.nu_u = -4.0 * r.raw;
    r.nu = -2.0 * gamma * r.nu_u;
    return r;
}

double designer_d0(double gamma, double M) {
    DesignerEvansSystem sys(gamma, M);
    double L = sys.L_minus();
    double th = M * gamma * kPi;
    double c = std::cos(th), s = std::sin(th);
    std::vector<double> c1 = {0.5 * c, 0.5 * s, 0.5 * c, 0.5 * s};
    c1 = evolve_col4(sys, c1, -1.0, -L, 0.0);
    std::vector<double> c3 = {0.5 * s, 0.5 * c, -0.5 * s, -0.5 * c};
    c3 = evolve_col4(sys, c3, +1.0, L, 0.0);
    double m[4][4] = {{c1[0], -s, c3[0], c}, {c1[1], c, c3[1], -s},
                      {c1[2], 0.0, c3[2], 0.0}, {c1[3], 0.0, c3[3], 0.0}};
    Mat mm(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) mm(i, j) = m[i][j];
    double du = determinant(mm).real();
    return 4.0 * gamma * gamma * du;
}

LowFreqCheck designer_lowfreq(double gamma, double M) {
    LowFreqCheck lf;
    lf.d0 = designer_d0(gamma, M);
    lf.nu = transversality_nu(gamma, M).nu;
    lf.delta = designer_delta(gamma, M);
    double rhs = -lf.nu * lf.delta / 4.0;
    lf.relative_error = std::abs(lf.d0 - rhs) / std::max({std::abs(lf.d0), std::abs(rhs), 1e-300});
    return lf;
}

// ---- tracking ----

const char* TrackEvent::kind_name(Kind k) {
    switch (k) {
        case Kind::OriginCrossing: return "origin-crossing";
        case Kind::CollisionSplit: return "collision-split";
        case Kind::Hopf: return "hopf";
        case Kind::Rejoin: return "rejoin";
    }
    return "?";
}

namespace {

struct ParamMap {
    TrackParam varying;
    double fixed;
    void resolve(double p, double* gamma, double* M) const {
        switch (varying) {
            case TrackParam::Gamma: *gamma = p; *M = fixed; break;
            case TrackParam::M: *gamma = fixed; *M = p; break;
            case TrackParam::GammaWithFixedMGamma: *gamma = p; *M = fixed / p; break;
        }
    }
};

std::vector<RootEstimate> roots_at(const ParamMap& pm, double p, const TrackOptions& opt) {
    double gamma, M;
    pm.resolve(p, &gamma, &M);
    DesignerEvansSystem sys(gamma, M);
    EvansOptions eo;
    eo.mode = EvansMode::Polar;
    eo.workers = opt.workers;
    SystemEvaluator ev(sys, eo);
    MomentOptions mo = opt.moments;
    mo.winding.max_evaluations = std::max(mo.winding.max_evaluations, 40000);
    return moment_roots(ev, opt.radius, mo);
}

bool is_real_root(const RootEstimate& r, double tol) {
    return std::abs(r.location.imag()) <= tol;
}

// conjugate pairs with positive imaginary part
std::vector<Complex> nonreal_pairs(const std::vector<RootEstimate>& roots, double tol) {
    std::vector<Complex> out;
    for (const auto& r : roots)
        if (r.location.imag() > tol) out.push_back(r.location);
    return out;
}

}  // namespace

RootTrajectory track_roots(TrackParam varying, double fixed_value,
                           const std::vector<double>& params, const TrackOptions& opt) {
    if (params.size() < 2) throw ConfigError("track_roots: need at least 2 parameter values");
    RootTrajectory traj;
    traj.varying = varying;
    traj.fixed_value = fixed_value;
    ParamMap pm{varying, fixed_value};

    for (double p : params) {
        TrackStep st;
        st.param = p;
        pm.resolve(p, &st.gamma, &st.M);
        st.roots = roots_at(pm, p, opt);
        traj.steps.push_back(std::move(st));
    }

    // event detection between consecutive steps
    auto d0_at = [&](double p) {
        double gamma, M;
        pm.resolve(p, &gamma, &M);
        return designer_d0(gamma, M);
    };
    auto bisect_sign = [&](double lo, double hi, const std::function<bool(double)>& pred) {
        // pred(lo) != pred(hi); shrink to opt.event_refine
        bool plo = pred(lo);
        while (hi - lo > opt.event_refine) {
            double mid = 0.5 * (lo + hi);
            if (pred(mid) == plo) lo = mid;
            else hi = mid;
        }
        return std::pair<double, double>(lo, hi);
    };

    for (size_t k = 0; k + 1 < traj.steps.size(); ++k) {
        double p0 = traj.steps[k].param, p1 = traj.steps[k + 1].param;
        double lo = std::min(p0, p1), hi = std::max(p0, p1);
        const auto& r0 = traj.steps[k].roots;
        const auto& r1 = traj.steps[k + 1].roots;

        // origin crossing: Dtilde(0) sign change (root through lambda = 0)
        double d0a = d0_at(p0), d0b = d0_at(p1);
        if ((d0a > 0.0) != (d0b > 0.0)) {
            auto [a, b] = bisect_sign(lo, hi, [&](double p) { return d0_at(p) > 0.0; });
            TrackEvent evn;
            evn.kind = TrackEvent::Kind::OriginCrossing;
            evn.param = 0.5 * (a + b);
            evn.bracket_lo = a;
            evn.bracket_hi = b;
            evn.note = "Dtilde(0) sign change";
            traj.events.push_back(evn);
        }

        auto pairs0 = nonreal_pairs(r0, opt.imag_tol);
        auto pairs1 = nonreal_pairs(r1, opt.imag_tol);

        // collision/split: a nonreal pair appears
        if (pairs1.size() > pairs0.size()) {
            auto [a, b] = bisect_sign(lo, hi, [&](double p) {
                return nonreal_pairs(roots_at(pm, p, opt), opt.imag_tol).size() > pairs0.size();
            });
            TrackEvent evn;
            evn.kind = TrackEvent::Kind::CollisionSplit;
            evn.param = 0.5 * (a + b);
            evn.bracket_lo = a;
            evn.bracket_hi = b;
            evn.note = "real pair -> conjugate pair";
            traj.events.push_back(evn);
        }

        // pair leaving through the imaginary axis (Hopf) vs rejoining the axis
        if (pairs1.size() < pairs0.size()) {
            // find the vanished pair
            Complex gone = pairs0.back();
            for (Complex c : pairs0) {
                bool matched = false;
                for (Complex d : pairs1)
                    if (std::abs(d - c) < 0.45 * std::abs(c - std::conj(c)) + 0.2) matched = true;
                if (!matched) { gone = c; break; }
            }
            size_t reals0 = r0.size() - 2 * pairs0.size();
            size_t reals1 = r1.size() - 2 * pairs1.size();
            if (reals1 >= reals0 + 2) {
                // the pair rejoined the real axis
                auto [a, b] = bisect_sign(lo, hi, [&](double p) {
                    return nonreal_pairs(roots_at(pm, p, opt), opt.imag_tol).size() <
                           pairs0.size();
                });
                TrackEvent evn;
                evn.kind = TrackEvent::Kind::Rejoin;
                evn.param = 0.5 * (a + b);
                evn.bracket_lo = a;
                evn.bracket_hi = b;
                evn.note = "conjugate pair -> real pair";
                traj.events.push_back(evn);
            } else {
                // crossed the imaginary axis out of the contour region
                auto [a, b] = bisect_sign(lo, hi, [&](double p) {
                    return nonreal_pairs(roots_at(pm, p, opt), opt.imag_tol).size() <
                           pairs0.size();
                });
                TrackEvent evn;
                evn.kind = TrackEvent::Kind::Hopf;
                evn.param = 0.5 * (a + b);
                evn.bracket_lo = a;
                evn.bracket_hi = b;
                evn.note = "conjugate pair crossed the imaginary axis near Im = " +
                           std::to_string(gone.imag());
                traj.events.push_back(evn);
            }
        }
    }
    return traj;
}

std::vector<ScanCell> region_scan(double gamma_lo, double gamma_hi, int n_gamma, double mg_lo,
                                  double mg_hi, int n_mg, const ScanOptions& opt) {
    if (n_gamma < 1 || n_mg < 1) throw ConfigError("region_scan: grid must be nonempty");
    std::vector<ScanCell> cells(size_t(n_gamma) * n_mg);
    for (int i = 0; i < n_gamma; ++i) {
        double gamma = (n_gamma == 1)
                           ? gamma_lo
                           : gamma_lo + (gamma_hi - gamma_lo) * i / double(n_gamma - 1);
        for (int j = 0; j < n_mg; ++j) {
            double mg = (n_mg == 1) ? mg_lo : mg_lo + (mg_hi - mg_lo) * j / double(n_mg - 1);
            cells[size_t(i) * n_mg + j].gamma = gamma;
            cells[size_t(i) * n_mg + j].mgamma = mg;
        }
    }
    parallel_for(int(cells.size()), opt.workers, [&](int idx) {
        ScanCell& cell = cells[idx];
        try {
            double M = cell.mgamma / cell.gamma;
            DesignerEvansSystem sys(cell.gamma, M);
            EvansOptions eo;
            eo.mode = EvansMode::Polar;
            eo.workers = 1;  // cells are already parallel
            SystemEvaluator ev(sys, eo);
            WindingOptions wo = opt.winding;
            ContourResult res = winding_semicircle(ev, opt.radius, wo);
            cell.count = res.winding;
            cell.near_delta_zero = std::abs(std::cos(2.0 * M * kPi * cell.gamma)) < 0.05;
        } catch (const Error& e) {
            cell.error = e.what();
        }
    });
    // jump-by-2 flags against grid neighbors
    auto at = [&](int i, int j) -> ScanCell& { return cells[size_t(i) * n_mg + j]; };
    for (int i = 0; i < n_gamma; ++i)
        for (int j = 0; j < n_mg; ++j) {
            if (at(i, j).count < 0) continue;
            if (i + 1 < n_gamma && at(i + 1, j).count >= 0 &&
                std::abs(at(i + 1, j).count - at(i, j).count) == 2)
                at(i, j).jump2 = at(i + 1, j).jump2 = true;
            if (j + 1 < n_mg && at(i, j + 1).count >= 0 &&
                std::abs(at(i, j + 1).count - at(i, j).count) == 2)
                at(i, j).jump2 = at(i, j + 1).jump2 = true;
        }
    return cells;
}

}  // namespace shocklab
