#include "ode.hpp"

#include <algorithm>
#include <cstring>

namespace shocklab {

namespace {

using Vec = std::vector<double>;

void hermite(const OdeNode& a, const OdeNode& b, double x, double* out, int n) {
    double h = b.x - a.x;
    if (h == 0.0) { std::memcpy(out, a.y.data(), n * sizeof(double)); return; }
    double t = (x - a.x) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    for (int i = 0; i < n; ++i)
        out[i] = h00 * a.y[i] + h * h10 * a.f[i] + h01 * b.y[i] + h * h11 * b.f[i];
}

double error_norm(const Vec& e, const Vec& y0, const Vec& y1, double rtol, double atol) {
    double s = 0.0;
    int n = int(e.size());
    for (int i = 0; i < n; ++i) {
        double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        s += sqr(e[i] / sc);
    }
    return std::sqrt(s / n);
}

// Index of the first event with a sign change across the step, or -1.
int first_crossing(const Vec& g0, const Vec& g1) {
    for (size_t k = 0; k < g0.size(); ++k) {
        if (!std::isfinite(g0[k]) || !std::isfinite(g1[k])) continue;
        if (g0[k] != 0.0 && (g0[k] > 0.0) != (g1[k] > 0.0)) return int(k);
    }
    return -1;
}

// ---- Dormand-Prince 5(4) ----

struct Dopri {
    int n;
    const OdeRhs& f;
    Vec k[7], ytmp, yerr;
    Dopri(int n_, const OdeRhs& f_) : n(n_), f(f_) {
        for (auto& v : k) v.assign(n, 0.0);
        ytmp.assign(n, 0.0);
        yerr.assign(n, 0.0);
    }
    // returns 5th-order solution in y1; k[0] must hold f(x0,y0)
    void step(double x0, const Vec& y0, double h, Vec& y1) {
        static const double a21 = 1.0 / 5;
        static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
        static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200, e6 = 11.0 / 84 - 187.0 / 2100,
                            e7 = -1.0 / 40;
        auto stage = [&](double c, std::initializer_list<std::pair<int, double>> terms) {
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (auto [j, a] : terms) s += a * k[j][i];
                ytmp[i] = y0[i] + h * s;
            }
            (void)c;
        };
        stage(0, {{0, a21}});
        f(x0 + h / 5, ytmp.data(), k[1].data());
        stage(0, {{0, a31}, {1, a32}});
        f(x0 + 3 * h / 10, ytmp.data(), k[2].data());
        stage(0, {{0, a41}, {1, a42}, {2, a43}});
        f(x0 + 4 * h / 5, ytmp.data(), k[3].data());
        stage(0, {{0, a51}, {1, a52}, {2, a53}, {3, a54}});
        f(x0 + 8 * h / 9, ytmp.data(), k[4].data());
        stage(0, {{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}});
        f(x0 + h, ytmp.data(), k[5].data());
        for (int i = 0; i < n; ++i)
            y1[i] = y0[i] + h * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] +
                                 b6 * k[5][i]);
        f(x0 + h, y1.data(), k[6].data());
        for (int i = 0; i < n; ++i)
            yerr[i] = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                           e6 * k[5][i] + e7 * k[6][i]);
    }
};

// ---- SDIRK(3), Alexander's stiffly accurate 3-stage, embedded order 2 ----

struct Sdirk {
    int n;
    const OdeRhs& f;
    const OdeJac* jac;
    double gamma, c2, a21, b1, b2, bh1, bh2;
    Vec k1, k2, k3, ytmp, rhs, del, f0;
    std::vector<double> jmat, wmat;
    std::vector<int> piv;
    double factored_h = -1.0;
    bool have_j = false;

    Sdirk(int n_, const OdeRhs& f_, const OdeJac* jac_) : n(n_), f(f_), jac(jac_) {
        // gamma is the root of x^3 - 3x^2 + 3x/2 - 1/6 in (0, 1/2)
        double g = 0.435866521508459;
        for (int i = 0; i < 3; ++i) {
            double p = ((g - 3.0) * g + 1.5) * g - 1.0 / 6.0;
            double dp = (3.0 * g - 6.0) * g + 1.5;
            g -= p / dp;
        }
        gamma = g;
        c2 = (1.0 + gamma) / 2.0;
        a21 = c2 - gamma;
        b1 = -(6.0 * gamma * gamma - 16.0 * gamma + 1.0) / 4.0;
        b2 = (6.0 * gamma * gamma - 20.0 * gamma + 5.0) / 4.0;
        // embedded order-2 weights: bh1 + bh2 = 1, bh1*gamma + bh2*c2 = 1/2
        bh2 = (0.5 - gamma) / (c2 - gamma);
        bh1 = 1.0 - bh2;
        k1.assign(n, 0.0); k2.assign(n, 0.0); k3.assign(n, 0.0);
        ytmp.assign(n, 0.0); rhs.assign(n, 0.0); del.assign(n, 0.0); f0.assign(n, 0.0);
        jmat.assign(n * n, 0.0);
        wmat.assign(n * n, 0.0);
        piv.assign(n, 0);
    }

    void numeric_jacobian(double x, const Vec& y) {
        Vec yp = y, fp(n);
        f(x, y.data(), f0.data());
        for (int j = 0; j < n; ++j) {
            double d = 1.5e-8 * std::max(std::abs(y[j]), 1e-5);
            yp[j] = y[j] + d;
            f(x, yp.data(), fp.data());
            yp[j] = y[j];
            for (int i = 0; i < n; ++i) jmat[i * n + j] = (fp[i] - f0[i]) / d;
        }
    }

    void refresh_jacobian(double x, const Vec& y) {
        if (jac) (*jac)(x, y.data(), jmat.data());
        else numeric_jacobian(x, y);
        have_j = true;
        factored_h = -1.0;
    }

    // factor W = I - h*gamma*J (dense LU, partial pivoting)
    bool factor(double h) {
        if (factored_h == h) return true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                wmat[i * n + j] = (i == j ? 1.0 : 0.0) - h * gamma * jmat[i * n + j];
        for (int c = 0; c < n; ++c) {
            int p = c;
            for (int i = c + 1; i < n; ++i)
                if (std::abs(wmat[i * n + c]) > std::abs(wmat[p * n + c])) p = i;
            if (wmat[p * n + c] == 0.0) return false;
            piv[c] = p;
            if (p != c)
                for (int j = 0; j < n; ++j) std::swap(wmat[c * n + j], wmat[p * n + j]);
            for (int i = c + 1; i < n; ++i) {
                double m = wmat[i * n + c] / wmat[c * n + c];
                wmat[i * n + c] = m;
                for (int j = c + 1; j < n; ++j) wmat[i * n + j] -= m * wmat[c * n + j];
            }
        }
        factored_h = h;
        return true;
    }

    void wsolve(Vec& b) {
        for (int c = 0; c < n; ++c)
            if (piv[c] != c) std::swap(b[c], b[piv[c]]);
        for (int i = 1; i < n; ++i)
            for (int j = 0; j < i; ++j) b[i] -= wmat[i * n + j] * b[j];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) b[i] -= wmat[i * n + j] * b[j];
            b[i] /= wmat[i * n + i];
        }
    }

    // Solve one implicit stage: k = f(x, y0 + h*base + h*gamma*k).  Newton
    // stops once the update's contribution to the solution is a small
    // fraction of the step's error budget (an absolute test stalls on rhs
    // whose evaluation noise exceeds it, e.g. finite-difference EOS models).
    bool stage(double x, const Vec& y0, double h, const Vec* base1, double w1, const Vec* base2,
               double w2, Vec& k, double rtol, double atol) {
        for (int it = 0; it < 12; ++it) {
            for (int i = 0; i < n; ++i) {
                double acc = gamma * k[i];
                if (base1) acc += w1 * (*base1)[i];
                if (base2) acc += w2 * (*base2)[i];
                ytmp[i] = y0[i] + h * acc;
            }
            f(x, ytmp.data(), rhs.data());
            for (int i = 0; i < n; ++i) del[i] = rhs[i] - k[i];
            wsolve(del);
            double dn = 0.0;
            for (int i = 0; i < n; ++i) {
                k[i] += del[i];
                double sc = atol + rtol * std::abs(y0[i]);
                dn += sqr(h * gamma * del[i] / sc);
            }
            if (std::sqrt(dn / n) <= 0.02) return true;
        }
        return false;
    }
};

}  // namespace

std::vector<double> Trajectory::eval(double x) const {
    if (nodes.empty()) throw Error("Trajectory::eval: empty trajectory");
    int n = int(nodes.front().y.size());
    std::vector<double> out(n);
    bool increasing = nodes.back().x >= nodes.front().x;
    size_t lo = 0, hi = nodes.size() - 1;
    if (nodes.size() == 1) return nodes.front().y;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        bool left = increasing ? (nodes[mid].x <= x) : (nodes[mid].x >= x);
        if (left) lo = mid;
        else hi = mid;
    }
    hermite(nodes[lo], nodes[hi], x, out.data(), n);
    return out;
}

Trajectory integrate(const IntegratorSpec& spec, int n, const OdeRhs& f_user, const OdeJac* jac,
                     double x0, double x1, const std::vector<double>& y0,
                     const std::vector<EventFn>& events, const StepCallback* on_step) {
    spec.validate();
    if (int(y0.size()) != n) throw ConfigError("integrate: y0 size mismatch");
    double dir = (x1 >= x0) ? 1.0 : -1.0;
    double span = std::abs(x1 - x0);
    Trajectory out;
    if (span == 0.0) {
        OdeNode node;
        node.x = x0;
        node.y = y0;
        node.f.assign(n, 0.0);
        f_user(x0, y0.data(), node.f.data());
        out.nodes.push_back(node);
        return out;
    }
    // Work in the forward variable s in [0, span]; x = x0 + dir*s.
    OdeRhs f = [&](double s, const double* y, double* dy) {
        f_user(x0 + dir * s, y, dy);
        if (dir < 0)
            for (int i = 0; i < n; ++i) dy[i] = -dy[i];
    };
    OdeJac jflip;
    const OdeJac* jptr = nullptr;
    if (jac) {
        jflip = [&, jac](double s, const double* y, double* jm) {
            (*jac)(x0 + dir * s, y, jm);
            if (dir < 0)
                for (int i = 0; i < n * n; ++i) jm[i] = -jm[i];
        };
        jptr = &jflip;
    }
    Vec y = y0, ynew(n);
    double s = 0.0;
    OdeNode first;
    first.x = x0;
    first.y = y0;
    first.f.assign(n, 0.0);
    f(0.0, y.data(), first.f.data());
    for (int i = 0; i < n; ++i) first.f[i] *= dir;  // store derivative wrt true x
    out.nodes.push_back(first);

    Vec g0(events.size());
    for (size_t k = 0; k < events.size(); ++k) g0[k] = events[k](x0, y.data());

    double h = spec.initial_step > 0 ? spec.initial_step : span / 100.0;
    h = std::min(h, span);

    auto push_node = [&](double sx, const Vec& yy, const Vec& ff) {
        OdeNode node;
        node.x = x0 + dir * sx;
        node.y = yy;
        node.f.resize(n);
        for (int i = 0; i < n; ++i) node.f[i] = dir * ff[i];  // derivative wrt true x
        out.nodes.push_back(node);
    };
    // Locate a terminal event to 1e-11 in x by bisection with exact
    // sub-integrations from the step's left node (dense output alone is only
    // O(h^4) accurate).
    auto refine_event = [&](const OdeNode& a, const OdeNode& b, int k) -> OdeNode {
        IntegratorSpec tight = spec;
        tight.rtol = std::max(1e-12, 1e-4 * spec.rtol);
        tight.atol = std::max(1e-14, 1e-4 * spec.atol);
        tight.max_steps = 50000;
        tight.initial_step = 0.0;
        auto solution_at = [&](double xx) -> Vec {
            if (xx == a.x) return a.y;
            return integrate(tight, n, f_user, jac, a.x, xx, a.y).back().y;
        };
        double lo = a.x, hi = b.x;
        double glo = events[k](a.x, a.y.data());
        Vec y = b.y;
        for (int it = 0; it < 80; ++it) {
            if (std::abs(hi - lo) <= 1e-11 * std::max(1.0, std::abs(lo))) break;
            double mid = 0.5 * (lo + hi);
            y = solution_at(mid);
            double gm = events[k](mid, y.data());
            if (gm == 0.0) { lo = hi = mid; break; }
            if ((gm > 0.0) == (glo > 0.0)) { lo = mid; glo = gm; }
            else hi = mid;
        }
        OdeNode node;
        node.x = 0.5 * (lo + hi);
        node.y = solution_at(node.x);
        node.f.assign(n, 0.0);
        f_user(node.x, node.y.data(), node.f.data());
        return node;
    };
    // Terminal-event check across the last accepted step, in true-x space.
    auto check_events = [&](const Vec& yy) -> bool {
        if (events.empty()) return false;
        const OdeNode b = out.nodes.back();
        const OdeNode a = out.nodes[out.nodes.size() - 2];
        Vec g1(events.size());
        for (size_t k = 0; k < events.size(); ++k) g1[k] = events[k](b.x, yy.data());
        int k = first_crossing(g0, g1);
        if (k < 0) { g0 = g1; return false; }
        out.nodes.pop_back();  // replace the overshooting node with the event node
        out.nodes.push_back(refine_event(a, b, k));
        out.event_hit = true;
        out.event_index = k;
        return true;
    };

    if (spec.method == OdeMethod::NonStiff) {
        Dopri rk(n, f);
        f(0.0, y.data(), rk.k[0].data());
        while (s < span) {
            if (out.steps >= spec.max_steps)
                throw MaxStepsExceeded("integrate: max step count exceeded at x = " +
                                       std::to_string(x0 + dir * s));
            h = std::min(h, span - s);
            if (spec.max_step > 0.0) h = std::min(h, spec.max_step);
            if (h < 1e-14 * std::max(1.0, std::abs(s)))
                throw StepSizeUnderflow("integrate: step size underflow (nonstiff) at x = " +
                                        std::to_string(x0 + dir * s));
            double err;
            try {
                rk.step(s, y, h, ynew);
                err = error_norm(rk.yerr, y, ynew, spec.rtol, spec.atol);
                if (!std::isfinite(err)) err = 1e10;
            } catch (const Error&) {
                err = 1e10;  // trial state left the rhs domain; reject and shrink
            }
            ++out.steps;
            if (err <= 1.0) {
                s += h;
                y = ynew;
                bool modified = on_step && (*on_step)(x0 + dir * s, y.data());
                if (modified) f(s, y.data(), rk.k[6].data());
                push_node(s, y, rk.k[6]);
                rk.k[0] = rk.k[6];  // FSAL
                if (check_events(y)) return out;
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        }
        return out;
    }

    // stiff path
    Sdirk sd(n, f, jptr);
    sd.refresh_jacobian(0.0, y);
    Vec yerr(n);
    int rejects_in_row = 0;
    int steps_since_jacobian = 0;
    while (s < span) {
        if (out.steps >= spec.max_steps)
            throw MaxStepsExceeded("integrate: max step count exceeded at x = " +
                                   std::to_string(x0 + dir * s));
        h = std::min(h, span - s);
        if (spec.max_step > 0.0) h = std::min(h, spec.max_step);
        if (h < 1e-14 * std::max(1.0, std::abs(s)))
            throw StepSizeUnderflow("integrate: step size underflow (stiff) at x = " +
                                    std::to_string(x0 + dir * s));
        if (!sd.factor(h)) {
            h *= 0.5;
            continue;
        }
        bool ok;
        try {
            f(s, y.data(), sd.f0.data());
            sd.k1 = sd.f0;
            ok = sd.stage(s + sd.gamma * h, y, h, nullptr, 0.0, nullptr, 0.0, sd.k1, spec.rtol, spec.atol);
            if (ok) {
                sd.k2 = sd.k1;
                ok = sd.stage(s + sd.c2 * h, y, h, &sd.k1, sd.a21, nullptr, 0.0, sd.k2, spec.rtol, spec.atol);
            }
            if (ok) {
                sd.k3 = sd.k2;
                ok = sd.stage(s + h, y, h, &sd.k1, sd.b1, &sd.k2, sd.b2, sd.k3, spec.rtol, spec.atol);
            }
        } catch (const Error&) {
            ok = false;  // trial state left the rhs domain
        }
        ++out.steps;
        if (!ok) {
            try {
                sd.refresh_jacobian(s, y);
                steps_since_jacobian = 0;
            } catch (const Error&) {
                throw StiffnessFailure("integrate: rhs not evaluable at an accepted state");
            }
            h *= 0.5;
            if (++rejects_in_row > 60)
                throw StiffnessFailure("integrate: repeated Newton failure in stiff stages");
            continue;
        }
        for (int i = 0; i < n; ++i) {
            ynew[i] = y[i] + h * (sd.b1 * sd.k1[i] + sd.b2 * sd.k2[i] + sd.gamma * sd.k3[i]);
            yerr[i] = h * ((sd.b1 - sd.bh1) * sd.k1[i] + (sd.b2 - sd.bh2) * sd.k2[i] +
                           sd.gamma * sd.k3[i]);
        }
        // filtered estimate (I - h gamma J)^{-1} yerr: the raw difference
        // wildly overestimates on stiff components
        sd.wsolve(yerr);
        double err = error_norm(yerr, y, ynew, spec.rtol, spec.atol);
        if (!std::isfinite(err)) err = 1e10;
        if (err <= 1.0) {
            rejects_in_row = 0;
            s += h;
            y = ynew;
            bool modified = on_step && (*on_step)(x0 + dir * s, y.data());
            if (modified) f(s, y.data(), sd.k3.data());
            push_node(s, y, sd.k3);  // stiffly accurate: k3 = f(s+h, ynew)
            if (check_events(y)) return out;
            // lazy Jacobian: stage failures and staleness trigger refreshes
            if (++steps_since_jacobian >= 15) {
                try {
                    sd.refresh_jacobian(s, y);
                } catch (const Error&) {
                    // keep the stale Jacobian; Newton just converges slower
                }
                steps_since_jacobian = 0;
            }
        } else {
            ++rejects_in_row;
            if (rejects_in_row > 60)
                throw StiffnessFailure("integrate: step persistently rejected (stiff)");
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -1.0 / 3.0);
        h *= std::clamp(fac, 0.2, 4.0);
    }
    return out;
}

}  // namespace shocklab
