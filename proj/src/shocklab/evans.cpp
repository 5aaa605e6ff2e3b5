#include "evans.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace shocklab {

namespace {

constexpr double kLambdaFloor = 1e-12;   // below this, evaluate at kLambdaNudge
constexpr double kLambdaNudge = 1e-8;    // analytic continuation point for lambda = 0
constexpr double kKatoStep = 0.004;      // max projector change per transport substep

Complex effective_lambda(Complex lambda) {
    return (std::abs(lambda) < kLambdaFloor) ? Complex(kLambdaNudge, 0.0) : lambda;
}

struct Selection {
    std::vector<int> idx;
    Complex mu_sum;
    double gap;
};

// pick eigenvalues with sign * Re > 0; gap = smallest |Re| among all
Selection select_by_sign(const Eigen& e, int sign, int expected) {
    Selection s;
    s.mu_sum = 0.0;
    s.gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < int(e.values.size()); ++i) {
        double re = e.values[i].real();
        s.gap = std::min(s.gap, std::abs(re));
        if (re * sign > 0.0) {
            s.idx.push_back(i);
            s.mu_sum += e.values[i];
        }
    }
    if (int(s.idx.size()) != expected)
        throw SplittingFailure("consistent splitting failed: expected " +
                               std::to_string(expected) + " eigenvalues, found " +
                               std::to_string(s.idx.size()) +
                               " (min |Re mu| = " + std::to_string(s.gap) + ")");
    return s;
}

Mat columns_from(const Eigen& e, const std::vector<int>& idx) {
    Mat b(e.vectors.rows(), int(idx.size()));
    for (int j = 0; j < int(idx.size()); ++j) b.set_col(j, e.vectors.col(idx[j]));
    return b;
}

}  // namespace

BasisSet init_bases(const EvansSystem& sys, Complex lambda) {
    lambda = effective_lambda(lambda);
    BasisSet bs;
    Eigen em = eigensolve(sys.limit_matrix(-1, lambda));
    Selection sm = select_by_sign(em, +1, sys.unstable_dim_minus());
    bs.minus = columns_from(em, sm.idx);
    bs.mu_minus = sm.mu_sum;
    Eigen ep = eigensolve(sys.limit_matrix(+1, lambda));
    Selection sp = select_by_sign(ep, -1, sys.stable_dim_plus());
    bs.plus = columns_from(ep, sp.idx);
    bs.mu_plus = sp.mu_sum;
    return bs;
}

BasisSet designer_lambda0_bases(double gamma, double M) {
    double th = M * gamma * kPi;
    double c = std::cos(th), s = std::sin(th);
    BasisSet bs;
    bs.minus = Mat(4, 2);
    bs.plus = Mat(4, 2);
    // R_-: { (c, s, c, s)/2, (-s, c, 0, 0) }
    bs.minus(0, 0) = 0.5 * c; bs.minus(1, 0) = 0.5 * s;
    bs.minus(2, 0) = 0.5 * c; bs.minus(3, 0) = 0.5 * s;
    bs.minus(0, 1) = -s; bs.minus(1, 1) = c;
    // R_+: { (s, c, -s, -c)/2, (c, -s, 0, 0) }
    bs.plus(0, 0) = 0.5 * s; bs.plus(1, 0) = 0.5 * c;
    bs.plus(2, 0) = -0.5 * s; bs.plus(3, 0) = -0.5 * c;
    bs.plus(0, 1) = c; bs.plus(1, 1) = -s;
    bs.mu_minus = 1.0;  // rates {1, 0} at -inf
    bs.mu_plus = -1.0;  // rates {-1, 0} at +inf
    return bs;
}

namespace {

// ---- polar frame evolution ----

// state layout: [Re q_00, Im q_00, Re q_10, ..., Re omega, Im omega]
struct FrameCodec {
    int n, k;
    int size() const { return 2 * n * k + 2; }
    void pack(const Mat& q, Complex omega, double* y) const {
        int idx = 0;
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) {
                y[idx++] = q(i, j).real();
                y[idx++] = q(i, j).imag();
            }
        y[idx++] = omega.real();
        y[idx] = omega.imag();
    }
    void unpack(const double* y, Mat& q, Complex& omega) const {
        q = Mat(n, k);
        int idx = 0;
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) {
                q(i, j) = Complex(y[idx], y[idx + 1]);
                idx += 2;
            }
        omega = Complex(y[idx], y[idx + 1]);
    }
};

struct FrameEnd {
    Mat q;
    Complex omega;
};

FrameEnd evolve_frame(const EvansSystem& sys, Complex lambda, const Mat& basis, Complex mu_shift,
                      double x_from, double x_to, const EvansOptions& opt) {
    int n = sys.dim(), k = basis.cols();
    FrameCodec codec{n, k};
    Qr init = orthonormalize(basis);
    Complex omega0 = std::log(determinant(init.r));  // real positive diagonal -> real log

    OdeRhs rhs = [&](double x, const double* y, double* dy) {
        Mat q;
        Complex omega;
        codec.unpack(y, q, omega);
        Mat a = sys.coeff(x, lambda);
        Mat aq = a * q;
        Mat qh_aq = q.adjoint() * aq;
        Mat dq = aq - q * qh_aq;  // (I - Q Q^H) A Q
        Complex tr = 0.0;
        for (int j = 0; j < k; ++j) tr += qh_aq(j, j);
        Complex domega = tr - mu_shift;
        codec.pack(dq, domega, dy);
    };

    IntegratorSpec spec;
    spec.method = sys.stiff() ? OdeMethod::Stiff : OdeMethod::NonStiff;
    // frames run a decade tighter than the requested tolerance so per-step
    // orthonormality drift stays well under the 1e-6 degeneracy threshold
    spec.rtol = std::min(opt.rtol, 1e-7);
    spec.atol = std::min(opt.atol, 1e-9);
    spec.max_steps = 400000;

    std::vector<double> y0(codec.size());
    codec.pack(init.q, (opt.mode == EvansMode::Polar) ? omega0 : Complex(0.0), y0.data());

    // re-orthonormalize after every accepted step; the radial factor absorbs
    // det R of each correction (real positive, so analyticity is untouched)
    StepCallback reorth = [&](double, double* y) {
        Mat q;
        Complex omega;
        codec.unpack(y, q, omega);
        double drift = (q.adjoint() * q - Mat::identity(k)).frobenius();
        if (drift > 1e-6)
            throw FrameDegeneracy("evans_eval: orthonormality drift " + std::to_string(drift));
        Qr fix = orthonormalize(q);
        Complex corr = std::log(determinant(fix.r));
        codec.pack(fix.q, omega + ((opt.mode == EvansMode::Polar) ? corr : Complex(0.0)), y);
        return true;
    };
    Trajectory trj = integrate(spec, codec.size(), rhs, nullptr, x_from, x_to, y0, {}, &reorth);
    FrameEnd end;
    Complex omega;
    codec.unpack(trj.back().y.data(), end.q, omega);
    end.omega = (opt.mode == EvansMode::Polar) ? omega : Complex(0.0);
    return end;
}

}  // namespace

LogComplex evans_eval(const EvansSystem& sys, Complex lambda, const BasisSet& bases,
                      const EvansOptions& opt) {
    lambda = effective_lambda(lambda);
    FrameEnd left = evolve_frame(sys, lambda, bases.minus, bases.mu_minus, -sys.L_minus(), 0.0, opt);
    FrameEnd right = evolve_frame(sys, lambda, bases.plus, bases.mu_plus, sys.L_plus(), 0.0, opt);
    int n = sys.dim();
    Mat full(n, n);
    for (int j = 0; j < left.q.cols(); ++j) full.set_col(j, left.q.col(j));
    for (int j = 0; j < right.q.cols(); ++j) full.set_col(left.q.cols() + j, right.q.col(j));
    Complex det = determinant(full);
    LogComplex out;
    Complex total = left.omega + right.omega;
    out.log_abs = total.real() + std::log(std::abs(det));
    out.arg = std::remainder(total.imag() + std::arg(det), 2.0 * kPi);
    return out;
}

// ---- paths ----

PathPiece PathPiece::arc(Complex center, double radius, double theta0, double theta1) {
    PathPiece p;
    p.kind = Kind::Arc;
    p.center = center;
    p.radius = radius;
    p.theta0 = theta0;
    p.theta1 = theta1;
    return p;
}

PathPiece PathPiece::line(Complex a, Complex b) {
    PathPiece p;
    p.kind = Kind::Line;
    p.a = a;
    p.b = b;
    return p;
}

double PathPiece::length() const {
    if (kind == Kind::Arc) return std::abs(theta1 - theta0) * radius;
    return std::abs(b - a);
}

Complex PathPiece::at(double u) const {
    if (kind == Kind::Arc) {
        double th = theta0 + (theta1 - theta0) * u;
        return center + radius * Complex(std::cos(th), std::sin(th));
    }
    return a + (b - a) * u;
}

double Path::total_length() const {
    double s = 0.0;
    for (const auto& p : pieces) s += p.length();
    return s;
}

Complex Path::at(double t) const {
    double total = total_length();
    double target = std::clamp(t, 0.0, 1.0) * total;
    double acc = 0.0;
    for (const auto& p : pieces) {
        double len = p.length();
        if (target <= acc + len || &p == &pieces.back())
            return p.at(len > 0 ? (target - acc) / len : 0.0);
        acc += len;
    }
    return pieces.back().at(1.0);
}

// ---- system evaluator with Kato transport ----

SystemEvaluator::SystemEvaluator(const EvansSystem& sys, EvansOptions opt)
    : sys_(sys), opt_(opt) {}

bool SystemEvaluator::projector_continue(int side, Complex lambda, const Mat& p_prev,
                                         Mat* p_out) const {
    Eigen e = eigensolve(sys_.limit_matrix(side, effective_lambda(lambda)));
    int n = sys_.dim();
    int k = (side < 0) ? sys_.unstable_dim_minus() : sys_.stable_dim_plus();
    // score each eigenvector by its projection residual against the previous
    // subspace: ~0 for continued members, ~1 for the complement
    std::vector<std::pair<double, int>> scored;
    for (int i = 0; i < n; ++i) {
        Mat v = e.vectors.col(i);
        Mat r = p_prev * v - v;
        scored.push_back({r.frobenius(), i});
    }
    std::sort(scored.begin(), scored.end());
    if (scored[k - 1].first > 0.3 || (int(scored.size()) > k && scored[k].first < 0.6))
        return false;  // ambiguous; caller subdivides the transport step
    std::vector<int> idx;
    for (int j = 0; j < k; ++j) idx.push_back(scored[j].second);
    *p_out = spectral_projector(e, idx);
    return true;
}

void SystemEvaluator::transport(CacheEntry& e, Complex to) const {
    to = effective_lambda(to);
    Complex from = e.lambda;
    if (std::abs(to - from) == 0.0) return;
    struct Side {
        Mat* basis;
        Mat* proj;
        int side;
        Complex* mu;
    };
    Side sides[2] = {{&e.bases.minus, &e.p_minus, -1, &e.bases.mu_minus},
                     {&e.bases.plus, &e.p_plus, +1, &e.bases.mu_plus}};
    for (auto& sd : sides) {
        Complex a = from;
        Mat p_a = *sd.proj;
        Mat b = *sd.basis;
        // adaptive substepping on projector variation
        std::vector<Complex> stack = {to};
        while (!stack.empty()) {
            Complex target = stack.back();
            Mat p_b;
            bool resolved = projector_continue(sd.side, target, p_a, &p_b);
            bool at_floor = std::abs(target - a) <= 1e-13 * std::max(1.0, std::abs(to - from));
            if (!resolved) {
                if (at_floor)
                    throw SplittingFailure(
                        "Kato transport: subspace continuation ambiguous at lambda = (" +
                        std::to_string(target.real()) + ", " + std::to_string(target.imag()) +
                        ")");
                stack.push_back(0.5 * (a + target));
                continue;
            }
            if ((p_b - p_a).frobenius() > kKatoStep && !at_floor) {
                stack.push_back(0.5 * (a + target));
                continue;
            }
            stack.pop_back();
            // second-order Kato update B <- (I + K + K^2/2) B, K = [dP, (Pa+Pb)/2]
            Mat pm = (p_a + p_b) * 0.5;
            Mat dp = p_b - p_a;
            Mat kmat = dp * pm - pm * dp;
            Mat kb = kmat * b;
            b = b + kb + (kmat * kb) * 0.5;
            b = p_b * b;  // keep the frame in range(P)
            p_a = p_b;
            a = target;
        }
        *sd.basis = b;
        *sd.proj = p_a;
        Mat pa_mat = sys_.limit_matrix(sd.side, effective_lambda(to));
        Mat restricted = p_a * pa_mat;
        Complex tr = 0.0;
        for (int i = 0; i < sys_.dim(); ++i) tr += restricted(i, i);
        *sd.mu = tr;  // trace of A restricted to the transported subspace
    }
    e.lambda = to;
}

SystemEvaluator::CacheEntry& SystemEvaluator::prepare(double t, Complex lambda) {
    auto it = cache_.find(t);
    if (it != cache_.end()) {
        if (std::abs(it->second.lambda - effective_lambda(lambda)) >
            1e-14 * std::max(1.0, std::abs(lambda)))
            transport(it->second, lambda);
        return it->second;
    }
    CacheEntry entry;
    if (cache_.empty()) {
        // anchor: sign-classified eigendecomposition
        entry.lambda = effective_lambda(lambda);
        entry.bases = init_bases(sys_, lambda);
        Eigen em = eigensolve(sys_.limit_matrix(-1, entry.lambda));
        Selection sm = select_by_sign(em, +1, sys_.unstable_dim_minus());
        entry.p_minus = spectral_projector(em, sm.idx);
        Eigen ep = eigensolve(sys_.limit_matrix(+1, entry.lambda));
        Selection sp = select_by_sign(ep, -1, sys_.stable_dim_plus());
        entry.p_plus = spectral_projector(ep, sp.idx);
    } else {
        // transport from the nearest cached t
        auto lo = cache_.lower_bound(t);
        auto src = lo;
        if (lo == cache_.end()) src = std::prev(lo);
        else if (lo != cache_.begin()) {
            auto below = std::prev(lo);
            src = (t - below->first < lo->first - t) ? below : lo;
        }
        entry = src->second;
        transport(entry, lambda);
    }
    auto [pos, inserted] = cache_.emplace(t, std::move(entry));
    return pos->second;
}

std::vector<LogComplex> SystemEvaluator::evaluate(
    const std::vector<std::pair<double, Complex>>& pts) {
    // basis preparation is sequential (shared cache), integration parallel
    std::vector<BasisSet> bases(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        bases[i] = prepare(pts[i].first, pts[i].second).bases;
    std::vector<LogComplex> out(pts.size());
    parallel_for(int(pts.size()), opt_.workers, [&](int i) {
        out[i] = evans_eval(sys_, pts[i].second, bases[i], opt_);
    });
    return out;
}

LogComplex SystemEvaluator::eval_single(Complex lambda) {
    BasisSet bs = init_bases(sys_, lambda);
    return evans_eval(sys_, lambda, bs, opt_);
}

BasisSet SystemEvaluator::transport_loop(const std::vector<Complex>& lambdas) {
    if (lambdas.size() < 2) throw ConfigError("transport_loop: need at least 2 points");
    CacheEntry e;
    e.lambda = effective_lambda(lambdas.front());
    e.bases = init_bases(sys_, lambdas.front());
    Eigen em = eigensolve(sys_.limit_matrix(-1, e.lambda));
    Selection sm = select_by_sign(em, +1, sys_.unstable_dim_minus());
    e.p_minus = spectral_projector(em, sm.idx);
    Eigen ep = eigensolve(sys_.limit_matrix(+1, e.lambda));
    Selection sp = select_by_sign(ep, -1, sys_.stable_dim_plus());
    e.p_plus = spectral_projector(ep, sp.idx);
    for (size_t i = 1; i < lambdas.size(); ++i) transport(e, lambdas[i]);
    transport(e, lambdas.front());
    return e.bases;
}

// ---- winding drivers ----

namespace {

struct WalkNode {
    double t;
    Complex lambda;
    LogComplex d;
};

// adaptive refinement of a parametric walk until consecutive relative changes
// pass the threshold
std::vector<WalkNode> refine_walk(ContourEvaluator& ev, const Path& path,
                                  const std::vector<double>& seed_ts, const WindingOptions& opt,
                                  int* eval_count) {
    ev.begin_walk();
    std::vector<WalkNode> nodes;
    {
        std::vector<std::pair<double, Complex>> pts;
        for (double t : seed_ts) pts.push_back({t, path.at(t)});
        std::vector<LogComplex> vals = ev.evaluate(pts);
        *eval_count += int(pts.size());
        for (size_t i = 0; i < pts.size(); ++i)
            nodes.push_back({pts[i].first, pts[i].second, vals[i]});
    }
    for (;;) {
        std::vector<double> missing;
        for (size_t i = 0; i + 1 < nodes.size(); ++i) {
            double rel = relative_change(nodes[i].d, nodes[i + 1].d);
            if (rel > opt.refine && nodes[i + 1].t - nodes[i].t > 1e-12)
                missing.push_back(0.5 * (nodes[i].t + nodes[i + 1].t));
        }
        if (missing.empty()) break;
        if (*eval_count + int(missing.size()) > opt.max_evaluations)
            throw RefinementBudgetExceeded(
                "winding: contour refinement budget exceeded (" +
                std::to_string(*eval_count) + " evaluations)");
        std::vector<std::pair<double, Complex>> pts;
        for (double t : missing) pts.push_back({t, path.at(t)});
        std::vector<LogComplex> vals = ev.evaluate(pts);
        *eval_count += int(pts.size());
        std::vector<WalkNode> merged;
        merged.reserve(nodes.size() + pts.size());
        size_t a = 0, b = 0;
        while (a < nodes.size() || b < pts.size()) {
            if (b >= pts.size() || (a < nodes.size() && nodes[a].t <= pts[b].first))
                merged.push_back(nodes[a++]);
            else {
                merged.push_back({pts[b].first, pts[b].second, vals[b]});
                ++b;
            }
        }
        nodes = std::move(merged);
    }
    return nodes;
}

ContourResult assemble_result(const std::vector<WalkNode>& walk) {
    ContourResult res;
    double cum = 0.0;
    for (size_t i = 0; i < walk.size(); ++i) {
        if (i > 0) {
            double da = std::remainder(walk[i].d.arg - walk[i - 1].d.arg, 2.0 * kPi);
            cum += da;
            res.max_rel_step =
                std::max(res.max_rel_step, relative_change(walk[i - 1].d, walk[i].d));
        }
        res.points.push_back({walk[i].lambda, walk[i].d, cum});
    }
    // close the loop
    double da = std::remainder(walk.front().d.arg - walk.back().d.arg, 2.0 * kPi);
    cum += da;
    res.winding = int(std::lround(cum / (2.0 * kPi)));
    res.arg_residual = std::abs(cum - 2.0 * kPi * res.winding);
    res.rouche_ok = res.max_rel_step < 1.0;
    return res;
}

}  // namespace

ContourResult winding_path(ContourEvaluator& ev, const Path& path, const WindingOptions& opt) {
    int evals = 0;
    // seed proportional to piece lengths, with piece endpoints mandatory
    std::vector<double> seeds;
    double total = path.total_length();
    double acc = 0.0;
    for (const auto& piece : path.pieces) {
        double t0 = acc / total;
        acc += piece.length();
        double t1 = acc / total;
        int m = std::max(2, int(std::ceil(opt.min_points * (t1 - t0))));
        for (int i = 0; i < m; ++i) seeds.push_back(t0 + (t1 - t0) * i / double(m));
    }
    seeds.push_back(1.0);
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                seeds.end());
    std::vector<WalkNode> walk = refine_walk(ev, path, seeds, opt, &evals);
    // drop the duplicated closing point (t = 1 equals t = 0 on a closed path)
    if (std::abs(walk.back().lambda - walk.front().lambda) <
        1e-12 * std::max(1.0, std::abs(walk.front().lambda)))
        walk.pop_back();
    ContourResult res = assemble_result(walk);
    res.evaluations = evals;
    return res;
}

ContourResult winding_semicircle(ContourEvaluator& ev, double radius, const WindingOptions& opt) {
    if (!(radius > 0.0)) throw ConfigError("winding_semicircle: radius must be positive");
    auto make_upper = [&](bool detour) {
        Path up;
        up.pieces.push_back(PathPiece::arc(0.0, radius, 0.0, kPi / 2.0));  // R -> iR
        if (detour) {
            up.pieces.push_back(
                PathPiece::line(Complex(0.0, radius), Complex(0.0, opt.detour_radius)));
            up.pieces.push_back(PathPiece::arc(0.0, opt.detour_radius, kPi / 2.0, 0.0));
        } else {
            up.pieces.push_back(PathPiece::line(Complex(0.0, radius), Complex(0.0, 0.0)));
        }
        return up;
    };

    bool detour = false;
    std::vector<WalkNode> upper;
    int evals = 0;
    for (int attempt = 0; attempt < 2; ++attempt) {
        Path up = make_upper(detour);
        std::vector<double> seeds;
        int m = std::max(8, opt.min_points / 2);
        for (int i = 0; i <= m; ++i) seeds.push_back(i / double(m));
        // mandatory corner point at iR
        double t_corner = up.pieces[0].length() / up.total_length();
        seeds.push_back(t_corner);
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                    seeds.end());
        upper = refine_walk(ev, up, seeds, opt, &evals);
        if (detour) break;
        // detour needed only when |D(0)| is near zero relative to the contour scale
        std::vector<double> logs;
        for (const auto& nd : upper) logs.push_back(nd.d.log_abs);
        std::vector<double> sorted = logs;
        std::sort(sorted.begin(), sorted.end());
        double median = sorted[sorted.size() / 2];
        if (upper.back().d.log_abs - median < std::log(opt.detour_trigger)) detour = true;
        else break;
    }

    // full walk: upper forward, then conjugate-mirrored upper reversed
    std::vector<WalkNode> walk = upper;
    for (size_t i = upper.size() - 1; i-- > 0;) {
        WalkNode mirror;
        mirror.t = 2.0 - upper[i].t;  // bookkeeping only
        mirror.lambda = std::conj(upper[i].lambda);
        mirror.d.log_abs = upper[i].d.log_abs;
        mirror.d.arg = -upper[i].d.arg;
        walk.push_back(mirror);
    }
    ContourResult res = assemble_result(walk);
    res.evaluations = evals;
    res.detoured = detour;
    return res;
}

int gas_lowfreq_sign(const EvansSystem& sys, const EvansOptions& opt) {
    BasisSet bs = init_bases(sys, Complex(0.0, 0.0));
    LogComplex d = evans_eval(sys, Complex(0.0, 0.0), bs, opt);
    double c = std::cos(d.arg);
    return c > 0.0 ? 1 : (c < 0.0 ? -1 : 0);
}

}  // namespace shocklab
