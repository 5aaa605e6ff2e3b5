#include "moments.hpp"

#include <algorithm>
#include <cmath>

namespace shocklab {

namespace {

// Annular sector in the closed right half plane.
struct Sector {
    double r0, r1;          // radii, r0 >= 0
    double th0, th1;        // angles within [-pi/2, pi/2]
    std::string trail;
};

Path sector_path(const Sector& s) {
    Path p;
    p.pieces.push_back(PathPiece::arc(0.0, s.r1, s.th0, s.th1));
    Complex inner1 = s.r0 * Complex(std::cos(s.th1), std::sin(s.th1));
    Complex outer1 = s.r1 * Complex(std::cos(s.th1), std::sin(s.th1));
    p.pieces.push_back(PathPiece::line(outer1, inner1));
    p.pieces.push_back(PathPiece::arc(0.0, s.r0, s.th1, s.th0));
    Complex inner0 = s.r0 * Complex(std::cos(s.th0), std::sin(s.th0));
    Complex outer0 = s.r1 * Complex(std::cos(s.th0), std::sin(s.th0));
    p.pieces.push_back(PathPiece::line(inner0, outer0));
    return p;
}

struct MeshValue {
    Complex lambda;
    LogComplex d;
};

// Trapezoid of lambda^l * D'/D over the walk, with D' by centered finite
// differences; the l = 0 moment is taken from the winding number directly.
std::vector<Complex> compute_moments(ContourEvaluator& ev, const Path& path,
                                     const ContourResult& contour, int count,
                                     const MomentOptions& opt) {
    (void)path;
    const auto& pts = contour.points;
    size_t n = pts.size();
    // FD derivative needs two extra evaluations per mesh point, with the same
    // transported frame (reuse the walk parameter via a fresh micro-batch
    // right at each lambda)
    std::vector<std::pair<double, Complex>> fd_pts;
    fd_pts.reserve(2 * n);
    std::vector<double> steps(n);
    for (size_t i = 0; i < n; ++i) {
        double h = opt.fd_step_rel * std::max(1.0, std::abs(pts[i].lambda));
        steps[i] = h;
        fd_pts.push_back({double(i), pts[i].lambda + h});
        fd_pts.push_back({double(i), pts[i].lambda - h});
    }
    std::vector<LogComplex> fd_vals = ev.evaluate(fd_pts);
    std::vector<Complex> ratio(n);  // D'/D at each mesh point
    for (size_t i = 0; i < n; ++i) {
        // (D+ - D-) / (2h D) = (exp(log D+ - log D) - exp(log D- - log D)) / 2h
        Complex base = pts[i].d.clog();
        Complex up = std::exp(fd_vals[2 * i].clog() - base);
        Complex dn = std::exp(fd_vals[2 * i + 1].clog() - base);
        ratio[i] = (up - dn) / (2.0 * steps[i]);
    }
    std::vector<Complex> moments(count + 1);
    moments[0] = double(contour.winding);
    for (int l = 1; l <= count; ++l) {
        Complex acc = 0.0;
        for (size_t i = 0; i < n; ++i) {
            size_t j = (i + 1) % n;
            Complex fi = std::pow(pts[i].lambda, l) * ratio[i];
            Complex fj = std::pow(pts[j].lambda, l) * ratio[j];
            acc += 0.5 * (fi + fj) * (pts[j].lambda - pts[i].lambda);
        }
        moments[l] = acc / Complex(0.0, 2.0 * kPi);
    }
    return moments;
}

void recover_roots(const std::vector<Complex>& moments, int w, const std::string& trail,
                   std::vector<RootEstimate>& out) {
    if (w == 1) {
        out.push_back({moments[1], 1, trail});
        return;
    }
    // w == 2: Newton identities e1 = m1, e2 = (m1^2 - m2)/2
    Complex e1 = moments[1], e2 = 0.5 * (moments[1] * moments[1] - moments[2]);
    Complex disc = std::sqrt(e1 * e1 - 4.0 * e2);
    Complex r1 = 0.5 * (e1 + disc), r2 = 0.5 * (e1 - disc);
    if (std::abs(r1 - r2) < 1e-7 * std::max(1.0, std::abs(r1))) {
        out.push_back({0.5 * (r1 + r2), 2, trail});
    } else {
        out.push_back({r1, 1, trail});
        out.push_back({r2, 1, trail});
    }
}

void subdivide(ContourEvaluator& ev, const Sector& sector, const MomentOptions& opt, int depth,
               std::vector<RootEstimate>& out) {
    if (depth > opt.max_depth)
        throw IllConditionedMoments("moment_roots: subdivision depth exceeded at sector " +
                                    sector.trail);
    Path path = sector_path(sector);
    ContourResult contour = winding_path(ev, path, opt.winding);
    if (contour.winding < 0)
        throw IllConditionedMoments("moment_roots: negative winding on subcontour " +
                                    sector.trail);
    if (contour.winding == 0) return;
    if (contour.winding <= 2) {
        // moment quadrature wants a finer mesh than winding alone
        WindingOptions fine = opt.winding;
        fine.refine = std::min(0.05, opt.winding.refine);
        ContourResult mesh = winding_path(ev, path, fine);
        std::vector<Complex> m = compute_moments(ev, path, mesh, contour.winding, opt);
        recover_roots(m, contour.winding, sector.trail, out);
        return;
    }
    // split the wider dimension (arc length vs radial extent), jittered so the
    // cut does not land on a root; a wide radius range splits geometrically to
    // corner root clusters near the origin quickly
    double arc_extent = 0.5 * (sector.r0 + sector.r1) * (sector.th1 - sector.th0);
    double rad_extent = sector.r1 - sector.r0;
    Sector a = sector, b = sector;
    if (rad_extent >= arc_extent) {
        double rm = (sector.r1 > 16.0 * sector.r0)
                        ? std::sqrt(sector.r0 * sector.r1) * 1.013
                        : 0.5 * (sector.r0 + sector.r1) * 1.013;
        a.r1 = rm;
        b.r0 = rm;
        a.trail += "r0";
        b.trail += "r1";
    } else {
        double tm = sector.th0 + 0.513 * (sector.th1 - sector.th0);
        a.th1 = tm;
        b.th0 = tm;
        a.trail += "t0";
        b.trail += "t1";
    }
    subdivide(ev, a, opt, depth + 1, out);
    subdivide(ev, b, opt, depth + 1, out);
}

Complex polish_root(ContourEvaluator& ev, Complex r0, double scale) {
    // few Newton steps on D with FD derivative; keep only if |D| improves
    auto value = [&](Complex z) {
        std::vector<LogComplex> v = ev.evaluate({{-1.0, z}});
        return v[0];
    };
    Complex r = r0;
    LogComplex d = value(r);
    for (int it = 0; it < 6; ++it) {
        double h = 1e-7 * std::max(1.0, std::abs(r));
        LogComplex dp = value(r + h), dm = value(r - h);
        Complex deriv_over_d =
            (std::exp(dp.clog() - d.clog()) - std::exp(dm.clog() - d.clog())) / (2.0 * h);
        if (std::abs(deriv_over_d) == 0.0) break;
        Complex step = -1.0 / deriv_over_d;
        if (std::abs(step) > 0.1 * scale) break;  // diverging; keep the moment estimate
        r += step;
        LogComplex dn = value(r);
        if (dn.log_abs >= d.log_abs) {
            r -= step;
            break;
        }
        d = dn;
        if (std::abs(step) < 1e-12 * std::max(1.0, std::abs(r))) break;
    }
    return r;
}

void symmetrize(std::vector<RootEstimate>& roots, double scale) {
    // enforce exact conjugate pairing
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        if (std::abs(roots[i].location.imag()) < 1e-9 * scale) {
            roots[i].location.imag(0.0);
            continue;
        }
        size_t best = i;
        double best_dist = std::numeric_limits<double>::infinity();
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            double dist = std::abs(roots[j].location - std::conj(roots[i].location));
            if (dist < best_dist) { best_dist = dist; best = j; }
        }
        if (best != i && best_dist < 1e-3 * scale) {
            Complex avg = 0.5 * (roots[i].location + std::conj(roots[best].location));
            roots[i].location = avg;
            roots[best].location = std::conj(avg);
            used[i] = used[best] = true;
        }
    }
}

}  // namespace

int winding_circle(ContourEvaluator& ev, Complex center, double radius,
                   const WindingOptions& opt) {
    Path p;
    p.pieces.push_back(PathPiece::arc(center, radius, 0.0, 2.0 * kPi));
    return winding_path(ev, p, opt).winding;
}

std::vector<RootEstimate> moment_roots(ContourEvaluator& ev, double radius,
                                       const MomentOptions& opt) {
    Sector top;
    top.r0 = opt.inner_radius_frac * radius;
    top.r1 = radius;
    top.th0 = -kPi / 2.0;
    top.th1 = kPi / 2.0;
    top.trail = "";
    std::vector<RootEstimate> roots;
    subdivide(ev, top, opt, 0, roots);
    if (opt.polish)
        for (auto& r : roots) r.location = polish_root(ev, r.location, radius);
    symmetrize(roots, radius);
    std::sort(roots.begin(), roots.end(), [](const RootEstimate& a, const RootEstimate& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return roots;
}

std::vector<RootEstimate> moment_roots(const std::function<Complex(Complex)>& f, double radius,
                                       const MomentOptions& opt) {
    FunctionEvaluator ev(f);
    return moment_roots(ev, radius, opt);
}

}  // namespace shocklab
