#include "rootfind.hpp"

#include <algorithm>

namespace shocklab {

double bisect(const std::function<double(double)>& f, double a, double b, double xtol,
              int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NoSignChange("bisect: no sign change on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) { a = m; fa = fm; }
        else { b = m; }
    }
    return 0.5 * (a + b);
}

double newton_bisect(const std::function<double(double)>& f,
                     const std::function<double(double)>& df, double x0, double a, double b,
                     double xtol, int max_iter) {
    double fa = f(a), fb = f(b);
    if ((fa > 0.0) == (fb > 0.0))
        throw NoSignChange("newton_bisect: no sign change on bracket");
    double x = std::clamp(x0, a, b);
    for (int i = 0; i < max_iter; ++i) {
        double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (fa > 0.0)) { a = x; fa = fx; }
        else { b = x; }
        if (b - a <= xtol) return 0.5 * (a + b);
        double d = df(x);
        double xn = (d != 0.0) ? x - fx / d : a - 1.0;
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);  // Newton left the bracket
        x = xn;
    }
    return 0.5 * (a + b);
}

namespace {
double eval_cubic(double a3, double a2, double a1, double a0, double x) {
    return ((a3 * x + a2) * x + a1) * x + a0;
}
double eval_dcubic(double a3, double a2, double a1, double x) {
    return (3.0 * a3 * x + 2.0 * a2) * x + a1;
}
}  // namespace

std::vector<double> cubic_roots(double a3, double a2, double a1, double a0) {
    if (a3 == 0.0) throw DomainError("cubic_roots: leading coefficient is zero");
    double b = a2 / a3, c = a1 / a3, d = a0 / a3;
    // depressed form t^3 + p t + q with x = t - b/3
    double p = c - b * b / 3.0;
    double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    double shift = -b / 3.0;
    double scale = std::max({1.0, std::abs(p), std::cbrt(std::abs(q))});
    std::vector<double> roots;
    double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (std::abs(p) < 1e-14 * scale * scale && std::abs(q) < 1e-14 * scale * scale * scale) {
        roots = {shift, shift, shift};  // triple root
    } else if (disc >= 0.0) {
        // three real roots, trigonometric form (p < 0 here)
        double m = std::sqrt(-p / 3.0);
        double arg = std::clamp(3.0 * q / (2.0 * p * m), -1.0, 1.0);
        double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(2.0 * m * std::cos(phi - 2.0 * kPi * k / 3.0) + shift);
    } else {
        // one real root, Cardano
        double half_q = q / 2.0;
        double disc2 = std::sqrt(half_q * half_q + p * p * p / 27.0);
        double u = std::cbrt(-half_q + disc2);
        double v = std::cbrt(-half_q - disc2);
        roots.push_back(u + v + shift);
    }
    for (double& r : roots) {
        double fr = eval_cubic(a3, a2, a1, a0, r);
        double dr = eval_dcubic(a3, a2, a1, r);
        if (dr != 0.0) {
            double step = fr / dr;
            if (std::abs(step) < 0.1 * std::max(1.0, std::abs(r))) r -= step;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace shocklab
