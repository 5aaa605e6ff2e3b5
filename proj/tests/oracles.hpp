#pragma once

// Test-side oracles, independent of the implementation paths they check.

#include <shocklab/common.hpp>
#include <shocklab/linalg.hpp>

#include <functional>

namespace oracles {

using shocklab::Complex;

// centered finite difference, fixed step
inline double fd1(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// real roots of a monic-izable cubic via companion-matrix eigenvalues
inline std::vector<double> companion_cubic_roots(double a3, double a2, double a1, double a0) {
    shocklab::Mat c(3, 3);
    c(0, 2) = -a0 / a3;
    c(1, 2) = -a1 / a3;
    c(2, 2) = -a2 / a3;
    c(1, 0) = 1.0;
    c(2, 1) = 1.0;
    shocklab::Eigen e = shocklab::eigensolve(c);
    std::vector<double> roots;
    for (Complex v : e.values)
        if (std::abs(v.imag()) < 1e-8 * std::max(1.0, std::abs(v))) roots.push_back(v.real());
    std::sort(roots.begin(), roots.end());
    return roots;
}

// exp(A x) y0 via eigendecomposition (closed-form exponential for the linear
// system oracle)
inline std::vector<double> expm_apply(const shocklab::Mat& a, double x,
                                      const std::vector<double>& y0) {
    shocklab::Eigen e = shocklab::eigensolve(a);
    int n = a.rows();
    shocklab::Mat y(n, 1);
    for (int i = 0; i < n; ++i) y(i, 0) = y0[i];
    shocklab::Mat coeff = shocklab::solve(e.vectors, y);
    std::vector<double> out(n, 0.0);
    for (int j = 0; j < n; ++j) {
        Complex w = std::exp(e.values[j] * x) * coeff(j, 0);
        for (int i = 0; i < n; ++i) out[i] += (e.vectors(i, j) * w).real();
    }
    return out;
}

}  // namespace oracles
