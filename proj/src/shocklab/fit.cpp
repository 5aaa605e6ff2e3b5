#include "fit.hpp"

#include <algorithm>

namespace shocklab {

HfFit fit_hf(const std::vector<Complex>& lambdas, const std::vector<LogComplex>& values,
             double radius) {
    size_t m = lambdas.size();
    if (m != values.size()) throw ConfigError("fit_hf: sample size mismatch");
    {
        std::vector<Complex> uniq;
        for (Complex l : lambdas)
            if (std::find(uniq.begin(), uniq.end(), l) == uniq.end()) uniq.push_back(l);
        if (uniq.size() <= 2) throw DegenerateFit("fit_hf: need more than 2 distinct lambda");
    }
    for (const auto& v : values)
        if (!std::isfinite(v.log_abs)) throw DegenerateFit("fit_hf: zero or non-finite sample");

    // locate the sample at lambda = R; the fit is pinned there (the tables'
    // C1 e^{C2 sqrt(R)} reproduces D(R) exactly)
    size_t pin = m;
    for (size_t j = 0; j < m; ++j)
        if (std::abs(lambdas[j] - Complex(radius, 0.0)) <= 1e-9 * radius) pin = j;
    if (pin == m) throw ConfigError("fit_hf: samples must include lambda = R");

    // continuous branch of log D along the sample order
    std::vector<Complex> logd(m);
    double shift = 0.0;
    for (size_t j = 0; j < m; ++j) {
        double arg = values[j].arg + shift;
        if (j > 0) {
            while (arg - logd[j - 1].imag() > kPi) { arg -= 2.0 * kPi; shift -= 2.0 * kPi; }
            while (arg - logd[j - 1].imag() < -kPi) { arg += 2.0 * kPi; shift += 2.0 * kPi; }
        }
        logd[j] = Complex(values[j].log_abs, arg);
    }

    // one-parameter least squares through the pin:
    // log D - log D(R) = C2 (sqrt(lambda) - sqrt(R))
    Complex base = logd[pin];
    Complex sr = std::sqrt(Complex(radius, 0.0));
    Complex num = 0.0;
    double den = 0.0;
    for (size_t j = 0; j < m; ++j) {
        if (j == pin) continue;
        Complex dx = std::sqrt(lambdas[j]) - sr;
        Complex dy = logd[j] - base;
        num += dy * std::conj(dx);
        den += std::norm(dx);
    }
    if (den == 0.0) throw DegenerateFit("fit_hf: degenerate abscissae");

    // the model class is real (C1, C2); imaginary parts are fit residue
    HfFit fit;
    fit.c2 = (num / den).real();
    fit.c1 = std::exp(base.real() - fit.c2 * radius / std::abs(sr));  // = exp(Re base - C2 sqrt(R))

    auto rel_err_at = [&](Complex lambda) {
        for (size_t j = 0; j < m; ++j) {
            if (std::abs(lambdas[j] - lambda) <= 1e-9 * std::abs(lambda)) {
                Complex pred = base + fit.c2 * (std::sqrt(lambda) - sr);
                Complex ratio = std::exp(pred - logd[j]);
                return std::abs(ratio - 1.0);
            }
        }
        return 0.0;
    };
    fit.error = std::max(rel_err_at(Complex(radius, 0.0)), rel_err_at(Complex(0.0, radius)));
    return fit;
}

}  // namespace shocklab
