#include "evans_system.hpp"

#include <cmath>

namespace shocklab {

GasEvansSystem::GasEvansSystem(std::shared_ptr<const ViscousProfile> profile)
    : profile_(std::move(profile)) {}

Mat GasEvansSystem::coeff(double x, Complex lambda) const {
    ViscousProfile::Point p = profile_->at(x);
    return assemble(p.tau, p.S, p.dtau, p.dS, lambda);
}

Mat GasEvansSystem::limit_matrix(int side, Complex lambda) const {
    const ThermoState& st = (side < 0) ? profile_->shock.minus : profile_->shock.plus;
    return assemble(st.tau, st.S, 0.0, 0.0, lambda);
}

Mat GasEvansSystem::assemble(double tau, double S, double dtau, double dS,
                             Complex lambda) const {
    const ShockTriple& shock = profile_->shock;
    double mu = profile_->mu, kappa = profile_->kappa;
    double sigma = shock.sigma;
    EosDerivs d = profile_->model.derivs(tau, S);
    if (!(d.e_ss > 0.0))
        throw SingularCoefficient("GasEvansSystem: e_SS <= 0 along the profile");
    double v = -sigma * (tau - shock.minus.tau);
    double vx = -sigma * dtau;
    double Tx = d.e_ts * dtau + d.e_ss * dS;
    double p = -d.e_t;
    // Helmholtz-view partials at (tau, S)
    double p_tau = -d.e_tt + d.e_ts * d.e_ts / d.e_ss;
    double p_T = -d.e_ts / d.e_ss;
    double e_tau = d.e_t - d.e_s * d.e_ts / d.e_ss;
    double e_T = d.e_s / d.e_ss;

    // A0 = df0, df1, and A1 = df1 - sigma*A0 - dB(wbar)(., wbar_x)
    double A0[3][3] = {{1, 0, 0}, {0, 1, 0}, {e_tau, v, e_T}};
    double A1[3][3] = {{0, -1, 0}, {p_tau, 0, p_T}, {v * p_tau, p, v * p_T}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A1[i][j] -= sigma * A0[i][j];
    // dB term: rows (v, T), columns (tau, v, T)
    A1[1][0] -= -mu * vx / (tau * tau);
    A1[2][0] -= -(mu * v * vx + kappa * Tx) / (tau * tau);
    A1[2][1] -= mu * vx / tau;

    double a11 = A1[0][0];  // = -sigma (hyperbolic noncharacteristicity)
    if (std::abs(a11) < 1e-14)
        throw SingularCoefficient("GasEvansSystem: hyperbolic noncharacteristicity fails at x");
    // b^{-1} with b = (1/tau) [[mu, 0], [mu v, kappa]]
    double binv[2][2] = {{tau / mu, 0.0}, {-tau * v / kappa, tau / kappa}};

    // blocks (I = {tau}, II = {v, T})
    double A1_12[2] = {A1[0][1], A1[0][2]};
    double A1_21[2] = {A1[1][0], A1[2][0]};
    double A1_22[2][2] = {{A1[1][1], A1[1][2]}, {A1[2][1], A1[2][2]}};
    double A0_21[2] = {A0[1][0], A0[2][0]};
    double A0_22[2][2] = {{A0[1][1], A0[1][2]}, {A0[2][1], A0[2][2]}};

    // Z = (W_tau, W_v, W_T, V_v, V_T)
    Mat m(5, 5);
    // row 0: W_I' = -lambda A0_11 / a11 * W_I + (A0_12 - A0_11 A1_12 / a11) V_II
    m(0, 0) = -lambda / a11;
    m(0, 3) = -A1_12[0] / a11;
    m(0, 4) = -A1_12[1] / a11;
    // rows 1-2: W_II' = -lambda A0_21 / a11 * W_I + (A0_22 - A0_21 A1_12 / a11) V_II
    for (int i = 0; i < 2; ++i) {
        m(1 + i, 0) = -lambda * A0_21[i] / a11;
        for (int j = 0; j < 2; ++j)
            m(1 + i, 3 + j) = A0_22[i][j] - A0_21[i] * A1_12[j] / a11;
    }
    // rows 3-4: V_II' = -lambda b^-1 A1_21 / a11 * W_I + lambda b^-1 W_II
    //                  + b^-1 (A1_22 - A1_21 A1_12 / a11) V_II
    double G[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) G[i][j] = A1_22[i][j] - A1_21[i] * A1_12[j] / a11;
    for (int i = 0; i < 2; ++i) {
        double bi0 = binv[i][0], bi1 = binv[i][1];
        m(3 + i, 0) = -lambda * (bi0 * A1_21[0] + bi1 * A1_21[1]) / a11;
        m(3 + i, 1) = lambda * bi0;
        m(3 + i, 2) = lambda * bi1;
        for (int j = 0; j < 2; ++j) m(3 + i, 3 + j) = bi0 * G[0][j] + bi1 * G[1][j];
    }
    return m;
}

DesignerEvansSystem::DesignerEvansSystem(double gamma, double M) : gamma_(gamma), M_(M) {
    if (!(gamma > 0.0)) throw DomainError("DesignerEvansSystem: gamma must be positive");
    // |vbar(±L) - (∓gamma)| = gamma (1 - tanh(gamma L / 2)) ≈ 2 gamma e^{-gamma L} <= 1e-8
    L_ = std::log(2.0 * gamma / 1e-8) / gamma;
}

double DesignerEvansSystem::vbar(double x) const { return -gamma_ * std::tanh(gamma_ * x / 2.0); }

double DesignerEvansSystem::dvbar(double x) const {
    double c = std::cosh(gamma_ * x / 2.0);
    return -gamma_ * gamma_ / (2.0 * c * c);
}

Mat DesignerEvansSystem::rotation_block(double theta) {
    Mat a(2, 2);
    a(0, 0) = std::cos(2.0 * theta);
    a(0, 1) = std::sin(2.0 * theta);
    a(1, 0) = std::sin(2.0 * theta);
    a(1, 1) = -std::cos(2.0 * theta);
    return a;
}

namespace {
Mat designer_matrix(const Mat& a_block, Complex lambda) {
    Mat m(4, 4);
    m(0, 2) = 1.0;
    m(1, 3) = 1.0;
    m(2, 0) = lambda;
    m(3, 1) = lambda;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(2 + i, 2 + j) = a_block(i, j);
    return m;
}
}  // namespace

Mat DesignerEvansSystem::coeff(double x, Complex lambda) const {
    return designer_matrix(rotation_block(M_ * kPi * vbar(x)), lambda);
}

Mat DesignerEvansSystem::limit_matrix(int side, Complex lambda) const {
    double v = (side < 0) ? gamma_ : -gamma_;
    return designer_matrix(rotation_block(M_ * kPi * v), lambda);
}

Mat DesignerRotatedSystem::coeff(double x, Complex lambda) const {
    Mat am(2, 2);
    am(0, 0) = 1.0;
    am(1, 1) = -1.0;
    Mat m = designer_matrix(am, lambda);
    double w = base_.M() * kPi * base_.dvbar(x);
    // - M pi vbar'(x) * diag(J, J), J = [[0, -1], [1, 0]]
    m(0, 1) += w;
    m(1, 0) -= w;
    m(2, 3) += w;
    m(3, 2) -= w;
    return m;
}

Mat DesignerRotatedSystem::limit_matrix(int side, Complex lambda) const {
    (void)side;
    Mat am(2, 2);
    am(0, 0) = 1.0;
    am(1, 1) = -1.0;
    return designer_matrix(am, lambda);
}

}  // namespace shocklab
