#pragma once

#include <memory>

#include "linalg.hpp"
#include "profile.hpp"

namespace shocklab {

// First-order integrated Evans system Z' = A_int(x, lambda) Z on the
// truncated domain [-L_minus, L_plus].
class EvansSystem {
  public:
    virtual ~EvansSystem() = default;
    virtual int dim() const = 0;
    virtual int unstable_dim_minus() const = 0;  // frame size carried from -inf
    virtual int stable_dim_plus() const = 0;     // frame size carried from +inf
    virtual Mat coeff(double x, Complex lambda) const = 0;
    virtual Mat limit_matrix(int side, Complex lambda) const = 0;  // side: -1 / +1
    virtual double L_minus() const = 0;
    virtual double L_plus() const = 0;
    virtual bool stiff() const = 0;
};

// Gas dynamics in w = (tau, v, T) with the Helmholtz-view laws
// p = pcheck(tau, T), e = echeck(tau, T): n = 3 conserved quantities, r = 2
// parabolic ones, so Z = (W, V_parab) is 5-dimensional.  The unstable frame
// at -inf is 2-dimensional, the stable frame at +inf 3-dimensional.
class GasEvansSystem : public EvansSystem {
  public:
    GasEvansSystem(std::shared_ptr<const ViscousProfile> profile);
    int dim() const override { return 5; }
    int unstable_dim_minus() const override { return 2; }
    int stable_dim_plus() const override { return 3; }
    Mat coeff(double x, Complex lambda) const override;
    Mat limit_matrix(int side, Complex lambda) const override;
    double L_minus() const override { return profile_->L_minus; }
    double L_plus() const override { return profile_->L_plus; }
    bool stiff() const override { return true; }

    const ViscousProfile& profile() const { return *profile_; }

  private:
    Mat assemble(double tau, double S, double dtau, double dS, Complex lambda) const;
    std::shared_ptr<const ViscousProfile> profile_;
};

// Designer (rotating-model) u-system: W' = [[0, I], [lambda I, A(vbar(x))]] W,
// with A(v) = R_theta A_m R_-theta, theta = M pi v, vbar = -gamma tanh(gamma x / 2).
class DesignerEvansSystem : public EvansSystem {
  public:
    DesignerEvansSystem(double gamma, double M);
    int dim() const override { return 4; }
    int unstable_dim_minus() const override { return 2; }
    int stable_dim_plus() const override { return 2; }
    Mat coeff(double x, Complex lambda) const override;
    Mat limit_matrix(int side, Complex lambda) const override;
    double L_minus() const override { return L_; }
    double L_plus() const override { return L_; }
    bool stiff() const override { return false; }

    double gamma() const { return gamma_; }
    double M() const { return M_; }
    double vbar(double x) const;
    double dvbar(double x) const;
    static Mat rotation_block(double theta);  // A(v) entries from 2 theta

  private:
    double gamma_, M_, L_;
};

// Rotated form of the designer system (solutions map under W = T Y with
// T = diag(R_theta, R_theta)): Y' = ([[0,I],[lambda I, A_m]] - M pi vbar'(x) diag(J, J)) Y.
class DesignerRotatedSystem : public EvansSystem {
  public:
    DesignerRotatedSystem(double gamma, double M) : base_(gamma, M) {}
    int dim() const override { return 4; }
    int unstable_dim_minus() const override { return 2; }
    int stable_dim_plus() const override { return 2; }
    Mat coeff(double x, Complex lambda) const override;
    Mat limit_matrix(int side, Complex lambda) const override;
    double L_minus() const override { return base_.L_minus(); }
    double L_plus() const override { return base_.L_plus(); }
    bool stiff() const override { return false; }
    const DesignerEvansSystem& base() const { return base_; }

  private:
    DesignerEvansSystem base_;
};

}  // namespace shocklab
