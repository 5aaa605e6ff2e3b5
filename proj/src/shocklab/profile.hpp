#pragma once

#include "hugoniot.hpp"
#include "ode.hpp"

namespace shocklab {

// Right side of the traveling-wave ODE in (tau, S) coordinates,
//   (tau, S)' = tau * M^-1 N^-1 F,
// with M = [[-sigma, 0], [e_tS, e_SS]], N = [[mu, 0], [mu v, kappa]] and F the
// flux mismatch relative to U_-; v is slaved to tau by v = -sigma (tau - tau_-).
struct TwodeRhs {
    double dtau, dS;
};
TwodeRhs twode_rhs(const EquationOfState& model, const ShockTriple& shock, double mu,
                   double kappa, double tau, double S);

enum class FixedPointType { Saddle, Repellor, Attractor, Other };

struct EndstateLinearization {
    double a[2][2];           // Jacobian of the rhs at the endstate
    Complex eig[2];
    double eigvec[2][2];      // column j is the (real) eigenvector of eig[j]
    bool eigs_real;
    FixedPointType type;
    double spectral_gap;      // |Re l1 - Re l2| / max(|l1|, |l2|)
};

EndstateLinearization endstate_linearization(const EquationOfState& model,
                                             const ShockTriple& shock, double mu, double kappa,
                                             int side /* -1 or +1 */);

// Viscous shock profile on a nonuniform mesh, x increasing, with the steepest
// point recentered to x = 0; cubic Hermite queries clamp to the endstates.
class ViscousProfile {
  public:
    struct Point {
        double tau, S, dtau, dS;
    };

    ViscousProfile(EquationOfState model_, ShockTriple shock_, double mu_, double kappa_)
        : model(std::move(model_)), shock(std::move(shock_)), mu(mu_), kappa(kappa_) {}

    EquationOfState model;
    ShockTriple shock;
    double mu, kappa;
    std::vector<double> x, tau, S, dtau, dS;
    double L_minus, L_plus;             // truncation domain [-L_minus, L_plus]
    double end_dist_minus, end_dist_plus;

    Point at(double xq) const;
    size_t size() const { return x.size(); }
    // max scaled residual |dP/dx - rhs(P)| at mesh midpoints
    double midpoint_residual() const;
};

// Stiff backward shooting from a 1e-8 offset along the stable eigenvector of
// the saddle U_+ until the trajectory comes within 1e-8 of the repellor U_-.
ViscousProfile shoot_profile(const EquationOfState& model, const ShockTriple& shock, double mu,
                             double kappa, int max_mesh = 4000);

constexpr double kProfileOffset = 1e-8;
constexpr double kProfileProximity = 1e-8;

}  // namespace shocklab
