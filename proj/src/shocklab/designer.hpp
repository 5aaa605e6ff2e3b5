#pragma once

#include "lopatinski.hpp"
#include "moments.hpp"

namespace shocklab {

// |lambda| bound for unstable eigenvalues of the designer class:
// 4 C^2 with C = max |a_ij| along the profile (= 1 for the rotating model).
double spectral_bound(double amax);

// Transversality coefficient of the rotating model: Wronskian at x = 0 of the
// u' = A(vbar) u modes launched from the Sec. 7.2.1 vectors r-, r+ with
// asymptotic growth rates factored out, normalized so nu / (-2 gamma) -> 1 as
// gamma -> 0+.
struct NuResult {
    double nu;      // normalized
    double nu_u;    // nu / (-2 gamma), the decoupled u-component coefficient
    double raw;     // plain Wronskian before normalization
};
NuResult transversality_nu(double gamma, double M);

// Dtilde(0) with the Sec. 7.2.1 bases: the u-system Wronskian at x = 0
// (asymptotic rates factored) times the decoupled Burgers-block factor
// 4 gamma^2, so D(0) = -nu delta / 4 holds exactly in this normalization.
double designer_d0(double gamma, double M);

struct LowFreqCheck {
    double d0, nu, delta;
    double relative_error;  // |d0 + nu*delta/4| / max(|d0|, |nu delta|/4)
};
LowFreqCheck designer_lowfreq(double gamma, double M);

// ---- root tracking along parameter paths ----

enum class TrackParam { Gamma, M, GammaWithFixedMGamma };

struct TrackEvent {
    enum class Kind { OriginCrossing, CollisionSplit, Hopf, Rejoin };
    Kind kind;
    double param;         // refined location (midpoint of the final bracket)
    double bracket_lo, bracket_hi;
    std::string note;
    static const char* kind_name(Kind k);
};

struct TrackStep {
    double param;
    double gamma, M;
    std::vector<RootEstimate> roots;
};

struct RootTrajectory {
    TrackParam varying;
    double fixed_value;
    std::vector<TrackStep> steps;
    std::vector<TrackEvent> events;
};

struct TrackOptions {
    double radius = 4.0;        // contour radius (Lemma bound)
    double imag_tol = 1e-4;     // conjugate-pair threshold
    double event_refine = 1e-3; // bisection width for event parameters
    int workers = 1;
    MomentOptions moments;
};

RootTrajectory track_roots(TrackParam varying, double fixed_value,
                           const std::vector<double>& params, const TrackOptions& opt);

// ---- (gamma, M gamma) region scan ----

struct ScanCell {
    double gamma, mgamma;
    int count = -1;            // unstable-root count (winding), -1 on failure
    bool jump2 = false;        // neighbor differs by exactly 2 (Hopf candidate)
    bool near_delta_zero = false;  // inviscid root nearby: origin crossing suspected
    std::string error;
};

struct ScanOptions {
    double radius = 4.0;
    int workers = 1;
    WindingOptions winding;
};

std::vector<ScanCell> region_scan(double gamma_lo, double gamma_hi, int n_gamma, double mg_lo,
                                  double mg_hi, int n_mg, const ScanOptions& opt);

}  // namespace shocklab
