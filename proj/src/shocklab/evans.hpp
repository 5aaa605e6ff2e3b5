#pragma once

#include <map>

#include "evans_system.hpp"
#include "ode.hpp"

namespace shocklab {

enum class EvansMode { Polar, NoRadial };

struct EvansOptions {
    EvansMode mode = EvansMode::Polar;
    double rtol = 1e-6;
    double atol = 1e-8;
    int workers = 1;
};

// Frames spanning the unstable subspace of the -inf limit matrix and the
// stable subspace of the +inf one, plus the trace shifts (sums of the selected
// eigenvalues) used to normalize radial growth.
struct BasisSet {
    Mat minus, plus;
    Complex mu_minus, mu_plus;
};

// Fresh bases by eigendecomposition, eigenvalues classified by sign of the
// real part.  Throws SplittingFailure (reporting the gap) if the counts fail.
BasisSet init_bases(const EvansSystem& sys, Complex lambda);

// Explicit Sec. 7.2.1 bases of the designer system at lambda = 0.
BasisSet designer_lambda0_bases(double gamma, double M);

// One Evans evaluation: evolve orthonormal frames from -L_minus and +L_plus to
// x = 0 by continuous orthogonalization; Polar mode carries the complex
// radial factor (trace-shifted, in log space), NoRadial drops it.
LogComplex evans_eval(const EvansSystem& sys, Complex lambda, const BasisSet& bases,
                      const EvansOptions& opt);

// ---- contour machinery ----

struct PathPiece {
    enum class Kind { Arc, Line };
    Kind kind;
    Complex center;  // Arc
    double radius = 0.0, theta0 = 0.0, theta1 = 0.0;
    Complex a, b;  // Line
    double length() const;
    Complex at(double u) const;
    static PathPiece arc(Complex center, double radius, double theta0, double theta1);
    static PathPiece line(Complex a, Complex b);
};

struct Path {
    std::vector<PathPiece> pieces;
    double total_length() const;
    Complex at(double t) const;  // t in [0, 1]
};

class ContourEvaluator {
  public:
    virtual ~ContourEvaluator() = default;
    virtual void begin_walk() {}
    // batch evaluation; t values are walk parameters in ascending order
    virtual std::vector<LogComplex> evaluate(const std::vector<std::pair<double, Complex>>& pts) = 0;
};

class FunctionEvaluator : public ContourEvaluator {
  public:
    explicit FunctionEvaluator(std::function<Complex(Complex)> f) : f_(std::move(f)) {}
    std::vector<LogComplex> evaluate(const std::vector<std::pair<double, Complex>>& pts) override {
        std::vector<LogComplex> out;
        out.reserve(pts.size());
        for (const auto& [t, lam] : pts) out.push_back(LogComplex::from(f_(lam)));
        return out;
    }

  private:
    std::function<Complex(Complex)> f_;
};

// System-backed evaluator with Kato-transported initializing bases along the
// walk (projector continuation keeps the frames analytic in lambda).
class SystemEvaluator : public ContourEvaluator {
  public:
    SystemEvaluator(const EvansSystem& sys, EvansOptions opt);
    void begin_walk() override { cache_.clear(); }
    std::vector<LogComplex> evaluate(const std::vector<std::pair<double, Complex>>& pts) override;
    LogComplex eval_single(Complex lambda);  // fresh bases, no transport
    // Kato-transport a basis set around an explicit lambda loop (monodromy check).
    BasisSet transport_loop(const std::vector<Complex>& lambdas);

  private:
    struct CacheEntry {
        Complex lambda;
        BasisSet bases;
        Mat p_minus, p_plus;  // spectral projectors at lambda
    };
    CacheEntry& prepare(double t, Complex lambda);
    void transport(CacheEntry& e, Complex to) const;  // in place, updates projectors
    bool projector_continue(int side, Complex lambda, const Mat& p_prev, Mat* p_out) const;

    const EvansSystem& sys_;
    EvansOptions opt_;
    std::map<double, CacheEntry> cache_;
};

struct WindingOptions {
    int min_points = 40;        // over the full closed contour
    double refine = 0.2;        // relative-change threshold per step
    int max_evaluations = 40000;
    double detour_radius = 1e-4;      // semicircular detour around lambda = 0
    double detour_trigger = 1e-8;     // relative |D(0)| level that inserts it
};

struct ContourPointOut {
    Complex lambda;
    LogComplex d;
    double cum_arg;
};

struct ContourResult {
    std::vector<ContourPointOut> points;  // full closed walk
    int winding = 0;
    double arg_residual = 0.0;  // |accumulated arg - 2 pi winding|
    double max_rel_step = 0.0;
    bool rouche_ok = true;  // every step had relative variation < 1.0
    int evaluations = 0;
    bool detoured = false;
};

// Winding on the semicircle B(0,R) in {Re >= 0}: evaluates the upper half
// boundary (arc R -> iR, then segment iR -> 0) and fills the lower half by
// conjugate reflection.
ContourResult winding_semicircle(ContourEvaluator& ev, double radius, const WindingOptions& opt);

// Winding on a general closed path (no symmetry assumed).
ContourResult winding_path(ContourEvaluator& ev, const Path& path, const WindingOptions& opt);

// Gas low-frequency check: sign of Dtilde near lambda = 0 (polar mode).
int gas_lowfreq_sign(const EvansSystem& sys, const EvansOptions& opt);

}  // namespace shocklab
