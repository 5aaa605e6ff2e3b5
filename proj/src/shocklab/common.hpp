#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace shocklab {

using Complex = std::complex<double>;

// Error taxonomy used across modules.  All derive from Error so the CLI can
// map numerical failures to a single exit code.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct DomainError : Error { using Error::Error; };
struct NonHyperbolic : Error { using Error::Error; };
struct InversionFailure : Error { using Error::Error; };
struct BracketFailure : Error { using Error::Error; };
struct NoSignChange : Error { using Error::Error; };
struct DegenerateShock : Error { using Error::Error; };
struct SingularCoefficient : Error { using Error::Error; };
struct NoConnection : Error { using Error::Error; };
struct StiffnessFailure : Error { using Error::Error; };
struct StepSizeUnderflow : Error { using Error::Error; };
struct MaxStepsExceeded : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct DegenerateFit : Error { using Error::Error; };
struct SplittingFailure : Error { using Error::Error; };
struct FrameDegeneracy : Error { using Error::Error; };
struct RefinementBudgetExceeded : Error { using Error::Error; };
struct IllConditionedMoments : Error { using Error::Error; };
struct TrackingLoss : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

constexpr double kPi = 3.141592653589793238462643383279502884;

// Deterministic PRNG (splitmix64).  std:: distributions are not
// reproducible across standard libraries, so uniforms are derived directly
// from the integer stream.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0,1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

  private:
    std::uint64_t state_;
};

inline double sqr(double x) { return x * x; }

// Value of an analytic function stored as log magnitude + phase, so that
// quantities far outside double range (high-frequency Evans values) stay
// representable.
struct LogComplex {
    double log_abs = 0.0;  // log(|z|); -inf encodes z == 0
    double arg = 0.0;      // principal argument of z

    static LogComplex from(Complex z) {
        LogComplex r;
        r.log_abs = std::log(std::abs(z));
        r.arg = std::arg(z);
        return r;
    }
    Complex value() const { return std::exp(log_abs) * Complex(std::cos(arg), std::sin(arg)); }
    Complex clog() const { return Complex(log_abs, arg); }
    LogComplex operator*(const LogComplex& o) const {
        LogComplex r;
        r.log_abs = log_abs + o.log_abs;
        r.arg = std::remainder(arg + o.arg, 2.0 * kPi);
        return r;
    }
    LogComplex scaled(Complex w) const {  // multiply by an ordinary complex number
        return *this * from(w);
    }
};

// |z1/z0 - 1| computed from log representations, overflow-safe.
inline double relative_change(const LogComplex& a, const LogComplex& b) {
    double dl = b.log_abs - a.log_abs;
    if (dl > 700.0) return std::numeric_limits<double>::infinity();
    Complex ratio = std::exp(Complex(dl, std::remainder(b.arg - a.arg, 2.0 * kPi)));
    return std::abs(ratio - 1.0);
}

}  // namespace shocklab
