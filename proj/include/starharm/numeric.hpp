#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

namespace starharm {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Compensated (Kahan-Babuska) accumulator.
class KahanSum {
public:
    KahanSum& operator+=(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// An integral value that may be tagged as divergent.
///
/// Divergence is a verdict rather than a failure, so it travels as data.
struct ExtReal {
    double value = 0.0;
    bool divergent = false;

    static ExtReal finite(double v) { return {v, false}; }
    static ExtReal infinite() { return {kInf, true}; }

    [[nodiscard]] bool is_finite() const noexcept { return !divergent; }
};

/// Outcome of watching a sequence of truncated integrals over dyadic shells.
struct TailAssessment {
    bool divergent = false;
    double tail_estimate = 0.0;  ///< geometric extrapolation of the missing shells
};

/// Decide whether shell increments I_j (ordered towards the singular end)
/// sum to a finite limit.
///
/// Geometric decay with ratio below `convergent_ratio` is accepted and
/// extrapolated; increments that stop shrinking (logarithmic or worse
/// divergence, or harmonic-type decay) are flagged. Increments at or below
/// `negligible` count as converged.
TailAssessment assess_tail(std::span<const double> increments, double negligible,
                           double convergent_ratio = 0.9);

inline double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }
inline double log_minus(double x) { return x < 1.0 ? (x > 0.0 ? -std::log(x) : kInf) : 0.0; }

}  // namespace starharm
