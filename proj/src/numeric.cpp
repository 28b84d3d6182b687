#include "starharm/numeric.hpp"

#include <algorithm>

namespace starharm {

TailAssessment assess_tail(std::span<const double> increments, double negligible,
                           double convergent_ratio)
{
    TailAssessment out;
    if (increments.empty())
        return out;
    for (double d : increments) {
        if (!std::isfinite(d)) {
            out.divergent = true;
            out.tail_estimate = kInf;
            return out;
        }
    }
    const double last = std::abs(increments.back());
    if (last <= negligible)
        return out;

    // Ratio test over the final few shells.
    constexpr std::size_t kWindow = 6;
    const std::size_t n = increments.size();
    const std::size_t first = n > kWindow ? n - kWindow : 0;
    double worst = 0.0;
    for (std::size_t j = first + 1; j < n; ++j) {
        const double prev = std::abs(increments[j - 1]);
        const double cur = std::abs(increments[j]);
        if (prev <= negligible)
            continue;
        worst = std::max(worst, cur / prev);
    }
    if (n < 2 || worst >= convergent_ratio) {
        out.divergent = true;
        out.tail_estimate = kInf;
        return out;
    }
    out.tail_estimate = increments.back() * worst / (1.0 - worst);
    return out;
}

}  // namespace starharm
