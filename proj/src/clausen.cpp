#include "starharm/clausen.hpp"

#include <array>
#include <cmath>

#include "starharm/numeric.hpp"

namespace starharm {

namespace {

constexpr int kTerms = 40;

// c_k = 2 zeta(2k) / (2k (2k+1)), multiplying theta * (theta / 2pi)^{2k}.
const std::array<double, kTerms + 1>& coefficients()
{
    static const std::array<double, kTerms + 1> table = [] {
        std::array<double, kTerms + 1> c{};
        for (int k = 1; k <= kTerms; ++k) {
            const double z = std::riemann_zeta(2.0 * k);
            c[k] = 2.0 * z / (2.0 * k * (2.0 * k + 1.0));
        }
        return c;
    }();
    return table;
}

}  // namespace

double clausen2(double x)
{
    double t = x - kTwoPi * std::nearbyint(x / kTwoPi);
    if (t == 0.0)
        return 0.0;
    const auto& c = coefficients();
    const double q = (t / kTwoPi) * (t / kTwoPi);
    // Summed from the smallest term up; |t| <= pi keeps q <= 1/4.
    double p = 1.0;
    std::array<double, kTerms + 1> terms{};
    int used = 0;
    for (int k = 1; k <= kTerms; ++k) {
        p *= q;
        terms[k] = c[k] * p;
        used = k;
        if (terms[k] < 1e-18)
            break;
    }
    double s = 0.0;
    for (int k = used; k >= 1; --k)
        s += terms[k];
    return t - t * std::log(std::abs(t)) + t * s;
}

}  // namespace starharm
