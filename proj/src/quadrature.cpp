#include "starharm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "starharm/error.hpp"
#include "starharm/numeric.hpp"

namespace starharm::quad {

namespace {

GaussLegendreRule make_rule(int n)
{
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

double panel(const Integrand& f, double a, double b, const GaussLegendreRule& rule)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

void refine(const Integrand& f, double a, double b, double whole, double tol, int depth,
            const AdaptiveOptions& opt, const GaussLegendreRule& rule, KahanSum& acc,
            long& budget)
{
    --budget;
    const double m = 0.5 * (a + b);
    const double left = panel(f, a, m, rule);
    const double right = panel(f, m, b, rule);
    const double halves = left + right;
    const double err = std::abs(halves - whole);
    // Infinite or NaN panels cannot be refined into something finite.
    if (!std::isfinite(halves)) {
        acc += halves;
        return;
    }
    // The budget stops roundoff noise, which never meets a halving
    // tolerance, from refining a whole region down to max_depth.
    if (err <= std::max(tol, opt.rel_tol * std::abs(halves)) || depth >= opt.max_depth ||
        budget <= 0 || m <= a || m >= b) {
        acc += halves;
        return;
    }
    refine(f, a, m, left, 0.5 * tol, depth + 1, opt, rule, acc, budget);
    refine(f, m, b, right, 0.5 * tol, depth + 1, opt, rule, acc, budget);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n)
{
    if (n < 1)
        throw RangeError("Gauss-Legendre order must be positive");
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double fixed(const Integrand& f, double a, double b, int n)
{
    return panel(f, a, b, gauss_legendre(n));
}

double composite(const Integrand& f, double a, double b, int panels, int n)
{
    const auto& rule = gauss_legendre(n);
    const double h = (b - a) / panels;
    KahanSum acc;
    for (int i = 0; i < panels; ++i)
        acc += panel(f, a + i * h, i + 1 == panels ? b : a + (i + 1) * h, rule);
    return acc.value();
}

double adaptive(const Integrand& f, double a, double b, const AdaptiveOptions& opt)
{
    if (a == b)
        return 0.0;
    const auto& rule = gauss_legendre(opt.order);
    KahanSum acc;
    long budget = opt.max_panels;
    refine(f, a, b, panel(f, a, b, rule), opt.abs_tol, 0, opt, rule, acc, budget);
    return acc.value();
}

double adaptive(const Integrand& f, double a, double b, std::span<const double> breaks,
                const AdaptiveOptions& opt)
{
    if (a == b)
        return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    std::vector<double> pts{lo};
    for (double x : breaks)
        if (x > lo && x < hi)
            pts.push_back(x);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    AdaptiveOptions sub = opt;
    sub.abs_tol = opt.abs_tol / static_cast<double>(pts.size() - 1);
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        acc += adaptive(f, pts[i], pts[i + 1], sub);
    return sign * acc.value();
}

}  // namespace starharm::quad
