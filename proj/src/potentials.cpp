#include "starharm/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "starharm/clausen.hpp"
#include "starharm/error.hpp"
#include "starharm/parallel.hpp"
#include "starharm/quadrature.hpp"

namespace starharm {

namespace {

// Antiderivative of log|s - x| in s, continuous through s = x.
double log_antiderivative(double s, double x)
{
    const double d = s - x;
    return d == 0.0 ? -s : d * std::log(std::abs(d)) - s;
}

// Mean of log|2 sin(x/2)| over [x0, x1]. The Clausen difference quotient
// loses digits on intervals that are short next to their distance from the
// singularity, so those use a 4-point Gauss rule instead. cl0 and cl1 cache
// Cl2 at the endpoints across neighbouring calls; NaN means not yet computed.
double mean_log_chord(double x0, double x1, double& cl0, double& cl1)
{
    const double w = x1 - x0;
    const double mid = 0.5 * (x0 + x1);
    const double k = std::round(mid / kTwoPi);
    const double dist = std::max(0.0, std::min(std::abs(x0 - k * kTwoPi), std::abs(x1 - k * kTwoPi)));
    const bool straddles = (x0 - k * kTwoPi) * (x1 - k * kTwoPi) <= 0.0;
    if (w == 0.0)
        return std::log(std::abs(2.0 * std::sin(0.5 * mid)));
    if (!straddles && w < 1e-3 * dist) {
        static constexpr double xg[2] = {0.33998104358485626, 0.86113631159405258};
        static constexpr double wg[2] = {0.65214515486254614, 0.34785484513745386};
        double acc = 0.0;
        for (int j = 0; j < 2; ++j)
            for (double sgn : {-1.0, 1.0})
                acc += wg[j] * std::log(std::abs(2.0 * std::sin(0.5 * (mid + sgn * 0.5 * w * xg[j]))));
        return 0.5 * acc;
    }
    if (std::isnan(cl0))
        cl0 = clausen2(x0);
    cl1 = clausen2(x1);
    return -(cl1 - cl0) / w;
}

double on_circle(const InverseProfile& mu, double psi)
{
    // u = (1 / pi) sum_i (t_{i+1} - t_i) * mean of log|2 sin((theta - psi) / 2)|
    // over theta in [2 pi s_i, 2 pi s_{i+1}]. Weighting by t-increments keeps
    // every term bounded even where the slopes of mu are huge.
    const auto nodes = mu.nodes();
    KahanSum s;
    constexpr double unset = std::numeric_limits<double>::quiet_NaN();
    double c0 = kTwoPi * nodes[0].s - psi;
    double cl0 = unset;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double c1 = kTwoPi * nodes[i + 1].s - psi;
        double cl1 = unset;
        s += (nodes[i + 1].t - nodes[i].t) * mean_log_chord(c0, c1, cl0, cl1);
        c0 = c1;
        cl0 = cl1;
    }
    return s.value() / kPi;
}

}  // namespace

double segment_log_potential(const InverseProfile& mu, double x)
{
    if (!std::isfinite(x))
        throw RangeError("potential argument must be finite");
    const auto nodes = mu.nodes();
    const auto g = mu.slopes();
    KahanSum sum;
    for (std::size_t i = 0; i < g.size(); ++i)
        sum += g[i] * (log_antiderivative(nodes[i + 1].s, x) - log_antiderivative(nodes[i].s, x));
    return sum.value();
}

double circle_log_potential_quadrature(const InverseProfile& mu, std::complex<double> z)
{
    const double x = z.real();
    const double y = z.imag();
    const double rho = std::abs(z);
    double phi = std::arg(z);
    if (phi < 0.0)
        phi += kTwoPi;
    const bool on_unit_circle = std::abs(rho - 1.0) <= 1e-14;
    const quad::Integrand kernel = [&](double theta) {
        if (on_unit_circle) {
            const double c = std::abs(2.0 * std::sin(0.5 * (theta - phi)));
            return c > 0.0 ? std::log(c) : 0.0;  // a single point carries no mass
        }
        const double dx = std::cos(theta) - x;
        const double dy = std::sin(theta) - y;
        return 0.5 * std::log(dx * dx + dy * dy);
    };
    quad::AdaptiveOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-14;
    opt.max_depth = 40;
    const double breaks[] = {phi};
    const auto nodes = mu.nodes();
    const auto g = mu.slopes();
    KahanSum sum;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double t0 = kTwoPi * nodes[i].s;
        const double t1 = kTwoPi * nodes[i + 1].s;
        sum += g[i] / kTwoPi * quad::adaptive(kernel, t0, t1, breaks, opt);
    }
    return sum.value() / kPi;
}

double circle_log_potential(const InverseProfile& mu, std::complex<double> z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw RangeError("potential argument must be finite");
    if (std::abs(std::abs(z) - 1.0) <= 1e-14)
        return on_circle(mu, std::arg(z));
    return circle_log_potential_quadrature(mu, z);
}

std::vector<double> circle_potential_on_circle(const InverseProfile& mu,
                                               const std::vector<double>& angles, int workers)
{
    std::vector<double> out(angles.size());
    parallel_blocks(angles.size(), workers, [&](std::size_t lo, std::size_t hi, int) {
        for (std::size_t i = lo; i < hi; ++i)
            out[i] = on_circle(mu, angles[i]);
    });
    return out;
}

ContinuityReport potential_continuity_probe(const InverseProfile& mu, int grid_size, int workers)
{
    if (grid_size < 16)
        throw RangeError("continuity probe needs grid_size >= 16");
    ContinuityReport rep;
    rep.grid_size = grid_size;
    const std::size_t fine = 2 * static_cast<std::size_t>(grid_size);
    std::vector<double> psi(fine);
    for (std::size_t j = 0; j < fine; ++j)
        psi[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(fine);
    const auto u = circle_potential_on_circle(mu, psi, workers);

    for (std::size_t step = fine / 2, k = 1; step >= 1; step /= 2, ++k) {
        rep.scales.push_back(kTwoPi * static_cast<double>(step) / static_cast<double>(fine));
        double osc = 0.0;
        for (std::size_t j = 0; j < fine; ++j)
            osc = std::max(osc, std::abs(u[(j + step) % fine] - u[j]));
        double osc0 = 0.0;
        for (std::size_t j = 0; j <= step; ++j) {
            osc0 = std::max(osc0, std::abs(u[j] - u[0]));
            osc0 = std::max(osc0, std::abs(u[(fine - j) % fine] - u[0]));
        }
        rep.oscillation.push_back(osc);
        rep.oscillation_at0.push_back(osc0);
        if (step == 1)
            break;
    }
    const double first = rep.oscillation.front();
    const double last = rep.oscillation.back();
    bool monotone = true;
    for (std::size_t i = 1; i < rep.oscillation.size(); ++i)
        monotone = monotone && rep.oscillation[i] <= rep.oscillation[i - 1] * (1.0 + 1e-9) + 1e-12;
    rep.shrinking = first < 1e-12 || (monotone && last < 0.1 * first);
    return rep;
}

}  // namespace starharm
