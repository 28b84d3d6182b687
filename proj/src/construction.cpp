#include "starharm/construction.hpp"

#include <algorithm>
#include <cmath>

#include "starharm/error.hpp"
#include "starharm/potentials.hpp"

namespace starharm {

namespace {

// exp(-u(e^{2 pi i nu(theta_j)})) at the given angles.
std::vector<double> radii_at(const SegmentMeasure& nu, const InverseProfile& mu,
                             const std::vector<double>& theta, int workers)
{
    std::vector<double> psi(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j)
        psi[j] = kTwoPi * nu.cdf(theta[j]);
    auto u = circle_potential_on_circle(mu, psi, workers);
    for (auto& v : u)
        v = std::exp(-v);
    return u;
}

std::vector<DomainSample> assemble(const std::vector<double>& r)
{
    const std::size_t m = r.size();
    std::vector<DomainSample> s(m + 1);
    for (std::size_t j = 0; j < m; ++j)
        s[j] = {kTwoPi * static_cast<double>(j) / static_cast<double>(m), r[j]};
    s[m] = {kTwoPi, r[0]};
    return s;
}

}  // namespace

BuildResult build_domain(const SegmentMeasure& nu, const BuildOptions& opt)
{
    if (nu.a() != 0.0 || std::abs(nu.b() - kTwoPi) > 1e-12)
        throw InvalidMeasure("domain construction needs a measure on [0, 2*pi]");
    if (opt.samples < 16)
        throw RangeError("domain needs at least 16 samples");

    auto membership = test_class_a(nu, opt.class_options);
    if (membership.verdict != Membership::InClass && !opt.force)
        throw ClassMembershipError("measure classified as '" + to_string(membership.verdict) +
                                   "'; pass force to build anyway");

    const auto mu = inverse_distribution(nu);
    std::size_t m = static_cast<std::size_t>(opt.samples);
    std::vector<double> theta(m);
    for (std::size_t j = 0; j < m; ++j)
        theta[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
    auto r = radii_at(nu, mu, theta, opt.workers);

    double change = 0.0;
    bool converged = !opt.refine;
    while (opt.refine && 2 * m <= static_cast<std::size_t>(opt.max_samples)) {
        // New samples at the midpoints, compared against the current polyline.
        std::vector<double> mids(m);
        for (std::size_t j = 0; j < m; ++j)
            mids[j] = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(m);
        const auto rm = radii_at(nu, mu, mids, opt.workers);
        change = 0.0;
        std::vector<double> finer(2 * m);
        for (std::size_t j = 0; j < m; ++j) {
            const double interp = 0.5 * (r[j] + r[(j + 1) % m]);
            change = std::max(change, std::abs(rm[j] - interp));
            finer[2 * j] = r[j];
            finer[2 * j + 1] = rm[j];
        }
        r = std::move(finer);
        m *= 2;
        if (change < opt.refine_tol) {
            converged = true;
            break;
        }
    }

    return BuildResult{StarShapedDomain(assemble(r)), std::move(membership), static_cast<int>(m),
                       change, converged};
}

BoundaryPoint boundary_correspondence(const InverseProfile& mu, double psi)
{
    const double u = circle_log_potential(mu, std::polar(1.0, psi));
    return {mu(psi / kTwoPi), std::exp(-u)};
}

BoundaryPoint boundary_correspondence(const SegmentMeasure& nu, double psi)
{
    return boundary_correspondence(inverse_distribution(nu), psi);
}

}  // namespace starharm
