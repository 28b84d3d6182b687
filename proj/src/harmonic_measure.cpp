#include "starharm/harmonic_measure.hpp"

#include <algorithm>
#include <cmath>

#include "starharm/error.hpp"
#include "starharm/numeric.hpp"
#include "starharm/parallel.hpp"
#include "starharm/rng.hpp"

namespace starharm {

void WalkConfig::validate() const
{
    if (walks < 1)
        throw RangeError("walk count must be at least 1");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw RangeError("absorption shell eps must be positive");
    if (bins < 8)
        throw RangeError("bin count must be at least 8");
    if (workers < 1)
        throw RangeError("worker count must be at least 1");
    if (max_steps < 1)
        throw RangeError("step cap must be at least 1");
}

double AngularDistribution::cdf_at_edge(int k) const
{
    KahanSum s;
    for (int j = 0; j < k; ++j)
        s += masses[j];
    return s.value();
}

AngularDistribution AngularDistribution::from_counts(std::vector<std::uint64_t> counts,
                                                     std::uint64_t walks)
{
    if (counts.empty() || walks == 0)
        throw InvalidInput("angular distribution needs at least one bin and one walk");
    std::uint64_t total = 0;
    for (auto c : counts)
        total += c;
    if (total != walks)
        throw InvalidInput("bin counts must sum to the walk count");
    AngularDistribution d;
    const int bins = static_cast<int>(counts.size());
    const double n = static_cast<double>(walks);
    for (int k = 0; k <= bins; ++k)
        d.edges.push_back(kTwoPi * k / bins);
    d.edges.back() = kTwoPi;
    for (auto c : counts) {
        const double p = static_cast<double>(c) / n;
        d.masses.push_back(p);
        d.stderr_.push_back(std::sqrt(p * (1.0 - p) / n));
    }
    d.counts = std::move(counts);
    d.walks = walks;
    return d;
}

AngularDistribution wos_project(const StarShapedDomain& omega, std::complex<double> z,
                                const WalkConfig& cfg)
{
    cfg.validate();
    const double eps = cfg.eps * omega.max_radius();
    if (!(omega.distance(z) > eps))
        throw GeometryError("walk start point is outside the domain or within eps of its boundary");

    const int bins = cfg.bins;
    const auto workers = static_cast<std::size_t>(cfg.workers);
    std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(bins, 0));
    std::vector<std::uint64_t> caps(workers, 0);
    std::vector<std::uint64_t> steps(workers, 0);

    parallel_blocks(cfg.walks, cfg.workers, [&](std::size_t lo, std::size_t hi, int w) {
        auto& local = counts[w];
        for (std::size_t i = lo; i < hi; ++i) {
            Philox4x32 rng(cfg.seed, i);
            std::complex<double> x = z;
            std::uint64_t n = 0;
            for (;;) {
                const auto near = omega.nearest(x);
                if (near.distance < eps || n == cfg.max_steps) {
                    if (near.distance >= eps)
                        ++caps[w];
                    double angle = std::arg(near.point);
                    if (angle < 0.0)
                        angle += kTwoPi;
                    auto k = static_cast<int>(angle / kTwoPi * bins);
                    ++local[std::clamp(k, 0, bins - 1)];
                    break;
                }
                const double a = kTwoPi * rng.uniform();
                x += near.distance * std::complex<double>(std::cos(a), std::sin(a));
                ++n;
            }
            steps[w] += n;
        }
    });

    std::vector<std::uint64_t> total(bins, 0);
    for (const auto& local : counts)
        for (int k = 0; k < bins; ++k)
            total[k] += local[k];
    auto d = AngularDistribution::from_counts(std::move(total), cfg.walks);
    d.seed = cfg.seed;
    d.eps_abs = eps;
    d.start = z;
    for (std::size_t w = 0; w < workers; ++w) {
        d.cap_hits += caps[w];
        d.total_steps += steps[w];
    }
    return d;
}

double disk_harmonic_measure(std::complex<double> z, double alpha, double beta)
{
    const double rho = std::abs(z);
    if (!(rho < 1.0))
        throw RangeError("disk harmonic measure needs |z| < 1");
    const double span = beta - alpha;
    if (!(span >= 0.0) || span > kTwoPi * (1.0 + 1e-15))
        throw RangeError("arc must satisfy 0 <= beta - alpha <= 2*pi");
    if (span >= kTwoPi)
        return 1.0;
    if (span == 0.0)
        return 0.0;
    // Antiderivative of the Poisson kernel, continuous on (-2 pi, 2 pi].
    auto primitive = [rho](double x) {
        return 2.0 * std::atan2((1.0 + rho) * std::sin(0.5 * x), (1.0 - rho) * std::cos(0.5 * x));
    };
    const double phi = rho == 0.0 ? 0.0 : std::arg(z);
    double xa = std::fmod(alpha - phi, kTwoPi);
    if (xa > 0.0)
        xa -= kTwoPi;
    const double xb = xa + span;
    return std::clamp((primitive(xb) - primitive(xa)) / kTwoPi, 0.0, 1.0);
}

std::vector<double> disk_bin_masses(std::complex<double> z, int bins)
{
    std::vector<double> out(bins);
    for (int k = 0; k < bins; ++k)
        out[k] = disk_harmonic_measure(z, kTwoPi * k / bins, kTwoPi * (k + 1) / bins);
    return out;
}

double ks_distance(const AngularDistribution& d, const SegmentMeasure& nu)
{
    if (nu.a() != 0.0 || std::abs(nu.b() - kTwoPi) > 1e-12)
        throw InvalidInput("KS distance needs a measure on [0, 2*pi]");
    double worst = 0.0;
    KahanSum cum;
    for (int k = 0; k <= d.bins(); ++k) {
        worst = std::max(worst, std::abs(cum.value() - nu.cdf(d.edges[k])));
        if (k < d.bins())
            cum += d.masses[k];
    }
    return worst;
}

BoundConstantReport bound_constant(const StarShapedDomain& omega, const Disk& k,
                                   const SegmentMeasure& nu, const WalkConfig& cfg,
                                   const BoundOptions& opt)
{
    cfg.validate();
    if (nu.a() != 0.0 || std::abs(nu.b() - kTwoPi) > 1e-12)
        throw InvalidInput("bound constant needs a measure on [0, 2*pi]");
    if (!(k.radius >= 0.0) || opt.points < 1)
        throw RangeError("compact disk needs radius >= 0 and at least one sample point");
    const double eps = cfg.eps * omega.max_radius();
    if (!(omega.distance(k.center) > k.radius + eps))
        throw GeometryError("compact disk K is not contained in the domain");

    BoundConstantReport rep;
    rep.walks_per_point = cfg.walks;
    if (k.radius == 0.0) {
        rep.points.push_back(k.center);
    } else {
        // Offsets aligned with bin centres.
        const double offset = kPi / cfg.bins;
        for (int p = 0; p < opt.points; ++p)
            rep.points.push_back(k.center + std::polar(k.radius, kTwoPi * p / opt.points + offset));
    }

    std::vector<double> nu_mass(cfg.bins);
    for (int j = 0; j < cfg.bins; ++j) {
        nu_mass[j] = nu.mass(kTwoPi * j / cfg.bins, kTwoPi * (j + 1) / cfg.bins);
        if (nu_mass[j] < opt.mass_floor)
            rep.excluded_bins.push_back(j);
    }

    for (const auto& z : rep.points) {
        const auto d = wos_project(omega, z, cfg);
        double point_max = 0.0;
        for (int j = 0; j < cfg.bins; ++j) {
            if (nu_mass[j] < opt.mass_floor)
                continue;
            const double ratio = d.masses[j] / nu_mass[j];
            point_max = std::max(point_max, ratio);
            if (ratio > rep.constant) {
                rep.constant = ratio;
                rep.stderr_ = d.stderr_[j] / nu_mass[j];
                rep.argmax_point = z;
                rep.argmax_bin = j;
            }
        }
        rep.per_point_max.push_back(point_max);
    }
    return rep;
}

}  // namespace starharm
