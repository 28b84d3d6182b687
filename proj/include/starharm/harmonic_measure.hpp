#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "starharm/domain.hpp"
#include "starharm/measures.hpp"

namespace starharm {

struct WalkConfig {
    std::uint64_t walks = 100000;
    double eps = 1e-4;                  ///< absorption shell, relative to the maximal radius
    std::uint64_t seed = 1;
    int workers = 1;
    int bins = 64;
    std::uint64_t max_steps = 100000;  ///< per-walk cap; hits are counted, not hidden

    void validate() const;
};

/// Binned distribution of boundary-hit angles on [0, 2 pi).
struct AngularDistribution {
    std::vector<double> edges;    ///< bins + 1 uniform edges from 0 to 2 pi
    std::vector<double> masses;   ///< sum to 1
    std::vector<double> stderr_;  ///< binomial standard error per bin
    std::vector<std::uint64_t> counts;
    std::uint64_t walks = 0;
    std::uint64_t seed = 0;
    std::uint64_t cap_hits = 0;
    std::uint64_t total_steps = 0;
    double eps_abs = 0.0;
    std::complex<double> start{};

    [[nodiscard]] int bins() const noexcept { return static_cast<int>(masses.size()); }
    /// Empirical distribution function at edge k.
    [[nodiscard]] double cdf_at_edge(int k) const;

    static AngularDistribution from_counts(std::vector<std::uint64_t> counts, std::uint64_t walks);
};

/// Walk-on-spheres estimate of the radial projection of harmonic measure at z.
///
/// Each walk jumps to a uniform point on the largest inscribed circle until it
/// comes within eps of the boundary, then records the angle of the nearest
/// boundary point. Bit-identical for fixed (seed, walks, bins) regardless of
/// the worker count.
AngularDistribution wos_project(const StarShapedDomain& omega, std::complex<double> z,
                                const WalkConfig& cfg);

/// Harmonic measure of the arc (alpha, beta) of the unit circle seen from z,
/// |z| < 1, 0 <= beta - alpha <= 2 pi.
double disk_harmonic_measure(std::complex<double> z, double alpha, double beta);

/// Poisson-kernel bin masses of the unit disk at z on `bins` uniform bins.
std::vector<double> disk_bin_masses(std::complex<double> z, int bins);

/// sup over bin edges of |empirical CDF - nu|; nu must live on [0, 2 pi].
double ks_distance(const AngularDistribution& d, const SegmentMeasure& nu);

struct Disk {
    std::complex<double> center{};
    double radius = 0.0;
};

struct BoundOptions {
    int points = 8;              ///< sample points on the boundary of K
    double mass_floor = 1e-3;    ///< bins with nu-mass below this are excluded
};

struct BoundConstantReport {
    double constant = 0.0;        ///< max ratio omega(z, E_j) / nu(E_j)
    double stderr_ = 0.0;         ///< Monte Carlo standard error of the maximizing ratio
    std::complex<double> argmax_point{};
    int argmax_bin = -1;
    std::vector<std::complex<double>> points;
    std::vector<double> per_point_max;
    std::vector<int> excluded_bins;
    std::uint64_t walks_per_point = 0;
};

/// Empirical C(K) in omega(z, E, Omega) <= C(K) nu(arg E) over z on the
/// boundary of K. This is a lower estimate of the true supremum.
BoundConstantReport bound_constant(const StarShapedDomain& omega, const Disk& k,
                                   const SegmentMeasure& nu, const WalkConfig& cfg,
                                   const BoundOptions& opt = {});

}  // namespace starharm
