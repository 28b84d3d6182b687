#pragma once

#include <complex>
#include <span>
#include <vector>

namespace starharm {

struct DomainSample {
    double theta;
    double r;
};

/// Strictly star-shaped domain {r e^{i theta} : r < r(theta)} with a
/// piecewise-linear radius and its boundary polyline.
///
/// Immutable after construction; queries are const and thread-safe.
class StarShapedDomain {
public:
    /// Requires theta_0 = 0, theta_M = 2 pi, strictly increasing angles,
    /// r > 0 everywhere and r_0 = r_M. Throws InvalidInput otherwise.
    explicit StarShapedDomain(std::vector<DomainSample> samples);

    /// Disk of the given radius sampled on `samples` uniform angles.
    static StarShapedDomain disk(double radius, int samples);

    [[nodiscard]] std::span<const DomainSample> samples() const noexcept { return samples_; }
    [[nodiscard]] std::size_t segment_count() const noexcept { return samples_.size() - 1; }
    [[nodiscard]] double max_radius() const noexcept { return max_r_; }
    [[nodiscard]] double min_radius() const noexcept { return min_r_; }

    /// Linear interpolation of r in theta (periodic).
    [[nodiscard]] double radius(double theta) const;

    struct Nearest {
        double distance;
        std::complex<double> point;
    };

    /// Closest point of the boundary polyline.
    [[nodiscard]] Nearest nearest(std::complex<double> z) const;

    /// Distance to the polyline, positive inside and negative outside.
    [[nodiscard]] double distance(std::complex<double> z) const;

    /// Strictly inside the polyline.
    [[nodiscard]] bool contains(std::complex<double> z) const;

    [[nodiscard]] StarShapedDomain dilated(double factor) const;

private:
    struct Bucket {
        std::complex<double> center;
        double radius;
        std::size_t first;  // segment indices [first, last)
        std::size_t last;
    };

    [[nodiscard]] std::size_t segment_at(double theta) const;
    [[nodiscard]] double scan(std::complex<double> z, const Bucket& b, double best,
                              std::complex<double>& point) const;

    std::vector<DomainSample> samples_;
    std::vector<std::complex<double>> vertices_;
    std::vector<Bucket> buckets_;
    std::size_t bucket_size_ = 1;
    bool uniform_ = false;
    double max_r_ = 0.0;
    double min_r_ = 0.0;
};

/// Signed distance from z to the boundary of the domain.
inline double domain_distance(const StarShapedDomain& omega, std::complex<double> z)
{
    return omega.distance(z);
}

}  // namespace starharm
