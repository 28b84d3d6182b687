#include "starharm/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "starharm/error.hpp"
#include "starharm/numeric.hpp"

namespace starharm {

namespace {

double cross(std::complex<double> a, std::complex<double> b)
{
    return a.real() * b.imag() - a.imag() * b.real();
}

double wrap_angle(double theta)
{
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0)
        t += kTwoPi;
    return t;
}

}  // namespace

StarShapedDomain::StarShapedDomain(std::vector<DomainSample> samples) : samples_(std::move(samples))
{
    const std::size_t n = samples_.size();
    if (n < 4)
        throw InvalidInput("a domain needs at least three boundary segments");
    if (samples_.front().theta != 0.0 || samples_.back().theta != kTwoPi) {
        // Accept a last angle that differs from 2 pi by rounding only.
        if (samples_.front().theta != 0.0 || std::abs(samples_.back().theta - kTwoPi) > 1e-12)
            throw InvalidInput("domain angles must run from 0 to 2*pi");
        samples_.back().theta = kTwoPi;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const auto& s = samples_[j];
        if (!std::isfinite(s.theta) || !std::isfinite(s.r) || !(s.r > 0.0)) {
            std::ostringstream msg;
            msg << "domain radius must be positive and finite (row " << j << ")";
            throw InvalidInput(msg.str());
        }
        if (j > 0 && !(s.theta > samples_[j - 1].theta))
            throw InvalidInput("domain angles must be strictly increasing");
    }
    if (samples_.front().r != samples_.back().r)
        throw InvalidInput("domain radius must be periodic: r(0) == r(2*pi)");

    const std::size_t m = n - 1;
    uniform_ = true;
    for (std::size_t j = 0; j < n && uniform_; ++j)
        uniform_ = std::abs(samples_[j].theta - kTwoPi * static_cast<double>(j) / m) <= 1e-12;

    vertices_.reserve(n);
    min_r_ = kInf;
    for (const auto& s : samples_) {
        vertices_.push_back(std::polar(s.r, s.theta));
        max_r_ = std::max(max_r_, s.r);
        min_r_ = std::min(min_r_, s.r);
    }
    vertices_.back() = vertices_.front();

    bucket_size_ = std::max<std::size_t>(8, static_cast<std::size_t>(std::sqrt(double(m))));
    for (std::size_t first = 0; first < m; first += bucket_size_) {
        const std::size_t last = std::min(m, first + bucket_size_);
        double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
        for (std::size_t j = first; j <= last; ++j) {
            xmin = std::min(xmin, vertices_[j].real());
            xmax = std::max(xmax, vertices_[j].real());
            ymin = std::min(ymin, vertices_[j].imag());
            ymax = std::max(ymax, vertices_[j].imag());
        }
        const std::complex<double> c{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
        double rad = 0.0;
        for (std::size_t j = first; j <= last; ++j)
            rad = std::max(rad, std::abs(vertices_[j] - c));
        buckets_.push_back({c, rad * (1.0 + 1e-12), first, last});
    }
}

StarShapedDomain StarShapedDomain::disk(double radius, int samples)
{
    if (samples < 3)
        throw RangeError("disk needs at least three samples");
    std::vector<DomainSample> s;
    s.reserve(samples + 1);
    for (int j = 0; j < samples; ++j)
        s.push_back({kTwoPi * j / samples, radius});
    s.push_back({kTwoPi, radius});
    return StarShapedDomain(std::move(s));
}

std::size_t StarShapedDomain::segment_at(double theta) const
{
    const double t = wrap_angle(theta);
    const std::size_t m = segment_count();
    if (uniform_)
        return std::min(m - 1, static_cast<std::size_t>(t / kTwoPi * static_cast<double>(m)));
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double x, const DomainSample& s) { return x < s.theta; });
    const auto j = static_cast<std::size_t>(it - samples_.begin());
    return std::min(m - 1, j == 0 ? 0 : j - 1);
}

double StarShapedDomain::radius(double theta) const
{
    const double t = wrap_angle(theta);
    const std::size_t j = segment_at(t);
    const auto& lo = samples_[j];
    const auto& hi = samples_[j + 1];
    return lo.r + (hi.r - lo.r) * (t - lo.theta) / (hi.theta - lo.theta);
}

double StarShapedDomain::scan(std::complex<double> z, const Bucket& b, double best2,
                              std::complex<double>& point) const
{
    for (std::size_t j = b.first; j < b.last; ++j) {
        const auto p = vertices_[j];
        const auto d = vertices_[j + 1] - p;
        const auto w = z - p;
        const double len2 = std::norm(d);
        double t = len2 > 0.0 ? (w.real() * d.real() + w.imag() * d.imag()) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const auto q = p + t * d;
        const double dist2 = std::norm(z - q);
        if (dist2 < best2) {
            best2 = dist2;
            point = q;
        }
    }
    return best2;
}

StarShapedDomain::Nearest StarShapedDomain::nearest(std::complex<double> z) const
{
    const std::size_t home = segment_at(std::arg(z)) / bucket_size_;
    std::complex<double> point = vertices_.front();
    double best2 = scan(z, buckets_[home], kInf, point);
    for (std::size_t k = 0; k < buckets_.size(); ++k) {
        if (k == home)
            continue;
        const auto& b = buckets_[k];
        const double reach = std::sqrt(best2) + b.radius;
        if (std::norm(z - b.center) < reach * reach)
            best2 = scan(z, b, best2, point);
    }
    return {std::sqrt(best2), point};
}

bool StarShapedDomain::contains(std::complex<double> z) const
{
    const double rho = std::abs(z);
    if (rho == 0.0)
        return true;
    const double phi = std::arg(z);
    const std::size_t j = segment_at(phi);
    const auto p = vertices_[j];
    const auto d = vertices_[j + 1] - p;
    const std::complex<double> e{std::cos(phi), std::sin(phi)};
    const double chord = cross(p, d) / cross(e, d);
    return rho < chord;
}

double StarShapedDomain::distance(std::complex<double> z) const
{
    const double d = nearest(z).distance;
    if (d == 0.0)
        return 0.0;
    return contains(z) ? d : -d;
}

StarShapedDomain StarShapedDomain::dilated(double factor) const
{
    if (!(factor > 0.0))
        throw RangeError("dilation factor must be positive");
    auto s = samples_;
    for (auto& x : s)
        x.r *= factor;
    return StarShapedDomain(std::move(s));
}

}  // namespace starharm
