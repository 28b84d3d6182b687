#pragma once

#include <complex>
#include <vector>

#include "starharm/measures.hpp"

namespace starharm {

/// N(x) = int_0^1 log|x - s| d mu(s), exact per constant-density segment.
double segment_log_potential(const InverseProfile& mu, double x);

/// u(z) = (1/pi) int_0^{2pi} log|e^{i theta} - z| d mu(theta / 2pi).
///
/// On the unit circle the value is assembled from Clausen functions; off the
/// circle it is integrated adaptively with a break at arg z.
double circle_log_potential(const InverseProfile& mu, std::complex<double> z);

/// The quadrature route for any z, including |z| = 1 where the kernel has
/// an integrable log singularity at theta = arg z.
double circle_log_potential_quadrature(const InverseProfile& mu, std::complex<double> z);

/// u(e^{i psi}) for every psi in `angles`; uses up to `workers` threads.
std::vector<double> circle_potential_on_circle(const InverseProfile& mu,
                                               const std::vector<double>& angles,
                                               int workers = 1);

struct ContinuityReport {
    int grid_size = 0;
    std::vector<double> scales;           ///< h_k = 2 pi / 2^k
    std::vector<double> oscillation;      ///< max |u(psi + h) - u(psi)| over the refined grid
    std::vector<double> oscillation_at0;  ///< max |u(psi) - u(0)| over |psi| <= h_k
    bool shrinking = false;               ///< oscillation decreasing and ended small
};

/// Empirical modulus of continuity of u on the circle, sampled on a uniform
/// grid of `grid_size` points and its 2x refinement.
ContinuityReport potential_continuity_probe(const InverseProfile& mu, int grid_size,
                                            int workers = 1);

}  // namespace starharm
