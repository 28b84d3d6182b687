#pragma once

#include <functional>
#include <span>
#include <vector>

namespace starharm::quad {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rule with n points, computed once per n and cached.
const GaussLegendreRule& gauss_legendre(int n);

using Integrand = std::function<double(double)>;

/// Fixed n-point Gauss-Legendre on [a, b].
double fixed(const Integrand& f, double a, double b, int n = 10);

/// Composite Gauss-Legendre with `panels` equal panels.
double composite(const Integrand& f, double a, double b, int panels, int n = 10);

struct AdaptiveOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-13;
    int max_depth = 50;
    int order = 10;
    long max_panels = 1L << 16;  ///< bisections per call before panels are accepted as they stand
};

/// Gauss-Legendre panels with recursive bisection.
///
/// A panel is accepted when the single-panel estimate and the two half-panel
/// estimates agree to within its share of the tolerance.
double adaptive(const Integrand& f, double a, double b, const AdaptiveOptions& opt = {});

/// Same, with the interval pre-split at `breaks` (points outside (a, b) are ignored).
/// Known kinks and integrable singularities belong in `breaks`.
double adaptive(const Integrand& f, double a, double b, std::span<const double> breaks,
                const AdaptiveOptions& opt = {});

}  // namespace starharm::quad
