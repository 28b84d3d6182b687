#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "starharm/measures.hpp"
#include "starharm/numeric.hpp"
#include "starharm/test_functions.hpp"

namespace starharm {

// ---------------------------------------------------------------------------
// Growth profile on circles.

struct Theorem1Options {
    int theta_samples = 720;    ///< grid for sup_theta u(t e^{i theta}) before polishing
    bool integrated = false;    ///< also fit u(t e^{i theta}) <= c t^-1 W(A t)
    int workers = 1;
};

struct Theorem1Report {
    double A = 1.0;
    std::vector<double> grid;   ///< t
    std::vector<double> L;      ///< int u+(t e^{i theta}) dnu(theta)
    std::vector<double> V;      ///< max_{s <= t} L(s), over grid and A * grid
    std::vector<double> S;      ///< sup_theta u(t e^{i theta})
    std::vector<double> V_at;   ///< V(A t)
    std::vector<double> ratio;  ///< S(t) / V(A t), 0/0 -> 0
    double c_fit = 0.0;
    bool unbounded = false;     ///< some S(t) > 0 met V(A t) = 0

    // Integrated form, W(t) = int_{t0}^t L(s) ds with t0 = grid.front().
    std::vector<double> W_at;
    std::vector<double> ratio_integrated;
    double c_fit_integrated = 0.0;
    bool unbounded_integrated = false;
};

/// L, V, S and the fitted distortion constant for u subharmonic in the plane
/// against nu on [0, 2 pi]. The class-A status of nu is the caller's concern.
Theorem1Report theorem1_profile(const TestFunction& u, const SegmentMeasure& nu,
                                std::span<const double> t_grid, double A,
                                const Theorem1Options& opt = {});

/// int_a^b g(theta) dnu(theta) computed segment by segment.
double integrate_against(const SegmentMeasure& nu, const std::function<double(double)>& g,
                         double abs_tol = 1e-13);

// ---------------------------------------------------------------------------
// Phragmen-Lindelof check in the upper half-plane.

struct PhragmenOptions {
    double tol = 1e-9;           ///< boundary and interior thresholds
    double growth_tol = 1e-6;    ///< t^-1 L(t) at the end of the grid
    int boundary_samples = 4001;
    int radial_samples = 96;
    int angular_samples = 128;
};

struct PhragmenReport {
    std::vector<double> grid;
    std::vector<double> L;
    std::vector<double> growth;  ///< L(t) / t
    double boundary_max = 0.0;
    double interior_max = 0.0;
    std::complex<double> interior_argmax{};
    bool h1 = false;
    bool h2 = false;
    bool conclusion = false;
    bool violation = false;      ///< h1 && h2 && !conclusion

    [[nodiscard]] std::string verdict() const;
};

/// nu lives on [0, pi]; the boundary sample is [-T, T] and the half-disk
/// sample has radius T = max t_grid.
PhragmenReport phragmen_check(const TestFunction& u, const SegmentMeasure& nu,
                              std::span<const double> t_grid, const PhragmenOptions& opt = {});

// ---------------------------------------------------------------------------
// Vertical-line integrals in the square Q = {|x| < 1, |y| < 1}.

struct Rect {
    double x0, x1, y0, y1;
};

struct LevinsonOptions {
    int compact_samples = 65;    ///< per side of K
    double bound = 1.0;          ///< hypothesis threshold for the line integrals
};

struct LevinsonReport {
    std::vector<double> grid;            ///< x
    std::vector<double> line_integral;   ///< int_{-1}^{1} u+(x + iy) dnu(y)
    double sup_line = 0.0;
    bool bounded = false;                ///< every line integral finite
    bool normalized = false;             ///< sup_line <= bound
    double sup_compact = 0.0;            ///< sup of u over the K sample
    std::complex<double> argmax{};
    bool conclusion = false;             ///< sup_compact finite
};

LevinsonReport levinson_profile(const TestFunction& u, const SegmentMeasure& nu,
                                std::span<const double> x_grid, const Rect& k,
                                const LevinsonOptions& opt = {});

// ---------------------------------------------------------------------------
// Weights f and Psi built from a nondecreasing Phi on [0, 1].

struct MatsaevWeight {
    std::function<double(double)> phi;
    std::function<double(double)> log_phi;  ///< optional; log(phi) when unset
    std::string name = "phi";
    double tau = 0.2;
    std::optional<double> delta;

    [[nodiscard]] double beta() const { return 1.0 / (1.0 - 2.0 * tau); }
    /// tau in (0, 1/4), beta < 1 + delta, Phi nonnegative and nondecreasing on a grid.
    void validate() const;
};

/// Phi(t) = 1, t, t^2.
MatsaevWeight builtin_phi(const std::string& name, double tau);

/// lambda(theta) = min(theta/pi, 1 - theta/pi, tau) at theta = pi s.
double matsaev_lambda(double tau, double s);
/// f at theta = pi s; symmetric in s <-> 1 - s bit for bit when 1 - s is exact.
double matsaev_weight_fraction(const MatsaevWeight& w, double s);
double matsaev_weight(const MatsaevWeight& w, double theta);
std::vector<double> matsaev_weight(const MatsaevWeight& w, std::span<const double> theta);
double psi_weight(const MatsaevWeight& w, double theta);
/// int_0^pi log- f.
ExtReal matsaev_logminus(const MatsaevWeight& w);

struct MatsaevProfile {
    std::vector<double> grid;     ///< r
    std::vector<double> lhs;      ///< int_{-pi}^{pi} u+(r e^{i theta}) f(|theta|) d theta
    std::vector<double> hyp;      ///< int_{-pi}^{pi} u-(r e^{i theta}) Phi(|sin theta|) d theta
    /// Smallest majorant of hyp on the grid with r^{-1-delta} V(r) nondecreasing.
    std::vector<double> V;
    std::vector<double> ratio;    ///< lhs / V, 0/0 -> 0
    double delta = 0.0;           ///< w.delta, or beta - 1 when unset
    double c_fit = 0.0;
    bool unbounded = false;
};

/// u must be a LogAbsEntire with real zeros.
MatsaevProfile matsaev_profile(const TestFunction& u, const MatsaevWeight& w,
                               std::span<const double> r_grid);

// ---------------------------------------------------------------------------
// Carleman's formula in the sector r < |z| < R, pi a < arg z < pi - pi a.

struct SectorSpec {
    double r = 0.5;
    double R = 2.0;
    double a = 0.1;

    [[nodiscard]] double b() const { return 1.0 / (1.0 - 2.0 * a); }
    void validate() const;
};

struct CarlemanTerms {
    double outer = 0.0;       ///< 2b R^-b int u(R e^{i theta}) S
    double inner = 0.0;       ///< -b (r^-b + r^b R^-2b) int u(r e^{i theta}) S
    double derivative = 0.0;  ///< -(r^{1-b} - r^{1+b} R^-2b) int u'_r(r e^{i theta}) S
    double sides = 0.0;       ///< b int [u(x e^{i pi a}) + u(x e^{i pi (1-a)})] kernel
    double residual = 0.0;    ///< |sum|
};

/// Each term by composite Simpson on quad_n panels.
CarlemanTerms carleman_terms(const TestFunction& u, const SectorSpec& sector, int quad_n);
double carleman_identity_residual(const TestFunction& u, const SectorSpec& sector, int quad_n);

}  // namespace starharm
