#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "starharm/numeric.hpp"

namespace starharm {

/// Node (t, nu(t)) of a piecewise-linear distribution function.
struct MeasureNode {
    double t;
    double nu;
};

/// Node (s, mu(s)) of a piecewise-linear inverse distribution.
struct ProfileNode {
    double s;
    double t;
};

/// Continuous, strictly increasing probability distribution on [a, b].
///
/// Stored as a piecewise-linear distribution function nu(t) with nu(a) = 0
/// and nu(b) = 1, so its density is piecewise constant.
class SegmentMeasure {
public:
    /// Throws InvalidMeasure unless t and nu are strictly increasing, finite,
    /// and nu runs exactly from 0 to 1.
    explicit SegmentMeasure(std::vector<MeasureNode> nodes);

    static SegmentMeasure uniform(double a, double b);

    /// Tabulate a distribution function on `cells` uniform cells and
    /// normalize by cdf(b) - cdf(a). Nodes whose normalized value does not
    /// strictly increase in floating point are merged into their neighbours.
    static SegmentMeasure from_cdf(const std::function<double(double)>& cdf, double a, double b,
                                   int cells);

    /// Same, integrating a nonnegative density cell by cell.
    static SegmentMeasure from_density(const std::function<double(double)>& density, double a,
                                       double b, int cells);

    [[nodiscard]] double a() const noexcept { return nodes_.front().t; }
    [[nodiscard]] double b() const noexcept { return nodes_.back().t; }
    [[nodiscard]] std::span<const MeasureNode> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t segment_count() const noexcept { return nodes_.size() - 1; }

    /// nu(t), clamped to 0 below a and to 1 above b.
    [[nodiscard]] double cdf(double t) const;
    /// nu((lo, hi]).
    [[nodiscard]] double mass(double lo, double hi) const { return cdf(hi) - cdf(lo); }
    /// Density on segment i.
    [[nodiscard]] double density(std::size_t i) const;

private:
    std::vector<MeasureNode> nodes_;
};

/// Inverse mu of a distribution nu, extended by mu = a on (-inf, 0] and
/// mu = b on [1, inf).
class InverseProfile {
public:
    /// Throws InvalidMeasure unless s runs strictly from 0 to 1 and t is
    /// strictly increasing and finite.
    explicit InverseProfile(std::vector<ProfileNode> nodes);

    [[nodiscard]] double operator()(double s) const;

    [[nodiscard]] double a() const noexcept { return nodes_.front().t; }
    [[nodiscard]] double b() const noexcept { return nodes_.back().t; }
    [[nodiscard]] double mass() const noexcept { return b() - a(); }
    [[nodiscard]] std::span<const ProfileNode> nodes() const noexcept { return nodes_; }
    /// Piecewise-constant density of d(mu) on [s_i, s_{i+1}].
    [[nodiscard]] std::span<const double> slopes() const noexcept { return slopes_; }
    [[nodiscard]] double max_slope() const noexcept;

    /// Back to the distribution function (node data transposed).
    [[nodiscard]] SegmentMeasure transpose() const;

    /// Affine image with values rescaled onto [a, b].
    [[nodiscard]] InverseProfile rescaled(double a, double b) const;

    /// alpha * p + (1 - alpha) * q on the union of their s-nodes; both
    /// profiles must share endpoints.
    static InverseProfile mix(const InverseProfile& p, const InverseProfile& q, double alpha);

private:
    std::vector<ProfileNode> nodes_;
    std::vector<double> slopes_;
};

InverseProfile inverse_distribution(const SegmentMeasure& nu);

// ---------------------------------------------------------------------------
// Class A

enum class Membership { InClass, NotInClass, Inconclusive };

std::string to_string(Membership m);

struct DefectOptions {
    int max_k = 14;               ///< defects evaluated at delta = 2^-k, k = 1..max_k
    double tol = 1e-2;            ///< "in class" once D(2^-max_k) drops below this
    double stall_ratio = 0.75;    ///< D(2^-K) / D(2^-K/2) at or above this counts as stalled
    double cap = kInf;            ///< any defect above cap is an immediate "not in class"
    double sup_rel_tol = 0.01;    ///< x-grid refinement stops once the sup moves less than this
    int initial_grid = 256;
    int max_grid = 1 << 15;
};

struct ClassAReport {
    std::vector<double> deltas;
    std::vector<double> defects;
    Membership verdict = Membership::Inconclusive;
    DefectOptions options;
};

/// int_0^delta (mu(x+t) - mu(x-t)) / t dt, exact for piecewise-linear mu.
double defect_integral(const InverseProfile& mu, double x, double delta);

/// sup_x of defect_integral; 0 < delta <= 1.
double class_a_defect(const InverseProfile& mu, double delta, const DefectOptions& opt = {});
double class_a_defect(const SegmentMeasure& nu, double delta, const DefectOptions& opt = {});

/// Dyadic defect sequence and membership verdict.
ClassAReport test_class_a(const InverseProfile& mu, const DefectOptions& opt = {});
ClassAReport test_class_a(const SegmentMeasure& nu, const DefectOptions& opt = {});

// ---------------------------------------------------------------------------
// Nonnegative functions on a segment (majorants M, densities g).

/// Represented through log f so that values such as exp(exp(1/t)) or
/// exp(-1/t) stay representable.
class PositiveFunction {
public:
    using LogFn = std::function<double(double)>;

    /// Closed form given by its logarithm (may return +-inf). `singular`
    /// lists interior points where the log blows up, `kinks` interior points
    /// where it is only continuous.
    static PositiveFunction closed_form(std::string tag, double a, double b, LogFn log_value,
                                        std::vector<double> singular = {},
                                        std::vector<double> kinks = {});

    /// M = exp(exp(L(t))) given by L = log log M, for majorants whose log
    /// overflows a double near a singular point.
    static PositiveFunction double_exponential(std::string tag, double a, double b,
                                               LogFn log_log_value,
                                               std::vector<double> singular = {});

    /// Grid samples. Values must be >= 0, finite or +inf. Cells with two
    /// positive finite ends interpolate log-linearly; a zero end switches the
    /// cell to linear interpolation; a +inf end holds the finite neighbour
    /// constant and registers the node as a singular point.
    static PositiveFunction from_samples(std::vector<double> t, std::vector<double> values,
                                         std::string tag = "samples");

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] const std::string& tag() const noexcept { return tag_; }
    [[nodiscard]] std::span<const double> singular_points() const noexcept { return singular_; }
    /// Interior points where the representation is only piecewise smooth.
    [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breaks_; }

    [[nodiscard]] double log_value(double t) const { return log_fn_(t); }
    [[nodiscard]] double value(double t) const { return std::exp(log_fn_(t)); }
    /// log log f; -inf where log f <= 0.
    [[nodiscard]] double log_log_value(double t) const;

private:
    PositiveFunction() = default;

    std::string tag_;
    double a_ = 0.0;
    double b_ = 1.0;
    LogFn log_fn_;
    LogFn log_log_fn_;  // empty unless given explicitly
    std::vector<double> singular_;
    std::vector<double> breaks_;
};

using MajorantSpec = PositiveFunction;

enum class ConditionKind { LogLogPlus, LogMinus };

/// int_a^b log+ log+ M or int_a^b log- g. Endpoints and singular points are
/// approached through dyadic shells; a tail that refuses to decay is
/// reported as divergent.
ExtReal condition_integral(ConditionKind kind, const PositiveFunction& f);

enum class MajorantScale {
    Subharmonic,  ///< M majorizes the subharmonic function: w = min(1, 1/M)
    Modulus,      ///< M majorizes |f|: w = min(1, 1/log+ M)
};

struct MajorantMeasure {
    SegmentMeasure measure;
    double normalization;      ///< int_a^b w
    PositiveFunction weight;   ///< unnormalized density w
    ExtReal logminus;          ///< int log- of the normalized density
    bool szego;                ///< logminus is finite
};

MajorantMeasure measure_from_majorant(const PositiveFunction& M, MajorantScale scale,
                                      int cells = 2048);

// ---------------------------------------------------------------------------
// Modulus of continuity and Dini integral.

struct RearrangementStep {
    double length;
    double value;
};

/// Nonincreasing rearrangement of the density of mu, as a step function on [0, 1].
std::vector<RearrangementStep> decreasing_rearrangement(const InverseProfile& mu);

/// Exact modulus of continuity sup_{|x-y|<=t} |mu(x) - mu(y)|.
double modulus_of_continuity(const InverseProfile& mu, double t);

struct DiniReport {
    std::vector<double> t;        ///< evaluation grid, increasing, ends at 1
    std::vector<double> modulus;  ///< exact Delta(t) on the grid
    double truncated = 0.0;       ///< int_0^1 Delta(t)/t dt of the tabulated modulus
    /// Divergent when the octave sums over the resolved scales decay neither
    /// geometrically nor faster than k^-1.5.
    ExtReal dini;
    std::vector<RearrangementStep> rearrangement;
};

DiniReport dini_modulus(const InverseProfile& mu, int per_octave = 16);

}  // namespace starharm
