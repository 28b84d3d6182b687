#include "starharm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "starharm/error.hpp"
#include "starharm/quadrature.hpp"

namespace starharm {

namespace {

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << what << " must be finite";
        throw InvalidMeasure(msg.str());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// SegmentMeasure

SegmentMeasure::SegmentMeasure(std::vector<MeasureNode> nodes) : nodes_(std::move(nodes))
{
    if (nodes_.size() < 2)
        throw InvalidMeasure("a segment measure needs at least two nodes");
    for (const auto& n : nodes_) {
        require_finite(n.t, "node position");
        require_finite(n.nu, "distribution value");
    }
    if (nodes_.front().nu != 0.0 || nodes_.back().nu != 1.0)
        throw InvalidMeasure("distribution must start at 0 and end at 1");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i].t > nodes_[i - 1].t)) {
            std::ostringstream msg;
            msg << "node positions not strictly increasing at index " << i;
            throw InvalidMeasure(msg.str());
        }
        if (!(nodes_[i].nu > nodes_[i - 1].nu)) {
            std::ostringstream msg;
            msg << "distribution not strictly increasing at t = " << nodes_[i].t;
            throw InvalidMeasure(msg.str());
        }
    }
}

SegmentMeasure SegmentMeasure::uniform(double a, double b)
{
    return SegmentMeasure({{a, 0.0}, {b, 1.0}});
}

SegmentMeasure SegmentMeasure::from_cdf(const std::function<double(double)>& cdf, double a,
                                        double b, int cells)
{
    if (cells < 1 || !(a < b))
        throw RangeError("from_cdf needs a < b and at least one cell");
    const double c0 = cdf(a);
    const double total = cdf(b) - c0;
    if (!(total > 0.0) || !std::isfinite(total))
        throw DegenerateMeasure("distribution has no mass on the segment");
    std::vector<MeasureNode> nodes{{a, 0.0}};
    for (int i = 1; i < cells; ++i) {
        const double t = a + (b - a) * i / cells;
        const double v = (cdf(t) - c0) / total;
        if (v > nodes.back().nu && v < 1.0)
            nodes.push_back({t, v});
    }
    nodes.push_back({b, 1.0});
    return SegmentMeasure(std::move(nodes));
}

SegmentMeasure SegmentMeasure::from_density(const std::function<double(double)>& density,
                                            double a, double b, int cells)
{
    if (cells < 1 || !(a < b))
        throw RangeError("from_density needs a < b and at least one cell");
    std::vector<double> cum(cells + 1, 0.0);
    KahanSum acc;
    quad::AdaptiveOptions opt;
    opt.abs_tol = 1e-17;
    opt.rel_tol = 1e-14;
    opt.max_depth = 20;
    for (int i = 0; i < cells; ++i) {
        const double lo = a + (b - a) * i / cells;
        const double hi = i + 1 == cells ? b : a + (b - a) * (i + 1) / cells;
        const double m = quad::adaptive(density, lo, hi, opt);
        if (m < 0.0 || !std::isfinite(m))
            throw InvalidInput("density must be nonnegative and integrable");
        acc += m;
        cum[i + 1] = acc.value();
    }
    const double total = cum.back();
    return from_cdf(
        [&](double t) {
            if (t <= a)
                return 0.0;
            if (t >= b)
                return total;
            const auto i = static_cast<std::size_t>(std::llround((t - a) / (b - a) * cells));
            return cum[std::min<std::size_t>(i, cells)];
        },
        a, b, cells);
}

double SegmentMeasure::cdf(double t) const
{
    if (t <= a())
        return 0.0;
    if (t >= b())
        return 1.0;
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                               [](double x, const MeasureNode& n) { return x < n.t; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.nu + (hi.nu - lo.nu) * (t - lo.t) / (hi.t - lo.t);
}

double SegmentMeasure::density(std::size_t i) const
{
    return (nodes_[i + 1].nu - nodes_[i].nu) / (nodes_[i + 1].t - nodes_[i].t);
}

// ---------------------------------------------------------------------------
// InverseProfile

InverseProfile::InverseProfile(std::vector<ProfileNode> nodes) : nodes_(std::move(nodes))
{
    if (nodes_.size() < 2)
        throw InvalidMeasure("an inverse profile needs at least two nodes");
    for (const auto& n : nodes_) {
        require_finite(n.s, "profile argument");
        require_finite(n.t, "profile value");
    }
    if (nodes_.front().s != 0.0 || nodes_.back().s != 1.0)
        throw InvalidMeasure("profile arguments must run from 0 to 1");
    slopes_.resize(nodes_.size() - 1);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i].s > nodes_[i - 1].s) || !(nodes_[i].t > nodes_[i - 1].t)) {
            std::ostringstream msg;
            msg << "profile not strictly increasing at index " << i;
            throw InvalidMeasure(msg.str());
        }
        slopes_[i - 1] = (nodes_[i].t - nodes_[i - 1].t) / (nodes_[i].s - nodes_[i - 1].s);
    }
}

double InverseProfile::operator()(double s) const
{
    if (s <= 0.0)
        return a();
    if (s >= 1.0)
        return b();
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s,
                               [](double x, const ProfileNode& n) { return x < n.s; });
    const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return nodes_[i].t + slopes_[i] * (s - nodes_[i].s);
}

double InverseProfile::max_slope() const noexcept
{
    return *std::max_element(slopes_.begin(), slopes_.end());
}

SegmentMeasure InverseProfile::transpose() const
{
    std::vector<MeasureNode> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_)
        out.push_back({n.t, n.s});
    return SegmentMeasure(std::move(out));
}

InverseProfile InverseProfile::rescaled(double a_new, double b_new) const
{
    std::vector<ProfileNode> out;
    out.reserve(nodes_.size());
    const double scale = (b_new - a_new) / mass();
    for (const auto& n : nodes_)
        out.push_back({n.s, a_new + (n.t - a()) * scale});
    out.front().t = a_new;
    out.back().t = b_new;
    return InverseProfile(std::move(out));
}

InverseProfile InverseProfile::mix(const InverseProfile& p, const InverseProfile& q, double alpha)
{
    if (p.a() != q.a() || p.b() != q.b())
        throw InvalidMeasure("mixed profiles must share endpoints");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw RangeError("mixing weight must lie in [0, 1]");
    std::vector<double> s;
    for (const auto& n : p.nodes())
        s.push_back(n.s);
    for (const auto& n : q.nodes())
        s.push_back(n.s);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::vector<ProfileNode> out;
    out.reserve(s.size());
    for (double x : s)
        out.push_back({x, alpha * p(x) + (1.0 - alpha) * q(x)});
    out.front().t = p.a();
    out.back().t = p.b();
    return InverseProfile(std::move(out));
}

InverseProfile inverse_distribution(const SegmentMeasure& nu)
{
    std::vector<ProfileNode> out;
    out.reserve(nu.nodes().size());
    for (const auto& n : nu.nodes())
        out.push_back({n.nu, n.t});
    return InverseProfile(std::move(out));
}

// ---------------------------------------------------------------------------
// Class A

std::string to_string(Membership m)
{
    switch (m) {
    case Membership::InClass:
        return "in A";
    case Membership::NotInClass:
        return "not in A";
    case Membership::Inconclusive:
        break;
    }
    return "inconclusive";
}

double defect_integral(const InverseProfile& mu, double x, double delta)
{
    const auto nodes = mu.nodes();
    std::vector<double> ts;
    auto lo = std::upper_bound(nodes.begin(), nodes.end(), x - delta,
                               [](double v, const ProfileNode& n) { return v < n.s; });
    auto hi = std::lower_bound(nodes.begin(), nodes.end(), x + delta,
                               [](const ProfileNode& n, double v) { return n.s < v; });
    for (auto it = lo; it != hi; ++it) {
        const double t = std::abs(it->s - x);
        if (t > 0.0 && t < delta)
            ts.push_back(t);
    }
    ts.push_back(delta);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    // r(t) = mu(x+t) - mu(x-t) is linear between consecutive breakpoints and
    // vanishes at t = 0, so each piece integrates as alpha*dt + beta*log(t2/t1).
    KahanSum sum;
    double t_prev = 0.0;
    double r_prev = 0.0;
    for (double t : ts) {
        const double r = mu(x + t) - mu(x - t);
        if (t_prev == 0.0) {
            sum += r;
        } else {
            const double alpha = (r - r_prev) / (t - t_prev);
            const double beta = r_prev - alpha * t_prev;
            sum += alpha * (t - t_prev);
            sum += beta * std::log(t / t_prev);
        }
        t_prev = t;
        r_prev = r;
    }
    return sum.value();
}

double class_a_defect(const InverseProfile& mu, double delta, const DefectOptions& opt)
{
    if (!(delta > 0.0 && delta <= 1.0))
        throw RangeError("defect scale delta must lie in (0, 1]");
    const double lo = -delta;
    const double hi = 1.0 + delta;
    double best = 0.0;
    double best_x = 0.0;
    auto probe = [&](double x) {
        const double v = defect_integral(mu, x, delta);
        if (v > best) {
            best = v;
            best_x = x;
        }
    };

    // Node-aligned candidates while the per-candidate cost stays small.
    const auto nodes = mu.nodes();
    const double n = static_cast<double>(nodes.size());
    if (n * std::min(n, 2.0 * delta * n + 2.0) <= 4e6) {
        for (const auto& node : nodes) {
            probe(node.s);
            if (node.s - delta >= lo)
                probe(node.s - delta);
            if (node.s + delta <= hi)
                probe(node.s + delta);
        }
    }

    int grid = opt.initial_grid;
    for (int i = 0; i <= grid; ++i)
        probe(lo + (hi - lo) * i / grid);
    while (grid < opt.max_grid) {
        const double before = best;
        grid *= 2;
        for (int i = 1; i <= grid; i += 2)
            probe(lo + (hi - lo) * i / grid);
        if (best - before <= opt.sup_rel_tol * best)
            break;
    }

    // Golden-section polish around the incumbent.
    const double h = (hi - lo) / grid;
    double l = std::max(lo, best_x - h);
    double r = std::min(hi, best_x + h);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = r - kInvPhi * (r - l);
    double x2 = l + kInvPhi * (r - l);
    double f1 = defect_integral(mu, x1, delta);
    double f2 = defect_integral(mu, x2, delta);
    for (int it = 0; it < 40; ++it) {
        if (f1 > f2) {
            r = x2;
            x2 = x1;
            f2 = f1;
            x1 = r - kInvPhi * (r - l);
            f1 = defect_integral(mu, x1, delta);
        } else {
            l = x1;
            x1 = x2;
            f1 = f2;
            x2 = l + kInvPhi * (r - l);
            f2 = defect_integral(mu, x2, delta);
        }
    }
    return std::max({best, f1, f2});
}

double class_a_defect(const SegmentMeasure& nu, double delta, const DefectOptions& opt)
{
    return class_a_defect(inverse_distribution(nu), delta, opt);
}

ClassAReport test_class_a(const InverseProfile& mu, const DefectOptions& opt)
{
    if (opt.max_k < 2 || opt.max_k > 60)
        throw RangeError("max_k must lie in [2, 60]");
    ClassAReport rep;
    rep.options = opt;
    for (int k = 1; k <= opt.max_k; ++k) {
        const double delta = std::ldexp(1.0, -k);
        rep.deltas.push_back(delta);
        rep.defects.push_back(class_a_defect(mu, delta, opt));
    }
    const auto& d = rep.defects;
    const double last = d.back();
    bool decreasing = true;
    for (std::size_t i = 1; i < d.size(); ++i)
        decreasing = decreasing && d[i] <= d[i - 1] * (1.0 + 1e-9);
    const bool capped = std::any_of(d.begin(), d.end(), [&](double v) { return v > opt.cap; });
    const double mid = d[static_cast<std::size_t>((opt.max_k + 1) / 2) - 1];

    if (capped)
        rep.verdict = Membership::NotInClass;
    else if (decreasing && last < opt.tol)
        rep.verdict = Membership::InClass;
    else if (last >= opt.tol && mid > 0.0 && last / mid >= opt.stall_ratio)
        rep.verdict = Membership::NotInClass;
    else
        rep.verdict = Membership::Inconclusive;
    return rep;
}

ClassAReport test_class_a(const SegmentMeasure& nu, const DefectOptions& opt)
{
    return test_class_a(inverse_distribution(nu), opt);
}

// ---------------------------------------------------------------------------
// PositiveFunction

PositiveFunction PositiveFunction::closed_form(std::string tag, double a, double b,
                                               LogFn log_value, std::vector<double> singular,
                                               std::vector<double> kinks)
{
    if (!(a < b))
        throw InvalidInput("closed-form function needs a < b");
    PositiveFunction f;
    f.tag_ = std::move(tag);
    f.a_ = a;
    f.b_ = b;
    f.log_fn_ = std::move(log_value);
    std::sort(singular.begin(), singular.end());
    for (double p : singular)
        if (p > a && p < b)
            f.singular_.push_back(p);
    std::sort(kinks.begin(), kinks.end());
    for (double p : kinks)
        if (p > a && p < b)
            f.breaks_.push_back(p);
    return f;
}

PositiveFunction PositiveFunction::double_exponential(std::string tag, double a, double b,
                                                      LogFn log_log_value,
                                                      std::vector<double> singular)
{
    auto f = closed_form(std::move(tag), a, b, [ll = log_log_value](double t) { return std::exp(ll(t)); },
                         std::move(singular));
    f.log_log_fn_ = std::move(log_log_value);
    return f;
}

double PositiveFunction::log_log_value(double t) const
{
    if (log_log_fn_)
        return log_log_fn_(t);
    const double lv = log_fn_(t);
    if (std::isnan(lv))
        return lv;
    return lv > 0.0 ? std::log(lv) : -kInf;
}

PositiveFunction PositiveFunction::from_samples(std::vector<double> t, std::vector<double> values,
                                                std::string tag)
{
    if (t.size() != values.size() || t.size() < 2)
        throw InvalidInput("sampled function needs matching grids of at least two points");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]))
            throw InvalidInput("sample positions must be finite");
        if (i > 0 && !(t[i] > t[i - 1]))
            throw InvalidInput("sample positions must be strictly increasing");
        if (std::isnan(values[i]) || values[i] < 0.0 || values[i] == -kInf) {
            std::ostringstream msg;
            msg << "sample at t = " << t[i] << " is negative or NaN";
            throw InvalidInput(msg.str());
        }
    }
    PositiveFunction f;
    f.tag_ = std::move(tag);
    f.a_ = t.front();
    f.b_ = t.back();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (values[i] == kInf)
            f.singular_.push_back(t[i]);
        if (i > 0 && i + 1 < t.size())
            f.breaks_.push_back(t[i]);
    }
    f.log_fn_ = [t = std::move(t), v = std::move(values)](double x) {
        if (x <= t.front())
            return std::log(v.front());
        if (x >= t.back())
            return std::log(v.back());
        auto it = std::upper_bound(t.begin(), t.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
        if (x == t[i])
            return std::log(v[i]);
        const double w = (x - t[i]) / (t[i + 1] - t[i]);
        const double v0 = v[i];
        const double v1 = v[i + 1];
        if (v0 == kInf && v1 == kInf)
            return kInf;
        if (v0 == kInf)
            return std::log(v1);
        if (v1 == kInf)
            return std::log(v0);
        if (v0 == 0.0 || v1 == 0.0)
            return std::log(v0 + w * (v1 - v0));
        return std::log(v0) + w * (std::log(v1) - std::log(v0));
    };
    return f;
}

// ---------------------------------------------------------------------------
// Condition integrals

namespace {

double condition_integrand(ConditionKind kind, const PositiveFunction& f, double t)
{
    if (kind == ConditionKind::LogLogPlus) {
        // log+ log+ M: zero while log M <= 1.
        const double ll = f.log_log_value(t);
        if (std::isnan(ll))
            throw InvalidInput("function value is NaN");
        return ll <= 0.0 ? 0.0 : ll;
    }
    const double lv = f.log_value(t);
    if (std::isnan(lv))
        throw InvalidInput("function value is NaN");
    return lv >= 0.0 ? 0.0 : -lv;
}

struct PartialIntegral {
    double value = 0.0;
    bool divergent = false;
};

// Integral over [from, to] where `from` may carry an integrable (or not)
// singularity; shells [from + w 2^-(j+1), from + w 2^-j] march towards it.
PartialIntegral graded(const quad::Integrand& f, double from, double to)
{
    constexpr int kMaxShells = 160;
    quad::AdaptiveOptions opt;
    opt.abs_tol = 1e-15;
    opt.rel_tol = 1e-14;
    opt.max_depth = 30;
    const double w = to - from;
    std::vector<double> increments;
    KahanSum sum;
    double outer = to;
    for (int j = 1; j <= kMaxShells; ++j) {
        const double inner = from + std::ldexp(w, -j);
        // Shells thinner than a few ulps of `from` are below resolution.
        if (inner == outer || std::abs(inner - from) <= 1e-13 * std::abs(from) || inner == from)
            break;
        const double piece = std::abs(quad::adaptive(f, inner, outer, opt));
        if (!std::isfinite(piece))
            return {kInf, true};
        increments.push_back(piece);
        sum += piece;
        outer = inner;
    }
    // The first shells see the bulk of the function, not the singularity.
    std::span<const double> tail(increments);
    if (tail.size() > 8)
        tail = tail.subspan(tail.size() / 2);
    const auto assessment = assess_tail(tail, 1e-16 * (std::abs(sum.value()) + 1e-300));
    if (assessment.divergent)
        return {kInf, true};
    sum += assessment.tail_estimate;
    return {sum.value(), false};
}

PartialIntegral regular(const quad::Integrand& f, double lo, double hi)
{
    quad::AdaptiveOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-14;
    opt.max_depth = 40;
    const double v = quad::adaptive(f, lo, hi, opt);
    if (!std::isfinite(v))
        return {kInf, true};
    return {v, false};
}

}  // namespace

ExtReal condition_integral(ConditionKind kind, const PositiveFunction& f)
{
    const quad::Integrand integrand = [&](double t) {
        return condition_integrand(kind, f, t);
    };
    std::vector<double> pts{f.a()};
    for (double p : f.singular_points())
        pts.push_back(p);
    for (double p : f.breakpoints())
        pts.push_back(p);
    pts.push_back(f.b());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto singular_at = [&](double p) {
        if (std::binary_search(f.singular_points().begin(), f.singular_points().end(), p))
            return true;
        return !std::isfinite(f.log_value(p)) || !std::isfinite(condition_integrand(kind, f, p));
    };

    KahanSum total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double p = pts[i];
        const double q = pts[i + 1];
        const bool sp = singular_at(p);
        const bool sq = singular_at(q);
        if (!sp && !sq) {
            const auto part = regular(integrand, p, q);
            if (part.divergent)
                return ExtReal::infinite();
            total += part.value;
            continue;
        }
        const double m = 0.5 * (p + q);
        const auto left = sp ? graded(integrand, p, m) : regular(integrand, p, m);
        const auto right = sq ? graded(integrand, q, m) : regular(integrand, m, q);
        if (left.divergent || right.divergent)
            return ExtReal::infinite();
        total += left.value;
        total += right.value;
    }
    return ExtReal::finite(total.value());
}

// ---------------------------------------------------------------------------
// Majorant to measure

MajorantMeasure measure_from_majorant(const PositiveFunction& M, MajorantScale scale, int cells)
{
    if (cells < 1)
        throw RangeError("cell count must be positive");
    PositiveFunction::LogFn log_w;
    std::string tag;
    if (scale == MajorantScale::Subharmonic) {
        tag = "min(1,1/M)";
        log_w = [M](double t) {
            const double lm = M.log_value(t);
            if (std::isnan(lm))
                throw InvalidInput("majorant value is NaN");
            return std::min(0.0, -lm);
        };
    } else {
        tag = "min(1,1/log+M)";
        log_w = [M](double t) {
            const double ll = M.log_log_value(t);
            if (std::isnan(ll))
                throw InvalidInput("majorant value is NaN");
            return ll <= 0.0 ? 0.0 : -ll;
        };
    }
    std::vector<double> singular(M.singular_points().begin(), M.singular_points().end());
    auto weight = PositiveFunction::closed_form(tag, M.a(), M.b(), log_w, singular);

    std::vector<double> grid;
    for (int i = 0; i <= cells; ++i)
        grid.push_back(M.a() + (M.b() - M.a()) * i / cells);
    grid.back() = M.b();
    for (double p : M.singular_points())
        grid.push_back(p);
    for (double p : M.breakpoints())
        grid.push_back(p);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    quad::AdaptiveOptions opt;
    opt.abs_tol = 1e-18;
    opt.rel_tol = 1e-13;
    opt.max_depth = 30;
    const quad::Integrand w = [&](double t) { return std::exp(log_w(t)); };
    std::vector<double> cum{0.0};
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double m = quad::adaptive(w, grid[i], grid[i + 1], opt);
        if (m == 0.0) {
            // A positive weight whose cell mass underflows is merged into its
            // neighbours; a weight that is exactly zero is rejected below.
            const double lw = log_w(0.5 * (grid[i] + grid[i + 1]));
            cum.push_back(lw > -kInf ? acc.value() : -1.0);
            continue;
        }
        acc += m;
        cum.push_back(acc.value());
    }
    const double total = acc.value();
    if (!(total > 0.0))
        throw DegenerateMeasure("weight vanishes identically (majorant is +inf everywhere)");
    std::vector<MeasureNode> nodes{{grid.front(), 0.0}};
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (cum[i] < 0.0) {
            std::ostringstream msg;
            msg << "weight vanishes on [" << grid[i - 1] << ", " << grid[i]
                << "]; the measure would not be strictly increasing";
            throw InvalidMeasure(msg.str());
        }
        const double v = cum[i] / total;
        if (v > nodes.back().nu && v < 1.0)
            nodes.push_back({grid[i], v});
    }
    if (cum.back() < 0.0)
        throw InvalidMeasure("weight vanishes on the last cell");
    nodes.push_back({grid.back(), 1.0});

    const double log_total = std::log(total);
    auto normalized = PositiveFunction::closed_form(
        tag + "/Z", M.a(), M.b(), [log_w, log_total](double t) { return log_w(t) - log_total; },
        singular);
    const auto lm = condition_integral(ConditionKind::LogMinus, normalized);
    return MajorantMeasure{SegmentMeasure(std::move(nodes)), total, std::move(weight), lm,
                           lm.is_finite()};
}

// ---------------------------------------------------------------------------
// Modulus of continuity

std::vector<RearrangementStep> decreasing_rearrangement(const InverseProfile& mu)
{
    std::vector<RearrangementStep> steps;
    const auto nodes = mu.nodes();
    const auto g = mu.slopes();
    for (std::size_t i = 0; i < g.size(); ++i)
        steps.push_back({nodes[i + 1].s - nodes[i].s, g[i]});
    std::stable_sort(steps.begin(), steps.end(),
                     [](const RearrangementStep& x, const RearrangementStep& y) {
                         return x.value > y.value;
                     });
    return steps;
}

double modulus_of_continuity(const InverseProfile& mu, double t)
{
    if (t <= 0.0)
        return 0.0;
    if (t >= 1.0)
        return mu.mass();
    // x -> mu(x+t) - mu(x) is piecewise linear with kinks where x or x+t hits
    // a node, so its maximum sits at one of those kinks.
    double best = 0.0;
    for (const auto& n : mu.nodes()) {
        best = std::max(best, mu(n.s + t) - n.t);
        best = std::max(best, n.t - mu(n.s - t));
    }
    return best;
}

DiniReport dini_modulus(const InverseProfile& mu, int per_octave)
{
    DiniReport rep;
    rep.rearrangement = decreasing_rearrangement(mu);

    double t_min = 1.0;
    const auto nodes = mu.nodes();
    for (std::size_t i = 1; i < nodes.size(); ++i)
        t_min = std::min(t_min, nodes[i].s - nodes[i - 1].s);

    const double octaves = std::log2(1.0 / t_min);
    const int p = std::clamp(static_cast<int>(1500.0 / std::max(octaves, 1.0)), 2,
                             std::max(per_octave, 2));
    const int count = static_cast<int>(std::ceil(octaves * p));
    rep.t.push_back(t_min);
    for (int k = 1; k < count; ++k)
        rep.t.push_back(t_min * std::exp2(static_cast<double>(k) / p));
    if (rep.t.back() < 1.0)
        rep.t.push_back(1.0);
    for (double t : rep.t)
        rep.modulus.push_back(modulus_of_continuity(mu, t));

    // Delta is exactly linear below the smallest node spacing.
    KahanSum total;
    total += rep.modulus.front();
    std::vector<double> octave_sums;  // ordered from t = 1 downwards
    double current = 0.0;
    double octave_floor = 0.5;
    for (std::size_t i = rep.t.size() - 1; i >= 1; --i) {
        const double t1 = rep.t[i - 1];
        const double t2 = rep.t[i];
        const double d1 = rep.modulus[i - 1];
        const double d2 = rep.modulus[i];
        const double alpha = (d2 - d1) / (t2 - t1);
        const double beta = d1 - alpha * t1;
        const double piece = alpha * (t2 - t1) + beta * std::log(t2 / t1);
        total += piece;
        current += piece;
        if (t1 <= octave_floor * (1.0 + 1e-12)) {
            octave_sums.push_back(current);
            current = 0.0;
            octave_floor *= 0.5;
        }
    }
    rep.truncated = total.value();

    // The last octaves above t_min see single polyline cells rather than mu,
    // so the verdict only uses octaves at least 2^8 t_min wide.
    const auto resolved = static_cast<std::size_t>(std::max(0.0, std::floor(octaves) - 8.0));
    if (octave_sums.size() > resolved)
        octave_sums.resize(resolved);
    bool divergent = false;
    if (octave_sums.size() >= 8) {
        std::span<const double> tail(octave_sums);
        const std::size_t half = tail.size() / 2;
        tail = tail.subspan(half);
        divergent = assess_tail(tail, 1e-16 * rep.truncated).divergent;
        if (divergent) {
            // Sums S_k ~ k^-p over octaves k: p > 1 converges, p = 1 is the
            // log-log divergent case. Accept p >= 1.5.
            const double k1 = static_cast<double>(half + 1);
            const double k2 = static_cast<double>(octave_sums.size());
            const double s1 = octave_sums[half];
            const double s2 = octave_sums.back();
            if (s1 > 0.0 && s2 > 0.0) {
                const double p = -std::log(s2 / s1) / std::log(k2 / k1);
                divergent = !(p >= 1.5);
            }
        }
    }
    rep.dini = divergent ? ExtReal::infinite() : ExtReal::finite(rep.truncated);
    return rep;
}

}  // namespace starharm
