#include "starharm/harness.hpp"

#include <algorithm>
#include <cmath>

#include "starharm/error.hpp"
#include "starharm/parallel.hpp"
#include "starharm/quadrature.hpp"

namespace starharm {

namespace {

constexpr double kGolden = 0.6180339887498949;

// u+ and u- vanish on the singular sets of the built-in variants that are
// evaluated away from poles, so a singular sample contributes nothing.
double safe_pos(const TestFunction& u, std::complex<double> z)
{
    return u.singular(z) ? 0.0 : u.positive(z);
}

double safe_neg(const TestFunction& u, std::complex<double> z)
{
    return u.singular(z) ? 0.0 : u.negative(z);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters = 60)
{
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

// sup over the circle |z| = t, grid plus golden-section polish.
double circle_sup(const TestFunction& u, double t, int samples)
{
    auto g = [&](double th) {
        const auto z = std::polar(t, th);
        return u.singular(z) ? -kInf : u(z);
    };
    double best = -kInf;
    int arg = 0;
    for (int j = 0; j < samples; ++j) {
        const double v = g(kTwoPi * j / samples);
        if (v > best) {
            best = v;
            arg = j;
        }
    }
    const double h = kTwoPi / samples;
    const double th = kTwoPi * arg / samples;
    return std::max(best, golden_max(g, th - h, th + h));
}

void require_support(const SegmentMeasure& nu, double a, double b, const char* what)
{
    if (std::abs(nu.a() - a) > 1e-12 || std::abs(nu.b() - b) > 1e-12)
        throw InvalidInput(what);
}

double ratio_or_flag(double num, double den, bool& unbounded)
{
    if (den > 0.0)
        return num / den;
    if (num > 0.0) {
        unbounded = true;
        return kInf;
    }
    return 0.0;
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels)
{
    const double h = (b - a) / panels;
    KahanSum s;
    double left = f(a);
    for (int k = 0; k < panels; ++k) {
        const double x = a + h * k;
        const double right = f(k + 1 == panels ? b : x + h);
        s += left + 4.0 * f(x + 0.5 * h) + right;
        left = right;
    }
    return s.value() * h / 6.0;
}

}  // namespace

double integrate_against(const SegmentMeasure& nu, const std::function<double(double)>& g,
                         double abs_tol)
{
    quad::AdaptiveOptions opt;
    opt.abs_tol = abs_tol;
    opt.rel_tol = 1e-12;
    const auto nodes = nu.nodes();
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double rho = nu.density(i);
        if (rho == 0.0)
            continue;
        acc += rho * quad::adaptive(g, nodes[i].t, nodes[i + 1].t, opt);
    }
    return acc.value();
}

// ---------------------------------------------------------------------------

Theorem1Report theorem1_profile(const TestFunction& u, const SegmentMeasure& nu,
                                std::span<const double> t_grid, double A,
                                const Theorem1Options& opt)
{
    if (!u.subharmonic_in_plane())
        throw UnsupportedFunction("growth profile needs a function subharmonic in the plane");
    require_support(nu, 0.0, kTwoPi, "growth profile needs a measure on [0, 2*pi]");
    if (!(A >= 1.0) || !std::isfinite(A))
        throw RangeError("distortion factor A must be >= 1");
    if (t_grid.empty())
        throw InvalidInput("t grid is empty");
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i]) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
            throw InvalidInput("t grid must be positive and strictly increasing");
    if (opt.theta_samples < 8)
        throw RangeError("theta_samples must be at least 8");

    Theorem1Report rep;
    rep.A = A;
    rep.grid.assign(t_grid.begin(), t_grid.end());
    const std::size_t n = rep.grid.size();

    std::vector<double> pts = rep.grid;
    for (double t : t_grid)
        pts.push_back(A * t);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto L_at = [&](double t) {
        return integrate_against(nu, [&](double th) { return safe_pos(u, std::polar(t, th)); });
    };

    std::vector<double> Lpts(pts.size());
    parallel_blocks(pts.size(), opt.workers, [&](std::size_t lo, std::size_t hi, int) {
        for (std::size_t i = lo; i < hi; ++i)
            Lpts[i] = L_at(pts[i]);
    });
    std::vector<double> Vpts(pts.size());
    double run = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        Vpts[i] = run = std::max(run, Lpts[i]);

    rep.S.resize(n);
    parallel_blocks(n, opt.workers, [&](std::size_t lo, std::size_t hi, int) {
        for (std::size_t i = lo; i < hi; ++i)
            rep.S[i] = circle_sup(u, rep.grid[i], opt.theta_samples);
    });

    auto index_of = [&](double t) {
        return static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), t) - pts.begin());
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = index_of(rep.grid[i]);
        const std::size_t kA = index_of(A * rep.grid[i]);
        rep.L.push_back(Lpts[k]);
        rep.V.push_back(Vpts[k]);
        rep.V_at.push_back(Vpts[kA]);
        rep.ratio.push_back(ratio_or_flag(rep.S[i], Vpts[kA], rep.unbounded));
        rep.c_fit = std::max(rep.c_fit, rep.ratio.back());
    }

    if (opt.integrated) {
        // W on the union grid by 10-point Gauss on each interval from t0.
        const double t0 = rep.grid.front();
        std::vector<double> Wpts(pts.size(), 0.0);
        const std::size_t k0 = index_of(t0);
        std::vector<double> pieces(pts.size(), 0.0);
        parallel_blocks(pts.size() - k0 - 1, opt.workers,
                        [&](std::size_t lo, std::size_t hi, int) {
                            for (std::size_t j = lo; j < hi; ++j) {
                                const std::size_t i = k0 + 1 + j;
                                pieces[i] = quad::fixed(L_at, pts[i - 1], pts[i], 10);
                            }
                        });
        KahanSum acc;
        for (std::size_t i = k0 + 1; i < pts.size(); ++i) {
            acc += pieces[i];
            Wpts[i] = acc.value();
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double W = Wpts[index_of(A * rep.grid[i])];
            rep.W_at.push_back(W);
            rep.ratio_integrated.push_back(
                ratio_or_flag(rep.S[i] * rep.grid[i], W, rep.unbounded_integrated));
            rep.c_fit_integrated = std::max(rep.c_fit_integrated, rep.ratio_integrated.back());
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

std::string PhragmenReport::verdict() const
{
    if (violation)
        return "violation: hypotheses hold but the conclusion fails";
    if (h1 && h2)
        return "hypotheses hold, conclusion holds";
    std::string s = "hypothesis violated:";
    if (!h1)
        s += " boundary";
    if (!h2)
        s += " growth";
    return s;
}

PhragmenReport phragmen_check(const TestFunction& u, const SegmentMeasure& nu,
                              std::span<const double> t_grid, const PhragmenOptions& opt)
{
    require_support(nu, 0.0, kPi, "half-plane check needs a measure on [0, pi]");
    if (t_grid.size() < 2)
        throw InvalidInput("t grid needs at least two points");
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i]) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
            throw InvalidInput("t grid must be positive and strictly increasing");
    if (opt.boundary_samples < 2 || opt.radial_samples < 1 || opt.angular_samples < 1)
        throw RangeError("sample counts must be positive");

    PhragmenReport rep;
    rep.grid.assign(t_grid.begin(), t_grid.end());
    for (double t : rep.grid) {
        rep.L.push_back(
            integrate_against(nu, [&](double th) { return safe_pos(u, std::polar(t, th)); }));
        rep.growth.push_back(rep.L.back() / t);
    }
    const double T = rep.grid.back();

    rep.boundary_max = -kInf;
    for (int k = 0; k < opt.boundary_samples; ++k) {
        const std::complex<double> x(-T + 2.0 * T * k / (opt.boundary_samples - 1), 0.0);
        if (!u.singular(x))
            rep.boundary_max = std::max(rep.boundary_max, u(x));
    }
    rep.h1 = rep.boundary_max <= opt.tol;

    const std::size_t half = rep.growth.size() / 2;
    bool monotone = true;
    for (std::size_t i = half + 1; i < rep.growth.size(); ++i)
        if (rep.growth[i] > rep.growth[i - 1] * (1.0 + 1e-12) + 1e-300)
            monotone = false;
    rep.h2 = monotone && rep.growth.back() <= opt.growth_tol;

    rep.interior_max = -kInf;
    for (int i = 1; i <= opt.radial_samples; ++i) {
        const double r = T * i / opt.radial_samples;
        for (int j = 0; j < opt.angular_samples; ++j) {
            const auto z = std::polar(r, kPi * (j + 0.5) / opt.angular_samples);
            if (u.singular(z))
                continue;
            const double v = u(z);
            if (v > rep.interior_max) {
                rep.interior_max = v;
                rep.interior_argmax = z;
            }
        }
    }
    rep.conclusion = rep.interior_max <= opt.tol;
    rep.violation = rep.h1 && rep.h2 && !rep.conclusion;
    return rep;
}

// ---------------------------------------------------------------------------

LevinsonReport levinson_profile(const TestFunction& u, const SegmentMeasure& nu,
                                std::span<const double> x_grid, const Rect& k,
                                const LevinsonOptions& opt)
{
    require_support(nu, -1.0, 1.0, "line integrals need a measure on [-1, 1]");
    if (!(-1.0 < k.x0 && k.x0 <= k.x1 && k.x1 < 1.0 && -1.0 < k.y0 && k.y0 <= k.y1 && k.y1 < 1.0))
        throw GeometryError("compact rectangle K is not inside the open square");
    if (x_grid.empty())
        throw InvalidInput("x grid is empty");
    for (double x : x_grid)
        if (!(x > -1.0 && x < 1.0))
            throw RangeError("x grid must lie in (-1, 1)");
    if (opt.compact_samples < 2)
        throw RangeError("compact_samples must be at least 2");

    LevinsonReport rep;
    rep.grid.assign(x_grid.begin(), x_grid.end());
    rep.bounded = true;
    for (double x : rep.grid) {
        const double v = integrate_against(
            nu, [&](double y) { return safe_pos(u, std::complex<double>(x, y)); });
        rep.line_integral.push_back(v);
        rep.sup_line = std::max(rep.sup_line, v);
        rep.bounded = rep.bounded && std::isfinite(v);
    }
    rep.normalized = rep.bounded && rep.sup_line <= opt.bound;

    rep.sup_compact = -kInf;
    const int m = opt.compact_samples;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const std::complex<double> z(k.x0 + (k.x1 - k.x0) * i / (m - 1),
                                         k.y0 + (k.y1 - k.y0) * j / (m - 1));
            const double v = u.singular(z) ? kInf : u(z);
            if (v > rep.sup_compact) {
                rep.sup_compact = v;
                rep.argmax = z;
            }
        }
    }
    rep.conclusion = std::isfinite(rep.sup_compact);
    return rep;
}

// ---------------------------------------------------------------------------

void MatsaevWeight::validate() const
{
    if (!(tau > 0.0 && tau < 0.25))
        throw RangeError("tau must lie in (0, 1/4)");
    if (delta && !(beta() < 1.0 + *delta))
        throw RangeError("beta = 1/(1 - 2 tau) must stay below 1 + delta");
    if (!phi)
        throw InvalidInput("Phi is not set");
    double prev = 0.0;
    for (int k = 0; k <= 256; ++k) {
        const double v = phi(k / 256.0);
        if (!std::isfinite(v) || v < 0.0 || v < prev)
            throw InvalidInput("Phi must be finite, nonnegative and nondecreasing on [0, 1]");
        prev = v;
    }
}

MatsaevWeight builtin_phi(const std::string& name, double tau)
{
    MatsaevWeight w;
    w.tau = tau;
    w.name = name;
    if (name == "1" || name == "one") {
        w.phi = [](double) { return 1.0; };
        w.log_phi = [](double) { return 0.0; };
    } else if (name == "t") {
        w.phi = [](double t) { return t; };
        w.log_phi = [](double t) { return std::log(t); };
    } else if (name == "t2" || name == "t^2") {
        w.phi = [](double t) { return t * t; };
        w.log_phi = [](double t) { return 2.0 * std::log(t); };
    } else {
        throw InvalidInput("unknown Phi '" + name + "' (expected 1, t, t2)");
    }
    w.validate();
    return w;
}

double matsaev_lambda(double tau, double s)
{
    if (!(tau > 0.0 && tau < 0.25))
        throw RangeError("tau must lie in (0, 1/4)");
    if (!(s >= 0.0 && s <= 1.0))
        throw RangeError("theta must lie in [0, pi]");
    return std::min(std::min(s, 1.0 - s), tau);
}

double matsaev_weight_fraction(const MatsaevWeight& w, double s)
{
    const double lam = matsaev_lambda(w.tau, s);
    return lam * lam * w.phi(std::sin(0.5 * kPi * lam));
}

namespace {

// lambda from theta; pi - theta is exact near pi, theta / pi is not.
double lambda_theta(double tau, double theta)
{
    if (!(tau > 0.0 && tau < 0.25))
        throw RangeError("tau must lie in (0, 1/4)");
    if (!(theta >= 0.0 && theta <= kPi))
        throw RangeError("theta must lie in [0, pi]");
    return std::min(std::min(theta, kPi - theta) / kPi, tau);
}

}  // namespace

double matsaev_weight(const MatsaevWeight& w, double theta)
{
    const double lam = lambda_theta(w.tau, theta);
    return lam * lam * w.phi(std::sin(0.5 * kPi * lam));
}

std::vector<double> matsaev_weight(const MatsaevWeight& w, std::span<const double> theta)
{
    std::vector<double> out;
    out.reserve(theta.size());
    for (double th : theta)
        out.push_back(matsaev_weight(w, th));
    return out;
}

double psi_weight(const MatsaevWeight& w, double theta)
{
    const double lam = lambda_theta(w.tau, theta);
    if (lam == 0.0)
        return 0.0;
    quad::AdaptiveOptions opt;
    opt.abs_tol = 1e-16;
    opt.rel_tol = 1e-14;
    return quad::adaptive(
        [&](double a) {
            return std::sin((theta - a * kPi) / (1.0 - 2.0 * a)) * w.phi(std::sin(kPi * a));
        },
        0.0, lam, opt);
}

ExtReal matsaev_logminus(const MatsaevWeight& w)
{
    w.validate();
    // log f = 2 log lambda + log Phi(sin(pi lambda / 2)), kept in log form
    // because f underflows long before the endpoint.
    auto f = PositiveFunction::closed_form("f", 0.0, kPi, [w](double th) {
        const double lam = lambda_theta(w.tau, th);
        const double x = std::sin(0.5 * kPi * lam);
        return 2.0 * std::log(lam) + (w.log_phi ? w.log_phi(x) : std::log(w.phi(x)));
    }, {}, {w.tau * kPi, kPi - w.tau * kPi});
    return condition_integral(ConditionKind::LogMinus, f);
}

MatsaevProfile matsaev_profile(const TestFunction& u, const MatsaevWeight& w,
                               std::span<const double> r_grid)
{
    w.validate();
    if (u.kind() != TestFunctionKind::LogAbsEntire)
        throw UnsupportedFunction("weight profile needs a log-modulus function");
    for (auto a : u.coefficients())
        if (a.imag() != 0.0)
            throw UnsupportedFunction("weight profile needs real zeros");
    if (r_grid.empty())
        throw InvalidInput("r grid is empty");

    quad::AdaptiveOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    const double breaks[] = {0.0};

    MatsaevProfile rep;
    rep.grid.assign(r_grid.begin(), r_grid.end());
    rep.delta = w.delta.value_or(w.beta() - 1.0);
    double run = 0.0;  // max over r_j <= r of hyp(r_j) r_j^{-1-delta}
    for (double r : rep.grid) {
        if (!(r > 0.0) || !std::isfinite(r) || (!rep.lhs.empty() && !(r > rep.grid[rep.lhs.size() - 1])))
            throw InvalidInput("r grid must be positive and increasing");
        const double lhs = quad::adaptive(
            [&](double th) { return safe_pos(u, std::polar(r, th)) * matsaev_weight(w, std::abs(th)); },
            -kPi, kPi, breaks, opt);
        const double hyp = quad::adaptive(
            [&](double th) { return safe_neg(u, std::polar(r, th)) * w.phi(std::abs(std::sin(th))); },
            -kPi, kPi, breaks, opt);
        const double growth = std::pow(r, 1.0 + rep.delta);
        run = std::max(run, hyp / growth);
        rep.lhs.push_back(lhs);
        rep.hyp.push_back(hyp);
        rep.V.push_back(run * growth);
        rep.ratio.push_back(ratio_or_flag(lhs, run, rep.unbounded));
        rep.c_fit = std::max(rep.c_fit, rep.ratio.back());
    }
    return rep;
}

// ---------------------------------------------------------------------------

void SectorSpec::validate() const
{
    if (!(r > 0.0 && r < R && std::isfinite(R)))
        throw RangeError("sector radii must satisfy 0 < r < R");
    if (!(a > 0.0 && a < 0.25))
        throw RangeError("sector parameter a must lie in (0, 1/4)");
}

CarlemanTerms carleman_terms(const TestFunction& u, const SectorSpec& sector, int quad_n)
{
    if (!u.harmonic_in_plane())
        throw UnsupportedFunction("Carleman identity needs a harmonic polynomial");
    sector.validate();
    if (quad_n < 1)
        throw RangeError("quad_n must be positive");

    const double r = sector.r;
    const double R = sector.R;
    const double a = sector.a;
    const double b = sector.b();
    const double lo = kPi * a;
    const double hi = kPi - kPi * a;
    const double R2b = std::pow(R, -2.0 * b);
    auto S = [&](double th) { return std::sin(b * (th - a * kPi)); };

    CarlemanTerms t;
    t.outer = 2.0 * b * std::pow(R, -b) *
              simpson([&](double th) { return u(std::polar(R, th)) * S(th); }, lo, hi, quad_n);
    t.inner = -b * (std::pow(r, -b) + std::pow(r, b) * R2b) *
              simpson([&](double th) { return u(std::polar(r, th)) * S(th); }, lo, hi, quad_n);
    t.derivative = -(std::pow(r, 1.0 - b) - std::pow(r, 1.0 + b) * R2b) *
                   simpson([&](double th) { return u.radial_derivative(std::polar(r, th)) * S(th); },
                           lo, hi, quad_n);
    const auto e1 = std::polar(1.0, kPi * a);
    const auto e2 = std::polar(1.0, kPi * (1.0 - a));
    t.sides = b * simpson(
                      [&](double x) {
                          return (u(x * e1) + u(x * e2)) *
                                 (std::pow(x, -b - 1.0) - std::pow(x, b - 1.0) * R2b);
                      },
                      r, R, quad_n);
    KahanSum s;
    s += t.outer;
    s += t.inner;
    s += t.derivative;
    s += t.sides;
    t.residual = std::abs(s.value());
    return t;
}

double carleman_identity_residual(const TestFunction& u, const SectorSpec& sector, int quad_n)
{
    return carleman_terms(u, sector, quad_n).residual;
}

}  // namespace starharm
