#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "starharm/builtin.hpp"
#include "starharm/construction.hpp"
#include "starharm/error.hpp"
#include "starharm/harmonic_measure.hpp"
#include "starharm/harness.hpp"
#include "starharm/io.hpp"
#include "starharm/measures.hpp"

namespace starharm::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kVerdict = 1;
constexpr int kInput = 2;

struct Common {
    std::uint64_t walks = 100000;
    double eps = 1e-4;
    std::uint64_t seed = 1;
    int bins = 64;
    int workers = 1;
    int samples = 4096;
    double tol = 1e-2;
    double delta_min = 0x1p-14;
    std::string format = "json";
    std::string output;
    bool force = false;
    int cells = 2048;
};

enum class Segment { Full, Half, Sym };

std::pair<double, double> segment_bounds(Segment s)
{
    switch (s) {
    case Segment::Half:
        return {0.0, kPi};
    case Segment::Sym:
        return {-1.0, 1.0};
    default:
        return {0.0, kTwoPi};
    }
}

const char* segment_name(Segment s)
{
    switch (s) {
    case Segment::Half:
        return "[0, pi]";
    case Segment::Sym:
        return "[-1, 1]";
    default:
        return "[0, 2*pi]";
    }
}

constexpr std::string_view kBuiltin = "builtin:";

bool is_builtin(const std::string& src)
{
    return src.rfind(kBuiltin, 0) == 0;
}

SegmentMeasure load_measure(const std::string& src, Segment seg, int cells)
{
    const auto [a, b] = segment_bounds(seg);
    if (is_builtin(src)) {
        const std::string name = src.substr(kBuiltin.size());
        if (name == "nonmember")
            return nonmember_profile(a, b).transpose();
        if (name == "sqrt") {
            // density proportional to (t - a), i.e. mu(s) = a + (b - a) sqrt(s)
            return SegmentMeasure::from_cdf(
                [a, b](double t) {
                    const double x = (t - a) / (b - a);
                    return x * x;
                },
                a, b, cells);
        }
        return builtin_measure(name, a, b, cells);
    }
    auto nu = io::read_measure(src);
    if (std::abs(nu.a() - a) > 1e-9 || std::abs(nu.b() - b) > 1e-9)
        throw InvalidInput("measure in '" + src + "' must live on " + segment_name(seg));
    return nu;
}

StarShapedDomain load_domain(const std::string& src)
{
    if (src == "builtin:disk")
        return StarShapedDomain::disk(1.0, 4096);
    return io::read_domain(src);
}

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const auto first = item.find_first_not_of(' ');
        const char* p = item.data() + (first == std::string::npos ? item.size() : first);
        const auto [ptr, ec] = std::from_chars(p, item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v))
            throw InvalidInput(std::string("cannot parse ") + what + " '" + text + "'");
        out.push_back(v);
    }
    return out;
}

std::complex<double> parse_point(const std::string& text, const char* what)
{
    const auto v = parse_list(text, what);
    if (v.size() != 2)
        throw InvalidInput(std::string(what) + " needs two comma-separated numbers");
    return {v[0], v[1]};
}

std::vector<double> geometric_grid(double lo, double hi, int count)
{
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw RangeError("grid needs 0 < min < max and at least two points");
    std::vector<double> g;
    for (int k = 0; k < count; ++k)
        g.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1)));
    g.back() = hi;
    return g;
}

TestFunction make_function(const std::string& name, const std::vector<double>& zeros)
{
    using P = PolyPart;
    if (name == "re_z")
        return TestFunction::re_z().named("Re z");
    if (name == "im_z")
        return TestFunction::im_z().named("Im z");
    if (name == "neg_im_z")
        return TestFunction::harmonic_poly({0.0, -1.0}, P::Imag).named("-Im z");
    if (name == "re_z2")
        return TestFunction::harmonic_poly({0.0, 0.0, 1.0}, P::Real).named("Re z^2");
    if (name == "im_z2")
        return TestFunction::harmonic_poly({0.0, 0.0, 1.0}, P::Imag).named("Im z^2");
    if (name == "im_z3")
        return TestFunction::harmonic_poly({0.0, 0.0, 0.0, 1.0}, P::Imag).named("Im z^3");
    if (name == "log_plus")
        return TestFunction::radial_log(1.0).named("log+|z|");
    if (name == "log_abs") {
        std::vector<std::complex<double>> z(zeros.begin(), zeros.end());
        if (z.empty())
            z.push_back(0.0);
        return TestFunction::log_abs_entire(std::move(z)).named("log|prod(z - a_j)|");
    }
    if (name == "mobius")
        return TestFunction::half_plane_mobius().named("log|(z-i)/(z+i)|");
    if (name == "square_pole")
        return TestFunction::square_pole().named("Re 1/(1-z)");
    if (name == "zero")
        return TestFunction::zero().named("0");
    throw InvalidInput("unknown function '" + name +
                       "' (re_z, im_z, neg_im_z, re_z2, im_z2, im_z3, log_plus, log_abs, mobius, "
                       "square_pole, zero)");
}

int max_k_from(double delta_min)
{
    if (!(delta_min > 0.0 && delta_min <= 0.5))
        throw RangeError("--delta-min must lie in (0, 1/2]");
    return static_cast<int>(std::lround(-std::log2(delta_min)));
}

DefectOptions defect_options(const Common& c)
{
    DefectOptions o;
    o.tol = c.tol;
    o.max_k = max_k_from(c.delta_min);
    if (!(c.tol > 0.0))
        throw RangeError("--tol must be positive");
    return o;
}

WalkConfig walk_config(const Common& c)
{
    WalkConfig cfg;
    cfg.walks = c.walks;
    cfg.eps = c.eps;
    cfg.seed = c.seed;
    cfg.bins = c.bins;
    cfg.workers = c.workers;
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------------------
// JSON helpers

json num(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json arr(const std::vector<double>& v)
{
    json a = json::array();
    for (double x : v)
        a.push_back(num(x));
    return a;
}

json ext(const ExtReal& e)
{
    return {{"value", e.divergent ? json(nullptr) : num(e.value)}, {"divergent", e.divergent}};
}

json cplx(std::complex<double> z)
{
    return json::array({num(z.real()), num(z.imag())});
}

json config_echo(const std::string& command, const std::vector<std::string>& inputs, const Common& c)
{
    return {{"command", command},
            {"inputs", inputs},
            {"walks", c.walks},
            {"eps", c.eps},
            {"seed", c.seed},
            {"bins", c.bins},
            {"workers", c.workers},
            {"samples", c.samples},
            {"tol", c.tol},
            {"delta_min", c.delta_min},
            {"cells", c.cells},
            {"force", c.force},
            {"format", c.format}};
}

json class_json(const ClassAReport& r)
{
    return {{"verdict", to_string(r.verdict)},
            {"deltas", arr(r.deltas)},
            {"defects", arr(r.defects)},
            {"tol", r.options.tol},
            {"max_k", r.options.max_k}};
}

std::string scalar_text(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_float())
        return io::format_double(v.get<double>());
    if (v.is_null())
        return "nan";
    return v.dump();
}

void write_csv(const json& report, std::ostream& out)
{
    if (report.contains("curves") && report["curves"].is_object() && !report["curves"].empty()) {
        const auto& curves = report["curves"];
        std::size_t rows = 0;
        bool first = true;
        for (auto it = curves.begin(); it != curves.end(); ++it) {
            out << (first ? "" : ",") << it.key();
            rows = std::max(rows, it.value().size());
            first = false;
        }
        out << '\n';
        for (std::size_t i = 0; i < rows; ++i) {
            first = true;
            for (auto it = curves.begin(); it != curves.end(); ++it) {
                out << (first ? "" : ",");
                if (i < it.value().size())
                    out << scalar_text(it.value()[i]);
                first = false;
            }
            out << '\n';
        }
        return;
    }
    out << "key,value\n";
    for (auto it = report.begin(); it != report.end(); ++it)
        if (it.value().is_primitive())
            out << it.key() << ',' << scalar_text(it.value()) << '\n';
}

int emit(const Common& c, const json& report, std::ostream& out, int code, bool use_output = true)
{
    std::ofstream file;
    std::ostream* dst = &out;
    if (use_output && !c.output.empty()) {
        file.open(c.output);
        if (!file)
            throw InvalidInput("cannot write '" + c.output + "'");
        dst = &file;
    }
    if (c.format == "csv")
        write_csv(report, *dst);
    else
        *dst << report.dump(2) << '\n';
    return code;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_check_class_a(const Common& c, const std::string& src, std::ostream& out)
{
    const auto nu = load_measure(src, Segment::Full, c.cells);
    const auto rep = test_class_a(nu, defect_options(c));
    const auto dini = dini_modulus(inverse_distribution(nu));
    json j;
    j["config"] = config_echo("check-class-a", {src}, c);
    j["verdict"] = to_string(rep.verdict);
    j["in_class"] = rep.verdict == Membership::InClass;
    j["dini_truncated"] = num(dini.truncated);
    j["dini"] = ext(dini.dini);
    j["curves"] = {{"delta", arr(rep.deltas)}, {"defect", arr(rep.defects)}};
    return emit(c, j, out, rep.verdict == Membership::InClass ? kOk : kVerdict);
}

int cmd_check_conditions(const Common& c, const std::string& src, const std::string& kind,
                         const std::string& scale, std::ostream& out)
{
    PositiveFunction f = [&] {
        if (is_builtin(src)) {
            const auto& d = builtin_density(src.substr(kBuiltin.size()));
            return PositiveFunction::closed_form(d.name, 0.0, kTwoPi, d.log_density);
        }
        return io::read_density(src);
    }();
    if (kind != "density" && kind != "majorant")
        throw InvalidInput("--kind must be density or majorant");
    const auto logminus = condition_integral(ConditionKind::LogMinus, f);
    const auto loglog = condition_integral(ConditionKind::LogLogPlus, f);
    json j;
    j["config"] = config_echo("check-conditions", {src}, c);
    j["config"]["kind"] = kind;
    j["logminus"] = ext(logminus);
    j["loglogplus"] = ext(loglog);
    bool ok = false;
    if (kind == "density") {
        ok = logminus.is_finite();
        j["szego"] = ok;
    } else {
        MajorantScale s;
        if (scale == "subharmonic")
            s = MajorantScale::Subharmonic;
        else if (scale == "modulus")
            s = MajorantScale::Modulus;
        else
            throw InvalidInput("--scale must be subharmonic or modulus");
        j["config"]["scale"] = scale;
        ok = loglog.is_finite();
        j["log_log_class"] = ok;
        const auto m = measure_from_majorant(f, s, c.cells);
        j["weight_normalization"] = num(m.normalization);
        j["weight_logminus"] = ext(m.logminus);
        j["weight_szego"] = m.szego;
    }
    return emit(c, j, out, ok ? kOk : kVerdict);
}

int cmd_build_domain(const Common& c, const std::string& src, std::ostream& out)
{
    const auto nu = load_measure(src, Segment::Full, c.cells);
    BuildOptions bo;
    bo.samples = c.samples;
    bo.force = c.force;
    bo.workers = c.workers;
    bo.class_options = defect_options(c);
    const auto r = build_domain(nu, bo);
    if (!c.output.empty())
        io::write_domain(c.output, r.domain);
    json j;
    j["config"] = config_echo("build-domain", {src}, c);
    j["membership"] = class_json(r.membership);
    j["samples"] = r.samples;
    j["refinement_change"] = num(r.refinement_change);
    j["converged"] = r.converged;
    j["min_radius"] = num(r.domain.min_radius());
    j["max_radius"] = num(r.domain.max_radius());
    j["domain_file"] = c.output;
    return emit(c, j, out, r.converged ? kOk : kVerdict, false);
}

json distribution_json(const AngularDistribution& d)
{
    json j;
    j["bins"] = d.bins();
    j["edges"] = arr(d.edges);
    j["masses"] = arr(d.masses);
    j["stderr"] = arr(d.stderr_);
    j["walks"] = d.walks;
    j["seed"] = d.seed;
    j["cap_hits"] = d.cap_hits;
    j["total_steps"] = d.total_steps;
    j["eps_abs"] = num(d.eps_abs);
    j["start"] = cplx(d.start);
    return j;
}

int cmd_project(const Common& c, const std::string& src, const std::string& z_text,
                std::ostream& out)
{
    const auto cfg = walk_config(c);
    const auto omega = load_domain(src);
    const auto z = parse_point(z_text, "--z");
    const auto d = wos_project(omega, z, cfg);
    json j;
    j["config"] = config_echo("project", {src}, c);
    j["config"]["z"] = cplx(z);
    const json dist = distribution_json(d);
    for (const auto& [k, v] : dist.items())
        j[k] = v;
    std::vector<double> lo(d.edges.begin(), d.edges.end() - 1);
    std::vector<double> hi(d.edges.begin() + 1, d.edges.end());
    j["curves"] = {{"edge_lo", arr(lo)}, {"edge_hi", arr(hi)}, {"mass", arr(d.masses)},
                   {"stderr", arr(d.stderr_)}};
    return emit(c, j, out, kOk);
}

int cmd_roundtrip(const Common& c, const std::string& src, double ks_max, std::ostream& out)
{
    const auto cfg = walk_config(c);
    const auto nu = load_measure(src, Segment::Full, c.cells);
    BuildOptions bo;
    bo.samples = c.samples;
    bo.force = c.force;
    bo.workers = c.workers;
    bo.class_options = defect_options(c);
    const auto r = build_domain(nu, bo);
    const auto d = wos_project(r.domain, 0.0, cfg);
    const double ks = ks_distance(d, nu);
    json j;
    j["config"] = config_echo("roundtrip", {src}, c);
    j["config"]["ks_max"] = ks_max;
    j["membership"] = class_json(r.membership);
    j["domain_samples"] = r.samples;
    j["ks"] = num(ks);
    j["ks_pass"] = ks <= ks_max;
    j["cap_hits"] = d.cap_hits;
    std::vector<double> nu_mass;
    for (int k = 0; k < d.bins(); ++k)
        nu_mass.push_back(nu.mass(d.edges[k], d.edges[k + 1]));
    j["curves"] = {{"edge_lo", arr(std::vector<double>(d.edges.begin(), d.edges.end() - 1))},
                   {"mass", arr(d.masses)},
                   {"stderr", arr(d.stderr_)},
                   {"nu_mass", arr(nu_mass)}};
    return emit(c, j, out, ks <= ks_max ? kOk : kVerdict);
}

int cmd_bound_constant(const Common& c, const std::string& domain_src, const std::string& nu_src,
                       const std::string& center, double radius, int points, double floor,
                       std::ostream& out)
{
    const auto cfg = walk_config(c);
    const auto omega = load_domain(domain_src);
    const auto nu = load_measure(nu_src, Segment::Full, c.cells);
    BoundOptions bo;
    bo.points = points;
    bo.mass_floor = floor;
    const Disk k{parse_point(center, "--center"), radius};
    const auto rep = bound_constant(omega, k, nu, cfg, bo);
    json j;
    j["config"] = config_echo("bound-constant", {domain_src, nu_src}, c);
    j["config"]["center"] = cplx(k.center);
    j["config"]["radius"] = radius;
    j["config"]["points"] = points;
    j["config"]["mass_floor"] = floor;
    j["constant"] = num(rep.constant);
    j["stderr"] = num(rep.stderr_);
    j["argmax_point"] = cplx(rep.argmax_point);
    j["argmax_bin"] = rep.argmax_bin;
    j["excluded_bins"] = rep.excluded_bins;
    j["note"] = "empirical lower estimate of the supremum";
    j["curves"] = {{"point_index", json::array()}, {"per_point_max", arr(rep.per_point_max)}};
    for (std::size_t i = 0; i < rep.per_point_max.size(); ++i)
        j["curves"]["point_index"].push_back(i);
    return emit(c, j, out, kOk);
}

struct GridFlags {
    double t_min = 0.5;
    double t_max = 64.0;
    int t_count = 25;
};

int cmd_theorem1(const Common& c, const std::string& src, const TestFunction& u, double A,
                 const GridFlags& g, int theta_samples, bool integrated, std::ostream& out)
{
    const auto nu = load_measure(src, Segment::Full, c.cells);
    const auto membership = test_class_a(nu, defect_options(c));
    json j;
    j["config"] = config_echo("theorem1", {src}, c);
    j["config"]["function"] = u.name();
    j["config"]["A"] = A;
    j["config"]["t_grid"] = {g.t_min, g.t_max, g.t_count};
    j["membership"] = class_json(membership);
    if (membership.verdict != Membership::InClass && !c.force) {
        j["error"] = "measure is not certified in class A; rerun with --force to profile anyway";
        return emit(c, j, out, kVerdict);
    }
    Theorem1Options opt;
    opt.theta_samples = theta_samples;
    opt.integrated = integrated;
    opt.workers = c.workers;
    const auto grid = geometric_grid(g.t_min, g.t_max, g.t_count);
    const auto r = theorem1_profile(u, nu, grid, A, opt);
    j["c_fit"] = num(r.c_fit);
    j["unbounded"] = r.unbounded;
    json curves = {{"t", arr(r.grid)}, {"L", arr(r.L)},         {"V", arr(r.V)},
                   {"S", arr(r.S)},    {"V_At", arr(r.V_at)}, {"ratio", arr(r.ratio)}};
    if (integrated) {
        j["c_fit_integrated"] = num(r.c_fit_integrated);
        j["unbounded_integrated"] = r.unbounded_integrated;
        curves["W_At"] = arr(r.W_at);
        curves["ratio_integrated"] = arr(r.ratio_integrated);
    }
    j["curves"] = curves;
    return emit(c, j, out, r.unbounded ? kVerdict : kOk);
}

int cmd_phragmen(const Common& c, const std::string& src, const TestFunction& u,
                 const GridFlags& g, std::ostream& out)
{
    const auto nu = load_measure(src, Segment::Half, c.cells);
    const auto grid = geometric_grid(g.t_min, g.t_max, g.t_count);
    const auto r = phragmen_check(u, nu, grid);
    json j;
    j["config"] = config_echo("phragmen", {src}, c);
    j["config"]["function"] = u.name();
    j["config"]["t_grid"] = {g.t_min, g.t_max, g.t_count};
    j["h1_boundary"] = r.h1;
    j["h2_growth"] = r.h2;
    j["conclusion"] = r.conclusion;
    j["violation"] = r.violation;
    j["verdict"] = r.verdict();
    j["boundary_max"] = num(r.boundary_max);
    j["interior_max"] = num(r.interior_max);
    j["interior_argmax"] = cplx(r.interior_argmax);
    j["curves"] = {{"t", arr(r.grid)}, {"L", arr(r.L)}, {"growth", arr(r.growth)}};
    return emit(c, j, out, r.violation ? kVerdict : kOk);
}

int cmd_levinson(const Common& c, const std::string& src, const TestFunction& u, int x_count,
                 const std::string& compact, std::ostream& out)
{
    const auto nu = load_measure(src, Segment::Sym, c.cells);
    const auto kv = parse_list(compact, "--compact");
    if (kv.size() != 4)
        throw InvalidInput("--compact needs x0,x1,y0,y1");
    if (x_count < 1)
        throw RangeError("--x-count must be positive");
    std::vector<double> xs;
    for (int k = 1; k <= x_count; ++k)
        xs.push_back(-1.0 + 2.0 * k / (x_count + 1));
    const auto r = levinson_profile(u, nu, xs, Rect{kv[0], kv[1], kv[2], kv[3]});
    json j;
    j["config"] = config_echo("levinson", {src}, c);
    j["config"]["function"] = u.name();
    j["config"]["compact"] = kv;
    j["sup_line"] = num(r.sup_line);
    j["bounded"] = r.bounded;
    j["normalized"] = r.normalized;
    j["sup_compact"] = num(r.sup_compact);
    j["argmax"] = cplx(r.argmax);
    j["conclusion"] = r.conclusion;
    j["curves"] = {{"x", arr(r.grid)}, {"line_integral", arr(r.line_integral)}};
    const bool violation = r.normalized && !r.conclusion;
    return emit(c, j, out, violation ? kVerdict : kOk);
}

int cmd_matsaev(const Common& c, const std::string& phi, double tau, double delta, int grid,
                const std::vector<double>& zeros, const GridFlags& g, std::ostream& out)
{
    auto w = builtin_phi(phi, tau);
    if (delta > 0.0) {
        w.delta = delta;
        w.validate();
    }
    if (grid < 2)
        throw RangeError("--grid must be at least 2");
    std::vector<double> theta;
    std::vector<double> f;
    std::vector<double> psi;
    double worst = kInf;
    for (int k = 0; k < grid; ++k) {
        theta.push_back(kPi * k / (grid - 1));
        f.push_back(matsaev_weight(w, theta.back()));
        psi.push_back(psi_weight(w, theta.back()));
        worst = std::min(worst, psi.back() - f.back());
    }
    const auto lm = matsaev_logminus(w);
    json j;
    j["config"] = config_echo("matsaev", {}, c);
    j["config"]["phi"] = phi;
    j["config"]["tau"] = tau;
    j["config"]["grid"] = grid;
    j["beta"] = num(w.beta());
    j["f_mid"] = num(matsaev_weight(w, 0.5 * kPi));
    j["logminus_f"] = ext(lm);
    j["min_psi_minus_f"] = num(worst);
    j["psi_dominates"] = worst >= 0.0;
    std::vector<std::complex<double>> zs(zeros.begin(), zeros.end());
    if (zs.empty())
        zs = {-1.0, 1.0};
    const auto u = TestFunction::log_abs_entire(zs);
    const auto prof = matsaev_profile(u, w, geometric_grid(g.t_min, g.t_max, g.t_count));
    j["config"]["zeros"] = arr(std::vector<double>(zeros.begin(), zeros.end()));
    j["profile_c_fit"] = num(prof.c_fit);
    j["profile_unbounded"] = prof.unbounded;
    j["curves"] = {{"r", arr(prof.grid)},
                   {"lhs", arr(prof.lhs)},
                   {"hyp", arr(prof.hyp)},
                   {"V", arr(prof.V)},
                   {"ratio", arr(prof.ratio)}};
    const bool ok = worst >= 0.0 && lm.is_finite();
    return emit(c, j, out, ok ? kOk : kVerdict);
}

int cmd_carleman(const Common& c, const TestFunction& u, const SectorSpec& s, int quad_n,
                 double max_residual, std::ostream& out)
{
    const auto t = carleman_terms(u, s, quad_n);
    json j;
    j["config"] = config_echo("carleman-identity", {}, c);
    j["config"]["function"] = u.name();
    j["config"]["sector"] = {{"r", s.r}, {"R", s.R}, {"a", s.a}};
    j["config"]["quad_n"] = quad_n;
    j["config"]["max_residual"] = max_residual;
    j["outer"] = num(t.outer);
    j["inner"] = num(t.inner);
    j["derivative"] = num(t.derivative);
    j["sides"] = num(t.sides);
    j["residual"] = num(t.residual);
    j["pass"] = t.residual <= max_residual;
    return emit(c, j, out, t.residual <= max_residual ? kOk : kVerdict);
}

int cmd_sample_measure(const Common& c, const std::string& name, const std::string& seg,
                       std::ostream& out)
{
    Segment s = Segment::Full;
    if (seg == "half")
        s = Segment::Half;
    else if (seg == "sym")
        s = Segment::Sym;
    else if (seg != "full")
        throw InvalidInput("--segment must be full, half or sym");
    const auto nu = load_measure(std::string(kBuiltin) + name, s, c.cells);
    if (c.output.empty()) {
        io::write_measure(out, nu);
    } else {
        io::write_measure(c.output, nu);
    }
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Star-shaped domains with prescribed radial projections of harmonic measure"};
    app.require_subcommand(1);
    app.name("starharm-cli");

    Common c;
    std::string src;
    std::string src2;
    std::string function = "re_z";
    std::string zeros_text;
    std::string z_text = "0,0";
    std::string center = "0,0";
    std::string compact = "-0.5,0.5,-0.5,0.5";
    std::string kind = "density";
    std::string scale = "subharmonic";
    std::string phi = "1";
    std::string segment = "full";
    double radius = 0.0;
    int points = 8;
    double mass_floor = 1e-3;
    double ks_max = 0.02;
    double A = 1.0;
    int theta_samples = 720;
    bool integrated = false;
    GridFlags grid;
    int x_count = 33;
    double tau = 0.2;
    double delta = 0.0;
    int weight_grid = 1024;
    SectorSpec sector;
    int quad_n = 1024;
    double max_residual = 1e-6;

    auto common = [&](CLI::App* s) {
        s->add_option("--walks", c.walks, "walk-on-spheres trajectories");
        s->add_option("--eps", c.eps, "absorption shell relative to the maximal radius");
        s->add_option("--seed", c.seed, "master seed");
        s->add_option("--bins", c.bins, "angular bins");
        s->add_option("--workers", c.workers, "worker threads");
        s->add_option("--samples", c.samples, "initial boundary samples for domain builds");
        s->add_option("--tol", c.tol, "class-A defect tolerance");
        s->add_option("--delta-min", c.delta_min, "smallest dyadic scale of the class-A test");
        s->add_option("--cells", c.cells, "cells for built-in measures");
        s->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("-o,--output", c.output, "output file");
        s->add_flag("--force", c.force, "proceed when the class-A verdict is not 'in A'");
    };
    auto function_opts = [&](CLI::App* s) {
        s->add_option("--function", function, "test function name");
        s->add_option("--zeros", zeros_text, "real zeros for log_abs, comma-separated");
    };
    auto grid_opts = [&](CLI::App* s) {
        s->add_option("--t-min", grid.t_min, "smallest radius of the grid");
        s->add_option("--t-max", grid.t_max, "largest radius of the grid");
        s->add_option("--t-count", grid.t_count, "number of geometric grid points");
    };

    auto* check = app.add_subcommand("check-class-a", "dyadic defect sequence and class-A verdict");
    check->add_option("measure", src, "measure CSV (t,nu) or builtin:NAME")->required();
    common(check);

    auto* cond = app.add_subcommand("check-conditions", "log-minus and log-log-plus integrals");
    cond->add_option("density", src, "density CSV (t,value) or builtin:NAME")->required();
    cond->add_option("--kind", kind, "density or majorant");
    cond->add_option("--scale", scale, "majorant scale: subharmonic or modulus");
    common(cond);

    auto* build = app.add_subcommand("build-domain", "construct r(theta) from a measure");
    build->add_option("measure", src, "measure CSV (t,nu) or builtin:NAME")->required();
    common(build);

    auto* project = app.add_subcommand("project", "walk-on-spheres radial projection");
    project->add_option("domain", src, "domain CSV (theta,r) or builtin:disk")->required();
    project->add_option("--z", z_text, "start point x,y");
    common(project);

    auto* roundtrip = app.add_subcommand("roundtrip", "build, project from 0 and compare");
    roundtrip->add_option("measure", src, "measure CSV (t,nu) or builtin:NAME")->required();
    roundtrip->add_option("--ks-max", ks_max, "largest acceptable KS distance");
    common(roundtrip);

    auto* bound = app.add_subcommand("bound-constant", "empirical C(K) for a disk K");
    bound->add_option("domain", src, "domain CSV (theta,r) or builtin:disk")->required();
    bound->add_option("measure", src2, "measure CSV (t,nu) or builtin:NAME")->required();
    bound->add_option("--center", center, "centre of K as x,y");
    bound->add_option("--radius", radius, "radius of K");
    bound->add_option("--points", points, "sample points on the boundary of K");
    bound->add_option("--mass-floor", mass_floor, "exclude bins with less nu-mass");
    common(bound);

    auto* th1 = app.add_subcommand("theorem1", "growth profile against a class-A measure");
    th1->add_option("measure", src, "measure CSV on [0, 2*pi] or builtin:NAME")->required();
    th1->add_option("--A", A, "radius distortion factor");
    th1->add_option("--theta-samples", theta_samples, "angular samples for the circle supremum");
    th1->add_flag("--integrated", integrated, "also fit the integrated bound");
    function_opts(th1);
    grid_opts(th1);
    common(th1);

    auto* ph = app.add_subcommand("phragmen", "half-plane hypotheses and conclusion check");
    ph->add_option("measure", src, "measure CSV on [0, pi] or builtin:NAME")->required();
    function_opts(ph);
    grid_opts(ph);
    common(ph);

    auto* lev = app.add_subcommand("levinson", "vertical line integrals in the square");
    lev->add_option("measure", src, "measure CSV on [-1, 1] or builtin:NAME")->required();
    lev->add_option("--x-count", x_count, "vertical lines");
    lev->add_option("--compact", compact, "K as x0,x1,y0,y1");
    function_opts(lev);
    common(lev);

    auto* mat = app.add_subcommand("matsaev", "weights f and Psi and the weighted profile");
    mat->add_option("--phi", phi, "Phi: 1, t or t2");
    mat->add_option("--tau", tau, "tau in (0, 1/4)");
    mat->add_option("--delta", delta, "growth margin delta; requires 1/(1-2 tau) < 1 + delta");
    mat->add_option("--grid", weight_grid, "theta grid for the Psi >= f check");
    mat->add_option("--zeros", zeros_text, "real zeros of the log-modulus test function");
    grid_opts(mat);
    common(mat);

    auto* carl = app.add_subcommand("carleman-identity", "residual of Carleman's sector formula");
    carl->add_option("--r", sector.r, "inner radius");
    carl->add_option("--R", sector.R, "outer radius");
    carl->add_option("--a", sector.a, "opening parameter in (0, 1/4)");
    carl->add_option("--quad-n", quad_n, "Simpson panels per term");
    carl->add_option("--max-residual", max_residual, "largest acceptable residual");
    function_opts(carl);
    common(carl);

    auto* sample = app.add_subcommand("sample-measure", "write a built-in measure as CSV");
    sample->add_option("name", src, "uniform, cos, sin2, expcos, flat, cusp, sqrt, nonmember")
        ->required();
    sample->add_option("--segment", segment, "full [0, 2*pi], half [0, pi] or sym [-1, 1]");
    common(sample);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        err << "error: " << e.what() << '\n';
        return kInput;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        const auto zeros = zeros_text.empty() ? std::vector<double>{}
                                              : parse_list(zeros_text, "--zeros");
        if (name == "check-class-a")
            return cmd_check_class_a(c, src, out);
        if (name == "check-conditions")
            return cmd_check_conditions(c, src, kind, scale, out);
        if (name == "build-domain")
            return cmd_build_domain(c, src, out);
        if (name == "project")
            return cmd_project(c, src, z_text, out);
        if (name == "roundtrip")
            return cmd_roundtrip(c, src, ks_max, out);
        if (name == "bound-constant")
            return cmd_bound_constant(c, src, src2, center, radius, points, mass_floor, out);
        if (name == "theorem1")
            return cmd_theorem1(c, src, make_function(function, zeros), A, grid, theta_samples,
                                integrated, out);
        if (name == "phragmen")
            return cmd_phragmen(c, src, make_function(function, zeros), grid, out);
        if (name == "levinson")
            return cmd_levinson(c, src, make_function(function, zeros), x_count, compact, out);
        if (name == "matsaev")
            return cmd_matsaev(c, phi, tau, delta, weight_grid, zeros, grid, out);
        if (name == "carleman-identity")
            return cmd_carleman(c, make_function(function, zeros), sector, quad_n, max_residual,
                                out);
        if (name == "sample-measure")
            return cmd_sample_measure(c, src, segment, out);
        err << "error: unknown subcommand '" << name << "'\n";
        return kInput;
    } catch (const ClassMembershipError& e) {
        err << "verdict: " << e.what() << '\n';
        return kVerdict;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    }
}

}  // namespace starharm::cli
