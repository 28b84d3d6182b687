// Acceptance checks. Each criterion prints one PASS/FAIL line; the exit code
// is non-zero when any selected criterion fails. `--only N` runs one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "starharm/builtin.hpp"
#include "starharm/construction.hpp"
#include "starharm/harmonic_measure.hpp"
#include "starharm/harness.hpp"
#include "starharm/measures.hpp"

using namespace starharm;

namespace {

using cplx = std::complex<double>;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kDiskRadiusTol = 1e-10;
constexpr double kDiskSeconds = 1.0;
constexpr int kDiskSamples = 4096;

constexpr std::uint64_t kMcWalks = 100000;
constexpr double kMcEps = 1e-4;
constexpr int kMcBins = 64;
constexpr int kMcWorkers = 4;
constexpr double kMcSigmas = 3.0;
constexpr int kMcMinBins = 61;
constexpr double kMcSeconds = 30.0;
constexpr int kMcDiskChords = 4096;

constexpr std::uint64_t kRoundTripWalks = 100000;
constexpr double kRoundTripKs = 0.02;
constexpr int kRoundTripSeeds = 5;
constexpr double kDoublingFactor = 0.5;

constexpr int kClassMaxK = 14;
constexpr double kClassTol = 1e-2;
constexpr int kNonmemberMaxK = 20;
constexpr double kNonmemberFloor = 0.1;

constexpr double kConditionTol = 1e-8;

constexpr double kCarlemanResidual = 1e-6;
constexpr int kCarlemanQuad = 1024;
constexpr double kCarlemanOrder = 2.0;

constexpr double kRadialLogTol = 1e-10;
constexpr double kReZTol = 1e-6;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<double> geometric(double lo, double hi, int n)
{
    std::vector<double> t;
    for (int i = 0; i < n; ++i)
        t.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return t;
}

Outcome disk_fixed_point()
{
    const auto t0 = Clock::now();
    BuildOptions opt;
    opt.samples = kDiskSamples;
    const auto res = build_domain(SegmentMeasure::uniform(0.0, kTwoPi), opt);
    const double secs = seconds_since(t0);
    double dev = 0.0;
    for (const auto& s : res.domain.samples())
        dev = std::max(dev, std::abs(s.r - 1.0));
    const bool ok = dev <= kDiskRadiusTol && secs < kDiskSeconds;
    return {ok, "max|r-1| = " + fmt("%.3g", dev) + " (tol 1e-10), " + fmt("%.3f", secs) + " s (limit 1 s)"};
}

Outcome monte_carlo_disk()
{
    const auto disk = StarShapedDomain::disk(1.0, kMcDiskChords);
    WalkConfig c;
    c.walks = kMcWalks;
    c.eps = kMcEps;
    c.bins = kMcBins;
    c.workers = kMcWorkers;
    const cplx z(0.5, 0.0);
    const auto t0 = Clock::now();
    const auto d = wos_project(disk, z, c);
    const double secs = seconds_since(t0);
    int good = 0;
    for (int k = 0; k < kMcBins; ++k) {
        const double exact = disk_harmonic_measure(z, d.edges[k], d.edges[k + 1]);
        if (std::abs(d.masses[k] - exact) <= kMcSigmas * d.stderr_[k])
            ++good;
    }
    const bool ok = good >= kMcMinBins && secs < kMcSeconds;
    return {ok, std::to_string(good) + "/64 bins within 3 se (need 61), " + fmt("%.2f", secs) +
                    " s on 4 workers (limit 30 s)"};
}

Outcome round_trip()
{
    std::ostringstream msg;
    bool ok = true;
    for (const auto& dens : szego_family()) {
        const auto nu = builtin_measure(dens.name);
        const auto dom = build_domain(nu).domain;
        WalkConfig c;
        c.walks = kRoundTripWalks;
        c.workers = kMcWorkers;
        double ks_n = 0.0;
        double ks_2n = 0.0;
        double worst = 0.0;
        for (int s = 0; s < kRoundTripSeeds; ++s) {
            c.seed = 1000 + static_cast<std::uint64_t>(s);
            c.walks = kRoundTripWalks;
            const double a = ks_distance(wos_project(dom, 0.0, c), nu);
            c.walks = 2 * kRoundTripWalks;
            const double b = ks_distance(wos_project(dom, 0.0, c), nu);
            worst = std::max(worst, a);
            ks_n += a / kRoundTripSeeds;
            ks_2n += b / kRoundTripSeeds;
        }
        const bool ks_ok = worst <= kRoundTripKs;
        const bool halves = ks_2n <= kDoublingFactor * ks_n;
        ok = ok && ks_ok && halves;
        msg << dens.name << ": max KS " << fmt("%.4f", worst) << (ks_ok ? " <= " : " > ") << "0.02, mean KS "
            << fmt("%.4f", ks_n) << " -> " << fmt("%.4f", ks_2n) << " on doubling (ratio "
            << fmt("%.3f", ks_2n / ks_n) << ", need <= 0.5); ";
    }
    return {ok, msg.str()};
}

Outcome class_calibration()
{
    std::ostringstream msg;
    bool ok = true;
    DefectOptions opt;
    opt.max_k = kClassMaxK;
    opt.tol = kClassTol;

    auto member = [&](const std::string& name, const ClassAReport& rep) {
        const double last = rep.defects.back();
        const bool pass = rep.verdict == Membership::InClass && last < kClassTol;
        ok = ok && pass;
        msg << name << ": D(2^-14) = " << fmt("%.4g", last) << ", " << to_string(rep.verdict) << "; ";
    };
    member("uniform", test_class_a(SegmentMeasure::uniform(0.0, kTwoPi), opt));
    // nu(t) = t^2 on [0, 1] has inverse mu(s) = sqrt(s).
    const auto sq = SegmentMeasure::from_cdf([](double t) { return t * t; }, 0.0, 1.0, 4096);
    member("sqrt", test_class_a(sq, opt));
    for (const auto& dens : szego_family())
        member(dens.name, test_class_a(builtin_measure(dens.name), opt));

    DefectOptions deep = opt;
    deep.max_k = kNonmemberMaxK;
    const auto nm = test_class_a(nonmember_profile(), deep);
    const double low = *std::min_element(nm.defects.begin(), nm.defects.end());
    const bool nm_ok = nm.verdict == Membership::NotInClass && low > kNonmemberFloor;
    ok = ok && nm_ok;
    msg << "1/log(e/t): min_{k<=20} D = " << fmt("%.4g", low) << ", " << to_string(nm.verdict);
    return {ok, msg.str()};
}

Outcome condition_closed_forms()
{
    const auto exp_inv = PositiveFunction::closed_form("exp(1/t)", 0.0, 1.0, [](double t) { return 1.0 / t; });
    const auto id = PositiveFunction::closed_form("t", 0.0, 1.0, [](double t) { return std::log(t); });
    const auto ee = PositiveFunction::double_exponential("exp(exp(1/t))", 0.0, 1.0, [](double t) { return 1.0 / t; });
    const auto flat = PositiveFunction::closed_form("exp(-1/t)", 0.0, 1.0, [](double t) { return -1.0 / t; });
    const auto a = condition_integral(ConditionKind::LogLogPlus, exp_inv);
    const auto b = condition_integral(ConditionKind::LogMinus, id);
    const bool div1 = condition_integral(ConditionKind::LogLogPlus, ee).divergent;
    const bool div2 = condition_integral(ConditionKind::LogMinus, flat).divergent;
    const bool ok = a.is_finite() && std::abs(a.value - 1.0) <= kConditionTol && b.is_finite() &&
                    std::abs(b.value - 1.0) <= kConditionTol && div1 && div2;
    return {ok, "loglog+ exp(1/t) = " + fmt("%.12f", a.value) + ", log- t = " + fmt("%.12f", b.value) +
                    " (tol 1e-8); divergent flagged: " + (div1 && div2 ? "yes" : "no")};
}

Outcome matsaev_weights()
{
    bool ok = true;
    double worst_mid = 0.0;
    double worst_gap = kInf;
    double min_f = kInf;
    bool finite = true;
    for (const char* name : {"1", "t", "t2"}) {
        for (double tau : {0.1, 0.2}) {
            const auto w = builtin_phi(name, tau);
            const double expect = tau * tau * w.phi(std::sin(kPi * tau / 2.0));
            const double got = matsaev_weight(w, kPi / 2.0);
            worst_mid = std::max(worst_mid, std::abs(got - expect) / expect);
            for (int i = 0; i < 1024; ++i) {
                const double th = kPi * i / 1023.0;
                const double f = matsaev_weight(w, th);
                worst_gap = std::min(worst_gap, psi_weight(w, th) - f);
                min_f = std::min(min_f, f);
            }
            finite = finite && matsaev_logminus(w).is_finite();
        }
    }
    // "Exactly" is read as agreement to one rounding of the closed form.
    ok = worst_mid <= 4.0 * std::numeric_limits<double>::epsilon() && worst_gap >= 0.0 && min_f >= 0.0 && finite;
    return {ok, "f(pi/2) rel err " + fmt("%.2g", worst_mid) + ", min(Psi - f) = " + fmt("%.3g", worst_gap) +
                    ", min f = " + fmt("%.3g", min_f) + ", int log- f finite: " + (finite ? "yes" : "no")};
}

Outcome carleman()
{
    const SectorSpec sector{0.5, 2.0, 0.1};
    const std::vector<std::pair<std::string, TestFunction>> fns{
        {"Im z", TestFunction::im_z()},
        {"Re z^2", TestFunction::harmonic_poly({0.0, 0.0, 1.0}, PolyPart::Real)},
        {"Im z^3", TestFunction::harmonic_poly({0.0, 0.0, 0.0, 1.0}, PolyPart::Imag)},
    };
    std::ostringstream msg;
    bool ok = true;
    for (const auto& [name, u] : fns) {
        const double r1 = carleman_identity_residual(u, sector, kCarlemanQuad / 4);
        const double r2 = carleman_identity_residual(u, sector, kCarlemanQuad / 2);
        const double r3 = carleman_identity_residual(u, sector, kCarlemanQuad);
        const double order = std::log2(r2 / r3);
        const bool pass = r3 <= kCarlemanResidual && r3 < r2 && r2 < r1 && order >= kCarlemanOrder;
        ok = ok && pass;
        msg << name << ": " << fmt("%.3g", r1) << " -> " << fmt("%.3g", r2) << " -> " << fmt("%.3g", r3)
            << " (order " << fmt("%.2f", order) << "); ";
    }
    return {ok, msg.str()};
}

Outcome theorem1_closed_forms()
{
    const auto grid = geometric(0.5, 50.0, 25);
    const auto rl = theorem1_profile(TestFunction::radial_log(), builtin_measure("cos"), grid, 1.0);
    const auto re = theorem1_profile(TestFunction::re_z(), SegmentMeasure::uniform(0.0, kTwoPi), grid, 1.0);
    const bool ok = std::abs(rl.c_fit - 1.0) <= kRadialLogTol && std::abs(re.c_fit - kPi) <= kReZTol;
    return {ok, "RadialLog c = " + fmt("%.14f", rl.c_fit) + " (1 +- 1e-10), Re z c = " + fmt("%.10f", re.c_fit) +
                    " (pi +- 1e-6)"};
}

Outcome falsification()
{
    int violations = 0;
    int pairs = 0;
    const auto t_grid = geometric(1.0, 1e3, 25);
    std::vector<std::string> names{"uniform"};
    for (const auto& d : builtin_densities())
        names.push_back(d.name);
    for (const auto& name : names) {
        const auto nu = builtin_measure(name, 0.0, kPi, 256);
        for (const auto& u : half_plane_test_family()) {
            const auto rep = phragmen_check(u, nu, t_grid);
            ++pairs;
            if (rep.h1 && rep.h2 && !rep.conclusion)
                ++violations;
        }
    }

    int bad_fits = 0;
    int fits = 0;
    const auto r_grid = geometric(0.5, 20.0, 15);
    std::string first_bad;
    for (const auto& dens : szego_family()) {
        const auto nu = builtin_measure(dens.name);
        for (const auto& u : plane_test_family()) {
            const auto rep = theorem1_profile(u, nu, r_grid, 2.0);
            ++fits;
            if (!std::isfinite(rep.c_fit) || rep.unbounded) {
                ++bad_fits;
                if (first_bad.empty())
                    first_bad = dens.name + "/" + u.name();
            }
        }
    }
    const bool ok = violations == 0 && bad_fits == 0;
    std::string detail = std::to_string(violations) + " violations in " + std::to_string(pairs) +
                         " Phragmen-Lindelof pairs; " + std::to_string(bad_fits) + "/" + std::to_string(fits) +
                         " non-finite fits at A = 2";
    if (!first_bad.empty())
        detail += " (first: " + first_bad + ")";
    return {ok, detail};
}

Outcome reproducibility()
{
    BuildOptions bo;
    bo.samples = 512;
    const auto dom = build_domain(builtin_measure("expcos"), bo).domain;
    WalkConfig c;
    c.walks = 20000;
    c.seed = 2024;
    c.workers = 1;
    const cplx z(0.1, -0.2);
    const auto ref = wos_project(dom, z, c);
    bool ok = true;
    for (int w : {2, 8}) {
        c.workers = w;
        const auto d = wos_project(dom, z, c);
        ok = ok && d.counts == ref.counts && d.masses == ref.masses && d.stderr_ == ref.stderr_ &&
             d.cap_hits == ref.cap_hits && d.total_steps == ref.total_steps;
    }
    return {ok, std::string("counts, masses, errors and step totals ") + (ok ? "identical" : "differ") +
                    " across 1, 2 and 8 workers"};
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv)
{
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--only N]\n");
            return 2;
        }
    }

    const std::vector<Criterion> all{
        {1, "disk fixed point", disk_fixed_point},
        {2, "Monte Carlo vs closed form on the disk", monte_carlo_disk},
        {3, "round trip for Szego densities", round_trip},
        {4, "class-A tester calibration", class_calibration},
        {5, "condition integrals", condition_closed_forms},
        {6, "weights f and Psi", matsaev_weights},
        {7, "Carleman sector identity", carleman},
        {8, "growth profile closed forms", theorem1_closed_forms},
        {9, "falsification suites", falsification},
        {10, "reproducibility across workers", reproducibility},
    };
    if (only < 0 || only > static_cast<int>(all.size())) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }

    int failed = 0;
    for (const auto& c : all) {
        if (only != 0 && c.id != only)
            continue;
        Outcome o{false, ""};
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass)
            ++failed;
    }
    return failed == 0 ? 0 : 1;
}
