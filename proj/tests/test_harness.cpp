#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "starharm/builtin.hpp"
#include "starharm/error.hpp"
#include "starharm/harness.hpp"

using namespace starharm;

namespace {

using cplx = std::complex<double>;

std::vector<double> geometric(double lo, double hi, int n)
{
    std::vector<double> t;
    for (int i = 0; i < n; ++i)
        t.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return t;
}

// int g dnu by Gauss-Kronrod on every segment of nu.
double against_oracle(const SegmentMeasure& nu, const std::function<double(double)>& g)
{
    const auto nodes = nu.nodes();
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        s += nu.density(i) *
             boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, nodes[i].t, nodes[i + 1].t, 10, 1e-14);
    }
    return s;
}

double psi_simpson(const MatsaevWeight& w, double theta, int panels)
{
    const double lam = matsaev_lambda(w.tau, theta / kPi);
    auto g = [&](double a) { return std::sin((theta - a * kPi) / (1.0 - 2.0 * a)) * w.phi(std::sin(kPi * a)); };
    const double h = lam / panels;
    double s = g(0.0) + g(lam);
    for (int i = 1; i < panels; ++i)
        s += (i % 2 ? 4.0 : 2.0) * g(i * h);
    return s * h / 3.0;
}

}  // namespace

TEST_SUITE("harness")
{
    TEST_CASE("test function values")
    {
        CHECK(TestFunction::re_z()(std::polar(2.0, kPi / 3.0)) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(TestFunction::log_abs_entire({0.0})(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(TestFunction::square_pole()(0.0) == 1.0);
        CHECK(TestFunction::half_plane_mobius()(cplx(3.0, 0.0)) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(TestFunction::radial_log(2.0)(cplx(0.0, std::exp(1.0))) == doctest::Approx(2.0));
        CHECK(TestFunction::radial_log(2.0)(0.5) == 0.0);

        const auto u = TestFunction::harmonic_poly({0.0, 0.0, 1.0}, PolyPart::Real);
        CHECK(u(cplx(1.0, 2.0)) == doctest::Approx(-3.0));
        CHECK(u.positive(cplx(1.0, 2.0)) == 0.0);
        CHECK(u.negative(cplx(1.0, 2.0)) == doctest::Approx(3.0));

        CHECK_THROWS_AS((void)TestFunction::log_abs_entire({cplx(0.5, 0.0)})(0.5), SingularPoint);
        CHECK_THROWS_AS((void)TestFunction::half_plane_mobius()(cplx(0.0, 1.0)), SingularPoint);
        CHECK_THROWS_AS((void)TestFunction::square_pole()(1.0), SingularPoint);
    }

    TEST_CASE("radial derivative of polynomials")
    {
        const auto u = TestFunction::harmonic_poly({1.0, cplx(0.0, -2.0), 0.5, cplx(0.3, 0.1)}, PolyPart::Imag);
        for (cplx z : {std::polar(0.7, 0.3), std::polar(1.5, 2.0)}) {
            const double r = std::abs(z);
            const double th = std::arg(z);
            const double h = 1e-5;
            const double fd = (u(std::polar(r + h, th)) - u(std::polar(r - h, th))) / (2.0 * h);
            CHECK(u.radial_derivative(z) == doctest::Approx(fd).epsilon(1e-8));
        }
        CHECK(u.dilated(2.0).radial_derivative(cplx(0.5, 0.0)) == doctest::Approx(2.0 * u.radial_derivative(1.0)));
        CHECK_THROWS_AS((void)TestFunction::radial_log().radial_derivative(1.0), UnsupportedFunction);
    }

    TEST_CASE("integration against a measure")
    {
        const auto nu = builtin_measure("expcos", 0.0, kTwoPi, 200);
        auto g = [](double t) { return std::cos(t) + t * t; };
        CHECK(integrate_against(nu, g) == doctest::Approx(against_oracle(nu, g)).epsilon(1e-12));
    }

    TEST_CASE("growth profile: closed forms")
    {
        const auto grid = geometric(0.5, 50.0, 25);
        const auto rl = theorem1_profile(TestFunction::radial_log(), builtin_measure("cos"), grid, 1.0);
        CHECK(rl.c_fit == doctest::Approx(1.0).epsilon(1e-10));
        CHECK_FALSE(rl.unbounded);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(rl.L[i] == doctest::Approx(log_plus(grid[i])).epsilon(1e-10));

        const auto re = theorem1_profile(TestFunction::re_z(), SegmentMeasure::uniform(0.0, kTwoPi), grid, 1.0);
        CHECK(re.c_fit == doctest::Approx(kPi).epsilon(1e-9));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(re.L[i] == doctest::Approx(grid[i] / kPi).epsilon(1e-10));
            CHECK(re.S[i] == doctest::Approx(grid[i]).epsilon(1e-12));
        }

        // V is the running max of L and V(At) >= V(t).
        for (std::size_t i = 1; i < grid.size(); ++i)
            CHECK(re.V[i] >= re.V[i - 1]);
    }

    TEST_CASE("growth profile: flat measure at A = 2")
    {
        const auto nu = builtin_measure("flat");
        const double c_nu = against_oracle(nu, [](double t) { return std::max(std::cos(t), 0.0); });
        Theorem1Options opt;
        opt.integrated = true;
        const auto coarse = theorem1_profile(TestFunction::re_z(), nu, geometric(1.0, 64.0, 13), 2.0, opt);
        const auto fine = theorem1_profile(TestFunction::re_z(), nu, geometric(1.0, 64.0, 49), 2.0, opt);
        CHECK(std::isfinite(coarse.c_fit));
        CHECK_FALSE(coarse.unbounded);
        CHECK(coarse.c_fit == doctest::Approx(1.0 / (2.0 * c_nu)).epsilon(1e-9));
        CHECK(fine.c_fit == doctest::Approx(coarse.c_fit).epsilon(1e-9));
        CHECK(std::isfinite(fine.c_fit_integrated));
        CHECK_FALSE(fine.unbounded_integrated);
    }

    TEST_CASE("growth profile: dilation invariance")
    {
        const auto nu = builtin_measure("sin2");
        const auto grid = geometric(0.5, 20.0, 15);
        std::vector<double> scaled;
        const double k = 3.0;
        for (double t : grid)
            scaled.push_back(t / k);
        for (const auto& u : plane_test_family()) {
            CAPTURE(u.name());
            const auto a = theorem1_profile(u, nu, grid, 2.0);
            const auto b = theorem1_profile(u.dilated(k), nu, scaled, 2.0);
            CHECK(std::abs(a.c_fit - b.c_fit) <= 1e-10 * std::max(1.0, a.c_fit));
            for (std::size_t i = 0; i < grid.size(); ++i) {
                CHECK(std::abs(a.L[i] - b.L[i]) <= 1e-10 * std::max(1.0, std::abs(a.L[i])));
                CHECK(std::abs(a.S[i] - b.S[i]) <= 1e-10 * std::max(1.0, std::abs(a.S[i])));
            }
        }
    }

    TEST_CASE("growth profile: degenerate pair and input errors")
    {
        // u = Re z with nu concentrated where cos < 0 has L = 0 but S > 0.
        const SegmentMeasure left({{0.0, 0.0}, {2.0, 1e-12}, {4.2, 1.0 - 1e-12}, {kTwoPi, 1.0}});
        const auto grid = geometric(1.0, 4.0, 5);
        const auto rep = theorem1_profile(TestFunction::re_z(), left, grid, 1.0);
        CHECK(rep.c_fit > 1e6);
        CHECK_THROWS_AS(theorem1_profile(TestFunction::half_plane_mobius(), left, grid, 1.0), UnsupportedFunction);
        CHECK_THROWS_AS(theorem1_profile(TestFunction::re_z(), left, grid, 0.5), RangeError);
        const std::vector<double> bad{1.0, 0.5};
        CHECK_THROWS(theorem1_profile(TestFunction::re_z(), left, bad, 1.0));
    }

    TEST_CASE("Phragmen-Lindelof examples")
    {
        const auto nu = builtin_measure("sin2", 0.0, kPi, 256);
        const auto grid = geometric(1.0, 1e3, 31);

        const auto mob = phragmen_check(TestFunction::half_plane_mobius(), nu, grid);
        CHECK(mob.h1);
        CHECK(mob.h2);
        CHECK(mob.conclusion);
        CHECK_FALSE(mob.violation);

        const auto neg = phragmen_check(TestFunction::harmonic_poly({0.0, -1.0}, PolyPart::Imag), nu, grid);
        CHECK(neg.h1);
        CHECK(neg.h2);
        CHECK(neg.conclusion);

        const auto im = phragmen_check(TestFunction::im_z(), nu, grid);
        CHECK(im.h1);
        CHECK_FALSE(im.h2);
        CHECK_FALSE(im.violation);
        CHECK(im.verdict().find("hypothesis violated") == 0);
        const double mean_sin = against_oracle(nu, [](double t) { return std::sin(t); });
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(im.growth[i] == doctest::Approx(mean_sin).epsilon(1e-10));
    }

    TEST_CASE("Phragmen-Lindelof never reports a violation on the test family")
    {
        const auto grid = geometric(1.0, 1e3, 25);
        for (const char* name : {"uniform", "sin2", "flat"}) {
            const auto nu = builtin_measure(name, 0.0, kPi, 256);
            for (const auto& u : half_plane_test_family()) {
                CAPTURE(name);
                CAPTURE(u.name());
                const auto rep = phragmen_check(u, nu, grid);
                CHECK_FALSE(rep.violation);
                CHECK(rep.violation == (rep.h1 && rep.h2 && !rep.conclusion));
            }
        }
        CHECK_THROWS_AS(phragmen_check(TestFunction::zero(), builtin_measure("sin2"), grid), InvalidInput);
    }

    TEST_CASE("line integrals in the square")
    {
        std::vector<double> xs;
        for (int i = 0; i < 33; ++i)
            xs.push_back(-0.99 + 1.98 * i / 32);
        const Rect k{-0.5, 0.5, -0.5, 0.5};

        const auto zero = levinson_profile(TestFunction::zero(), SegmentMeasure::uniform(-1.0, 1.0), xs, k);
        CHECK(zero.sup_line == 0.0);
        CHECK(zero.sup_compact == 0.0);
        CHECK(zero.normalized);
        CHECK(zero.conclusion);

        // Uniform nu: int (1-x)/((1-x)^2+y^2) dy/2 over [-1, 1] = atan(1/(1-x)).
        const auto uni = levinson_profile(TestFunction::square_pole(), SegmentMeasure::uniform(-1.0, 1.0), xs, k);
        for (std::size_t i = 0; i < xs.size(); ++i)
            CHECK(uni.line_integral[i] == doctest::Approx(std::atan(1.0 / (1.0 - xs[i]))).epsilon(1e-10));
        CHECK(uni.bounded);
        CHECK(uni.sup_line < kPi / 2.0);
        CHECK_FALSE(uni.normalized);
        CHECK(uni.conclusion);
        CHECK(uni.sup_compact == doctest::Approx(2.0).epsilon(1e-12));

        // The flat-at-0 density keeps the line integrals bounded near x = 1.
        const auto flat = levinson_profile(TestFunction::square_pole(), builtin_measure("cusp", -1.0, 1.0), xs, k);
        CHECK(flat.bounded);
        CHECK(flat.conclusion);
        CHECK(flat.line_integral.back() < uni.line_integral.back());

        CHECK_THROWS_AS(levinson_profile(TestFunction::zero(), SegmentMeasure::uniform(-1.0, 1.0), xs,
                                         Rect{-0.5, 1.0, -0.5, 0.5}),
                        GeometryError);
        CHECK_THROWS_AS(levinson_profile(TestFunction::zero(), SegmentMeasure::uniform(0.0, 1.0), xs, k),
                        InvalidInput);
    }

    TEST_CASE("weight f: values and symmetry")
    {
        const auto one = builtin_phi("1", 0.2);
        CHECK(matsaev_lambda(0.2, 0.5) == 0.2);
        CHECK(matsaev_weight(one, kPi / 2.0) == doctest::Approx(0.04).epsilon(1e-15));
        CHECK(matsaev_weight(one, 0.0) == 0.0);
        CHECK(matsaev_weight(one, 1e-6) < 1e-12);
        for (const char* name : {"1", "t", "t2"}) {
            for (double tau : {0.1, 0.2}) {
                const auto w = builtin_phi(name, tau);
                for (int i = 0; i <= 1024; ++i) {
                    const double s = i / 1024.0;
                    CHECK(matsaev_weight_fraction(w, s) == matsaev_weight_fraction(w, 1.0 - s));
                    CHECK(matsaev_weight_fraction(w, s) >= 0.0);
                }
            }
        }
        CHECK_THROWS_AS(builtin_phi("1", 0.25).validate(), RangeError);
        CHECK_THROWS_AS((void)matsaev_weight(builtin_phi("1", 0.0), 1.0), RangeError);
        CHECK_THROWS_AS(matsaev_lambda(0.3, 0.5), RangeError);

        auto w = builtin_phi("1", 0.2);
        w.delta = 1.0;
        CHECK_NOTHROW(w.validate());
        w.delta = 0.5;  // beta = 5/3 is not below 1.5
        CHECK_THROWS_AS(w.validate(), RangeError);
    }

    TEST_CASE("weight f is in L-minus")
    {
        const auto t2 = builtin_phi("t2", 0.1);
        const auto lm = matsaev_logminus(t2);
        REQUIRE(lm.is_finite());
        // Independent route: tanh-sinh over (0, pi) of -log f, split at the kinks.
        boost::math::quadrature::tanh_sinh<double> ts;
        auto g = [&](double th) {
            const double lam = matsaev_lambda(0.1, th / kPi);
            return -(2.0 * std::log(lam) + 2.0 * std::log(std::sin(kPi * lam / 2.0)));
        };
        const double a = 0.1 * kPi;
        const double expect = ts.integrate(g, 0.0, a) + ts.integrate(g, a, kPi - a) + ts.integrate(g, kPi - a, kPi);
        CHECK(lm.value == doctest::Approx(expect).epsilon(1e-8));

        const auto one = builtin_phi("1", 0.1);
        CHECK(matsaev_logminus(one).is_finite());
    }

    TEST_CASE("weight Psi")
    {
        const auto one = builtin_phi("1", 0.2);
        CHECK(psi_weight(one, 0.0) == 0.0);
        CHECK(psi_weight(one, kPi / 2.0) == doctest::Approx(psi_simpson(one, kPi / 2.0, 1 << 16)).epsilon(1e-10));
        CHECK(std::abs(psi_weight(one, kPi / 2.0) - psi_simpson(one, kPi / 2.0, 1 << 16)) < 1e-8);

        for (const char* name : {"1", "t", "t2"}) {
            for (double tau : {0.1, 0.2}) {
                const auto w = builtin_phi(name, tau);
                for (int i = 0; i <= 1024; ++i) {
                    const double th = kPi * i / 1024.0;
                    const double f = matsaev_weight(w, th);
                    const double psi = psi_weight(w, th);
                    CAPTURE(name);
                    CAPTURE(tau);
                    CAPTURE(th);
                    CHECK(psi >= f);
                    CHECK(f >= 0.0);
                }
            }
        }
    }

    TEST_CASE("weight profile on log-modulus functions")
    {
        const auto u = TestFunction::log_abs_entire({-1.0, 1.0, 3.0});
        const auto w = builtin_phi("t", 0.1);
        const auto grid = geometric(1.0, 40.0, 12);
        const auto rep = matsaev_profile(u, w, grid);
        CHECK(rep.delta == doctest::Approx(w.beta() - 1.0));
        CHECK_FALSE(rep.unbounded);
        CHECK(std::isfinite(rep.c_fit));
        CHECK(rep.c_fit > 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(rep.V[i] >= rep.hyp[i]);
            if (i > 0)
                CHECK(rep.V[i] / std::pow(grid[i], 1.0 + rep.delta) >=
                      rep.V[i - 1] / std::pow(grid[i - 1], 1.0 + rep.delta) * (1.0 - 1e-14));
        }

        // Outside every zero u- vanishes on the circle, so V = 0 while u+ > 0.
        const std::vector<double> outside{1.5};
        const auto out = matsaev_profile(u, w, outside);
        CHECK(out.hyp[0] == 0.0);
        CHECK(out.unbounded);

        // lhs at one radius against tanh-sinh.
        boost::math::quadrature::tanh_sinh<double> ts;
        const double r = grid[3];
        auto g = [&](double th) { return u.positive(std::polar(r, th)) * matsaev_weight(w, std::abs(th)); };
        CHECK(rep.lhs[3] == doctest::Approx(ts.integrate(g, -kPi, 0.0) + ts.integrate(g, 0.0, kPi)).epsilon(1e-8));

        CHECK_THROWS_AS(matsaev_profile(TestFunction::log_abs_entire({cplx(0.0, 1.0)}), w, grid), UnsupportedFunction);
        CHECK_THROWS_AS(matsaev_profile(TestFunction::re_z(), w, grid), UnsupportedFunction);
    }

    TEST_CASE("Carleman identity")
    {
        const SectorSpec sector{0.5, 2.0, 0.1};
        CHECK(carleman_identity_residual(TestFunction::zero(), sector, 64) == 0.0);

        const double im512 = carleman_identity_residual(TestFunction::im_z(), sector, 512);
        CHECK(im512 < 1e-6);
        const auto re2 = TestFunction::harmonic_poly({0.0, 0.0, 1.0}, PolyPart::Real);
        CHECK(carleman_identity_residual(re2, sector, 1024) < 1e-6);

        for (const auto& u : plane_test_family()) {
            if (!u.harmonic_in_plane())
                continue;
            CAPTURE(u.name());
            const double coarse = carleman_identity_residual(u, sector, 32);
            const double fine = carleman_identity_residual(u, sector, 64);
            if (coarse > 1e-11) {
                const double order = std::log2(coarse / fine);
                CHECK(order >= 2.0);
            }
        }

        const auto terms = carleman_terms(TestFunction::im_z(), sector, 256);
        CHECK(std::abs(terms.outer) > 0.1);
        CHECK(terms.residual == doctest::Approx(std::abs(terms.outer + terms.inner + terms.derivative + terms.sides)));

        CHECK_THROWS_AS(carleman_identity_residual(TestFunction::radial_log(), sector, 64), UnsupportedFunction);
        CHECK_THROWS_AS(carleman_identity_residual(TestFunction::im_z(), SectorSpec{0.5, 2.0, 0.3}, 64), RangeError);
        CHECK_THROWS_AS(carleman_identity_residual(TestFunction::im_z(), SectorSpec{2.0, 0.5, 0.1}, 64), RangeError);
    }
}
