#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

#include "starharm/clausen.hpp"
#include "starharm/numeric.hpp"

using namespace starharm;

namespace {

// sum_{k<=K} sin(kx)/k^2 plus the Euler-Maclaurin-type tail estimate of the
// remainder, which is O(1/K^2) after the correction.
double sine_series(double x, int K)
{
    KahanSum s;
    for (int k = K; k >= 1; --k)
        s += std::sin(k * x) / (static_cast<double>(k) * k);
    // Remainder sum_{k>K} sin(kx)/k^2 ~ cos((K + 1/2) x) / (2 K^2 sin(x/2)).
    s += std::cos((K + 0.5) * x) / (2.0 * K * K * std::sin(0.5 * x));
    return s.value();
}

double by_quadrature(double x)
{
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate([](double s) { return -std::log(2.0 * std::sin(0.5 * s)); }, 0.0, x);
}

}  // namespace

TEST_SUITE("clausen")
{
    TEST_CASE("special values")
    {
        CHECK(clausen2(0.0) == 0.0);
        CHECK(clausen2(kPi) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(clausen2(0.5 * kPi) == doctest::Approx(0.91596559417721901505).epsilon(1e-14));
        CHECK(clausen2(kPi / 3.0) == doctest::Approx(1.01494160640965362502).epsilon(1e-14));
    }

    TEST_CASE("odd and periodic")
    {
        for (double x : {0.1, 1.0, 2.5, 3.0}) {
            CHECK(clausen2(-x) == doctest::Approx(-clausen2(x)).epsilon(1e-15));
            CHECK(clausen2(x + kTwoPi) == doctest::Approx(clausen2(x)).epsilon(1e-12));
            CHECK(clausen2(x - 4.0 * kPi) == doctest::Approx(clausen2(x)).epsilon(1e-12));
        }
    }

    TEST_CASE("agrees with the integral definition")
    {
        for (double x : {1e-6, 1e-3, 0.2, 1.0, 2.0, 3.0, 3.14}) {
            CAPTURE(x);
            CHECK(std::abs(clausen2(x) - by_quadrature(x)) < 1e-12);
        }
    }

    TEST_CASE("agrees with the tail-corrected sine series")
    {
        for (double x : {0.3, 1.0, 1.7, 2.9, 4.0, 5.5}) {
            CAPTURE(x);
            CHECK(std::abs(clausen2(x) - sine_series(x, 200000)) < 1e-10);
        }
    }

    TEST_CASE("maximum at pi/3")
    {
        const double h = 1e-4;
        CHECK(clausen2(kPi / 3.0) > clausen2(kPi / 3.0 - h));
        CHECK(clausen2(kPi / 3.0) > clausen2(kPi / 3.0 + h));
    }
}
