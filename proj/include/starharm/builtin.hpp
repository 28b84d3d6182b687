#pragma once

#include <functional>
#include <string>
#include <vector>

#include "starharm/measures.hpp"

namespace starharm {

/// A named density on the reference segment [0, 2*pi]; measures on other
/// segments are obtained by the affine change of variable.
struct BuiltinDensity {
    std::string name;
    std::string formula;
    std::function<double(double)> density;      ///< unnormalized, on [0, 2*pi]
    std::function<double(double)> log_density;  ///< log of the same
    bool bounded_below = true;
};

/// Szego densities bounded away from zero: "cos", "sin2", "expcos".
const std::vector<BuiltinDensity>& szego_family();

/// Every built-in density, including the ones that vanish:
/// "flat" (exp(-1/sqrt(sin(x/2))), flat at both ends) and
/// "cusp" (exp(-1/sqrt|x/pi - 1|), flat at the midpoint).
const std::vector<BuiltinDensity>& builtin_densities();

const BuiltinDensity& builtin_density(const std::string& name);

/// Measure on [a, b] with the named density ("uniform" is also accepted).
SegmentMeasure builtin_measure(const std::string& name, double a = 0.0, double b = kTwoPi,
                               int cells = 2048);

/// Profile mu(s) = a + (b - a) / log(e/s) on geometric s-nodes down to
/// exp(-depth). Its class-A defect decays only like log log, so it fails
/// the test at every dyadic scale the nodes resolve.
InverseProfile nonmember_profile(double a = 0.0, double b = 1.0, double depth = 690.0,
                                 double step = 0.25);

}  // namespace starharm
