#include "starharm/builtin.hpp"

#include <cmath>

#include "starharm/error.hpp"

namespace starharm {

namespace {

std::vector<BuiltinDensity> make_szego()
{
    return {
        {"cos", "2 + cos(x)", [](double x) { return 2.0 + std::cos(x); },
         [](double x) { return std::log(2.0 + std::cos(x)); }},
        {"sin2", "1 + sin(2x)/2", [](double x) { return 1.0 + 0.5 * std::sin(2.0 * x); },
         [](double x) { return std::log(1.0 + 0.5 * std::sin(2.0 * x)); }},
        {"expcos", "exp(cos(x))", [](double x) { return std::exp(std::cos(x)); },
         [](double x) { return std::cos(x); }},
    };
}

double flat_log(double x)
{
    const double s = std::sin(0.5 * x);
    if (!(s > 0.0))
        return -kInf;
    return -1.0 / std::sqrt(s);
}

double cusp_log(double x)
{
    const double d = std::abs(x / kPi - 1.0);
    if (d == 0.0)
        return -kInf;
    return -1.0 / std::sqrt(d);
}

}  // namespace

const std::vector<BuiltinDensity>& szego_family()
{
    static const std::vector<BuiltinDensity> family = make_szego();
    return family;
}

const std::vector<BuiltinDensity>& builtin_densities()
{
    static const std::vector<BuiltinDensity> all = [] {
        auto v = make_szego();
        v.push_back({"flat", "exp(-1/sqrt(sin(x/2)))",
                     [](double x) { return std::exp(flat_log(x)); }, flat_log, false});
        v.push_back({"cusp", "exp(-1/sqrt|x/pi - 1|)",
                     [](double x) { return std::exp(cusp_log(x)); }, cusp_log, false});
        return v;
    }();
    return all;
}

const BuiltinDensity& builtin_density(const std::string& name)
{
    for (const auto& d : builtin_densities())
        if (d.name == name)
            return d;
    throw InvalidInput("unknown built-in density '" + name + "'");
}

SegmentMeasure builtin_measure(const std::string& name, double a, double b, int cells)
{
    if (name == "uniform")
        return SegmentMeasure::uniform(a, b);
    const auto& d = builtin_density(name);
    const double scale = kTwoPi / (b - a);
    return SegmentMeasure::from_density(
        [&](double t) { return d.density((t - a) * scale); }, a, b, cells);
}

InverseProfile nonmember_profile(double a, double b, double depth, double step)
{
    if (!(depth > 0.0) || !(step > 0.0))
        throw RangeError("nonmember profile needs positive depth and step");
    std::vector<ProfileNode> nodes{{0.0, a}};
    const int n = static_cast<int>(std::ceil(depth / step));
    for (int j = n; j >= 1; --j) {
        const double L = j * step;  // s = exp(-L), mu = 1 / (1 + L)
        nodes.push_back({std::exp(-L), a + (b - a) / (1.0 + L)});
    }
    nodes.push_back({1.0, b});
    return InverseProfile(std::move(nodes));
}

}  // namespace starharm
