#include "starharm/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "starharm/error.hpp"

namespace starharm::io {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& field, double& out)
{
    const std::string f = trim(field);
    if (f.empty())
        return false;
    const char* first = f.data();
    if (*first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, f.data() + f.size(), out);
    return ec == std::errc() && ptr == f.data() + f.size();
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open '" + path + "'");
    return in;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot write '" + path + "'");
    return out;
}

}  // namespace

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Table read_two_columns(std::istream& in, const std::string& source, bool allow_inf_y)
{
    Table t;
    std::string line;
    int lineno = 0;
    bool first_data = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#')
            continue;
        const auto comma = s.find(',');
        if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
            throw InvalidInput(source + ":" + std::to_string(lineno) + ": expected two columns");
        double x = 0.0;
        double y = 0.0;
        const bool ok = parse_double(s.substr(0, comma), x) && parse_double(s.substr(comma + 1), y);
        if (!ok) {
            if (first_data && t.header.empty()) {
                t.header = {trim(s.substr(0, comma)), trim(s.substr(comma + 1))};
                continue;
            }
            throw InvalidInput(source + ":" + std::to_string(lineno) + ": not a number");
        }
        first_data = false;
        if (!std::isfinite(x) || std::isnan(y) || (std::isinf(y) && !(allow_inf_y && y > 0.0)))
            throw InvalidInput(source + ":" + std::to_string(lineno) + ": non-finite value");
        if (!t.x.empty() && !(x > t.x.back()))
            throw InvalidInput(source + ":" + std::to_string(lineno) + ": rows are not strictly increasing");
        t.x.push_back(x);
        t.y.push_back(y);
    }
    if (t.x.size() < 2)
        throw InvalidInput(source + ": need at least two rows");
    return t;
}

Table read_two_columns(const std::string& path, bool allow_inf_y)
{
    auto in = open_in(path);
    return read_two_columns(in, path, allow_inf_y);
}

SegmentMeasure read_measure(const std::string& path)
{
    const auto t = read_two_columns(path);
    std::vector<MeasureNode> nodes;
    for (std::size_t i = 0; i < t.x.size(); ++i)
        nodes.push_back({t.x[i], t.y[i]});
    return SegmentMeasure(std::move(nodes));
}

PositiveFunction read_density(const std::string& path)
{
    auto t = read_two_columns(path, true);
    return PositiveFunction::from_samples(std::move(t.x), std::move(t.y), path);
}

StarShapedDomain read_domain(const std::string& path)
{
    const auto t = read_two_columns(path);
    std::vector<DomainSample> s;
    for (std::size_t i = 0; i < t.x.size(); ++i)
        s.push_back({t.x[i], t.y[i]});
    return StarShapedDomain(std::move(s));
}

void write_measure(std::ostream& out, const SegmentMeasure& nu)
{
    out << "t,nu\n";
    for (const auto& n : nu.nodes())
        out << format_double(n.t) << ',' << format_double(n.nu) << '\n';
}

void write_domain(std::ostream& out, const StarShapedDomain& omega)
{
    out << "theta,r\n";
    for (const auto& s : omega.samples())
        out << format_double(s.theta) << ',' << format_double(s.r) << '\n';
}

void write_measure(const std::string& path, const SegmentMeasure& nu)
{
    auto out = open_out(path);
    write_measure(out, nu);
}

void write_domain(const std::string& path, const StarShapedDomain& omega)
{
    auto out = open_out(path);
    write_domain(out, omega);
}

}  // namespace starharm::io
