#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "starharm/domain.hpp"
#include "starharm/measures.hpp"

namespace starharm::io {

struct Table {
    std::vector<std::string> header;  ///< empty when the file has none
    std::vector<double> x;
    std::vector<double> y;
};

/// Two numeric columns, optional header, '#' comments. Rows must be strictly
/// increasing in x. NaN is always rejected; +inf in y only when allowed.
Table read_two_columns(std::istream& in, const std::string& source, bool allow_inf_y = false);
Table read_two_columns(const std::string& path, bool allow_inf_y = false);

/// t,nu rows of a piecewise-linear distribution function.
SegmentMeasure read_measure(const std::string& path);
/// t,density samples; +inf marks a singular sample.
PositiveFunction read_density(const std::string& path);
/// theta,r rows.
StarShapedDomain read_domain(const std::string& path);

void write_measure(std::ostream& out, const SegmentMeasure& nu);
void write_domain(std::ostream& out, const StarShapedDomain& omega);
void write_measure(const std::string& path, const SegmentMeasure& nu);
void write_domain(const std::string& path, const StarShapedDomain& omega);

/// %.17g, so values round-trip.
std::string format_double(double v);

}  // namespace starharm::io
