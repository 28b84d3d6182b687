#pragma once

#include <stdexcept>
#include <string>

namespace starharm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Node data violates the monotonicity/normalization invariants of a measure or profile.
class InvalidMeasure : public Error {
public:
    using Error::Error;
};

/// Malformed numeric input: negative, NaN/Inf samples, unsorted rows, bad files.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A weight that vanishes identically and therefore cannot be normalized.
class DegenerateMeasure : public Error {
public:
    using Error::Error;
};

/// A scalar argument outside its documented range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A point lies outside a domain, or a compact set is not contained in it.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// A measure failed the class-A test and no override was given.
class ClassMembershipError : public Error {
public:
    using Error::Error;
};

/// The requested operation is not defined for this test-function variant.
class UnsupportedFunction : public Error {
public:
    using Error::Error;
};

/// Evaluation at a point of the declared singular set.
class SingularPoint : public Error {
public:
    using Error::Error;
};

}  // namespace starharm
