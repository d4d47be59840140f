#pragma once

#include <stdexcept>
#include <string>

namespace corrbreak {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Index or fraction outside the admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Zero variance in one of the two series on the requested segment.
class DegenerateSegment : public Error {
public:
    using Error::Error;
};

/// The delta-method variance F'D3 came out nonpositive.
class NonPositiveVariance : public Error {
public:
    using Error::Error;
};

/// Segment shorter than the minimum testable length.
class SegmentTooShort : public Error {
public:
    using Error::Error;
};

/// Malformed user input (files, configs, series lengths).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace corrbreak
