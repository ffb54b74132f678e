#pragma once

#include <stdexcept>
#include <string>

namespace impostoron {

// Every failure raised by the library derives from Error; the CLI maps it to
// exit code 3 and prints what() verbatim.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. nu <= 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Frequency outside the sampled interval of a tabulated model.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Clausius-Mossotti divergence or another vanishing denominator.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// A bracketed search found no admissible root.
class NoRootError : public Error {
public:
    using Error::Error;
};

/// Line shape or resonance without finite width.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Non-uniform, too short or under-sampled grid.
class GridError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

/// Spectrum maximum sits on the boundary, or its half-maximum is never reached.
class PeakError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace impostoron
