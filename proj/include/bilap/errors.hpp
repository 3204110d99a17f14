#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bilap {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or non-finite input (bad coefficients, unknown catalog id, ...).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// Inversion of an element of the zero-divisor set O2 was requested.
class SingularElementError : public Error {
public:
    using Error::Error;
};

/// Rational evaluation too close to a denominator root.
class PoleProximityError : public Error {
public:
    using Error::Error;
};

/// Image function produced non-finite samples or failed the decay probe.
class InvalidImageError : public Error {
public:
    using Error::Error;
};

/// Transform requested outside the region of convergence D.
class ConvergenceRegionError : public Error {
public:
    using Error::Error;
};

/// Truncation / panel budget exhausted before the tail bound was met.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// Argument outside the operation's domain (e.g. inversion at t <= 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Iterative numeric procedure failed to converge.
class NumericFailureError : public Error {
public:
    using Error::Error;
};

/// Bromwich refinement loop ran out of refinements; carries the last two
/// iterates so callers can judge how far apart they still were.
class InversionConvergenceError : public Error {
public:
    InversionConvergenceError(const std::string& what,
                              std::complex<double> previous,
                              std::complex<double> last)
        : Error(what), previous_(previous), last_(last) {}

    std::complex<double> previous_iterate() const { return previous_; }
    std::complex<double> last_iterate() const { return last_; }

private:
    std::complex<double> previous_;
    std::complex<double> last_;
};

}  // namespace bilap
