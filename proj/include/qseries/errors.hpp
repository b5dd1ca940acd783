#pragma once

#include <stdexcept>
#include <string>

namespace qseries {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Division by a series that is identically zero on its known range.
struct DivideByZeroSeries : Error {
    explicit DivideByZeroSeries(const std::string& what) : Error(what) {}
};

/// A comparison or coefficient access beyond the guaranteed truncation order.
struct InsufficientOrder : Error {
    explicit InsufficientOrder(const std::string& what) : Error(what) {}
};

/// Infinite q-Pochhammer product whose factors do not tend to 1.
struct NonTruncating : Error {
    explicit NonTruncating(const std::string& what) : Error(what) {}
};

/// j(x^n;q^n) modulus decrease needs n-th roots of unity for n > 2.
struct UnsupportedCyclotomic : Error {
    explicit UnsupportedCyclotomic(const std::string& what) : Error(what) {}
};

/// An Appell-Lerch bilateral term has an identically vanishing denominator.
struct PoleError : Error {
    explicit PoleError(const std::string& what) : Error(what) {}
};

/// A theta function appearing in a denominator vanishes identically.
struct ThetaZeroError : Error {
    explicit ThetaZeroError(const std::string& what) : Error(what) {}
};

/// Structural precondition violation (divisibility, definiteness, ...).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// Identity name not present in the registry.
struct UnknownIdentity : Error {
    explicit UnknownIdentity(const std::string& what) : Error(what) {}
};

/// Expression-language syntax error, with a byte offset into the input.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t offset)
        : Error(what), offset(offset) {}
    std::size_t offset;
};

} // namespace qseries
