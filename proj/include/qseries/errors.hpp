#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qseries {

// Base class for every library error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An argument violates a precondition (negative power, off-lattice exponent, ...).
struct InvalidParameter : Error {
    using Error::Error;
};

// exact_div was asked for a quotient that does not exist in the Laurent ring.
struct NonExactDivision : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

// Arithmetic between truncated series over different formal variables.
struct VariableMismatch : Error {
    using Error::Error;
};

// reciprocal() of a series whose constant term is not a unit.
struct NonUnitConstantTerm : Error {
    using Error::Error;
};

// A series construction whose exponents do not escape the truncation window.
struct DivergentTruncation : Error {
    using Error::Error;
};

// The connection coefficients solved at different N disagree.
struct ThetaInconsistent : Error {
    using Error::Error;
};

struct UnknownIdentity : Error {
    using Error::Error;
};

// Expression-language parse failure; carries the byte offset and what was expected.
struct ParseError : Error {
    std::size_t offset;
    std::string expected;
    ParseError(std::size_t off, std::string exp)
        : Error("parse error at offset " + std::to_string(off) + ": expected " + exp),
          offset(off),
          expected(std::move(exp)) {}
};

// Expression evaluation failure (bad arity, non-scalar argument, ...).
struct EvalError : Error {
    using Error::Error;
};

}  // namespace qseries
