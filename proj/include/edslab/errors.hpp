#pragma once

#include <stdexcept>
#include <string>

namespace edslab {

// Base for every failure the library reports deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input rejected before any computation (bad literal, W_1 not a unit, ...).
struct InvalidInput : Error {
    using Error::Error;
};

// W_2 does not divide W_4, so no EDS exists for the quadruple.
struct NotDivisible : Error {
    using Error::Error;
};

// An exact division left a remainder; the data does not satisfy the recursion.
struct InexactDivision : Error {
    using Error::Error;
};

// Disc(W) = 0 or W_2 W_3 = 0; no associated curve.
struct SingularSequence : Error {
    using Error::Error;
};

// The point's elliptic logarithm is a rational multiple of the period.
struct TorsionPoint : Error {
    using Error::Error;
};

// Curve/point not in the shape an operation requires.
struct FormMismatch : Error {
    using Error::Error;
};

// A signed candidate sequence failed the defining recursion.
struct RecursionFailure : Error {
    using Error::Error;
};

// A floor/threshold decision fell inside the precision guard band.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// W_2 or W_4 even where the power-of-two machinery needs them odd.
struct EvenTerm : Error {
    using Error::Error;
};

// Normalized u sits on the |q|^k grid; beta would be rational.
struct DegenerateInput : Error {
    using Error::Error;
};

}  // namespace edslab
