#pragma once

#include <stdexcept>
#include <string>

namespace lorentz {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// arith
struct NotInLocalization : Error { using Error::Error; };   // p divides a denominator
struct ZeroInput : Error { using Error::Error; };
struct FieldMismatch : Error { using Error::Error; };
struct NotPrime : Error { using Error::Error; };

// lorentz
struct NotLorentz : Error { using Error::Error; };
struct ZeroAlpha : Error { using Error::Error; };
struct NonSquareAlpha : Error { using Error::Error; };
struct NoHalving : Error { using Error::Error; };
struct NotRotation : Error { using Error::Error; };
struct NotUnitNorm : Error { using Error::Error; };
struct DomainMismatch : Error { using Error::Error; };
struct DomainNotAdmissible : Error { using Error::Error; };  // -1 is a square in the field

// chain / finlorentz
struct SearchExhausted : Error { using Error::Error; };
struct BoundTooLarge : Error { using Error::Error; };
struct MemoryBudgetExceeded : Error { using Error::Error; };
struct DegenerateDenominator : Error { using Error::Error; };

// approx
struct NotOrthochronousProper : Error { using Error::Error; };

// io
struct ParseError : Error { using Error::Error; };

} // namespace lorentz
