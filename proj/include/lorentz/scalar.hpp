#pragma once

/**
 * @file scalar.hpp
 * @brief The scalar-domain contract shared by double, Rational and FpElem.
 *
 * Every generator formula is written once against these customization
 * points. The chronicity witness "is a nonzero square" means positive for
 * the real and rational domains and quadratic residue for F_p. None of the
 * admitted domains has -1 as a nonzero square (for F_p this requires
 * p = 3 mod 4 and is enforced where matrices are validated).
 */

#include <cmath>
#include <string>

#include "lorentz/errors.hpp"
#include "lorentz/prime_field.hpp"
#include "lorentz/rational.hpp"

namespace lorentz {

template <class S>
struct is_exact_domain : std::true_type {};
template <>
struct is_exact_domain<double> : std::false_type {};

// -- real ------------------------------------------------------------------

inline double dom_zero(double) { return 0.0; }
inline double dom_one(double) { return 1.0; }
inline double dom_from_int(long v, double) { return static_cast<double>(v); }
inline bool dom_eq(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
inline bool dom_is_zero(double a, double tol) { return std::fabs(a) <= tol; }
inline bool dom_nonzero_square(double a) { return a > 0.0; }
inline double dom_inv(double a) {
    if (a == 0.0) throw ZeroInput("division by zero");
    return 1.0 / a;
}
inline double dom_to_double(double a) { return a; }
inline std::string dom_name(double) { return "real"; }

// -- rational ----------------------------------------------------------------

inline Rational dom_zero(const Rational&) { return Rational(0); }
inline Rational dom_one(const Rational&) { return Rational(1); }
inline Rational dom_from_int(long v, const Rational&) { return Rational(v); }
inline bool dom_eq(const Rational& a, const Rational& b, double) { return a == b; }
inline bool dom_is_zero(const Rational& a, double) { return a.is_zero(); }
// Every positive rational is a real square; the rational matrices here live
// inside the real group, so "positive" is the witness.
inline bool dom_nonzero_square(const Rational& a) { return a.is_positive(); }
inline Rational dom_inv(const Rational& a) { return a.inverse(); }
inline double dom_to_double(const Rational& a) { return a.to_double(); }
inline std::string dom_name(const Rational&) { return "rational"; }

// -- prime field -------------------------------------------------------------

inline FpElem dom_zero(const FpElem& like) { return FpElem(0, like.field()); }
inline FpElem dom_one(const FpElem& like) { return FpElem(1, like.field()); }
inline FpElem dom_from_int(long v, const FpElem& like) { return FpElem(v, like.field()); }
inline bool dom_eq(const FpElem& a, const FpElem& b, double) { return a == b; }
inline bool dom_is_zero(const FpElem& a, double) { return a.is_zero(); }
inline bool dom_nonzero_square(const FpElem& a) { return !a.is_zero() && is_quadratic_residue(a); }
inline FpElem dom_inv(const FpElem& a) { return a.inverse(); }
inline double dom_to_double(const FpElem& a) { return a.value().get_d(); }
inline std::string dom_name(const FpElem&) { return "fp"; }

template <class S>
inline bool dom_compatible(const S&, const S&) { return true; }
inline bool dom_compatible(const FpElem& a, const FpElem& b) { return same_field(a.field(), b.field()); }

/// -1 must not be a nonzero square for the Minkowski geometry to make sense.
template <class S>
inline void require_admissible(const S&) {}
inline void require_admissible(const FpElem& like) {
    if (!like.field()->minus_one_nonsquare())
        throw DomainNotAdmissible("-1 is a square in F_" + like.field()->modulus().get_str() +
                                  "; need p = 3 (mod 4)");
}

} // namespace lorentz
