#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers, always stored reduced.
 *
 * Invariants: denominator > 0 and gcd(|num|, den) = 1. Equality is
 * structural equality of the reduced form. Serialization is "num/den",
 * with "/den" omitted when den = 1.
 */

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "lorentz/errors.hpp"
#include "lorentz/integer.hpp"

namespace lorentz {

class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    explicit Rational(const Integer& n) : q_(n) {}
    Rational(const Integer& num, const Integer& den) : q_(num, den) {
        if (den == 0) throw ZeroInput("rational with zero denominator");
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    /// Exact conversion; every finite double is a dyadic rational.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw ZeroInput("rational from non-finite double");
        Rational r;
        mpq_set_d(r.q_.get_mpq_t(), x);
        return r;
    }

    /// Parses "num", "num/den" or a decimal literal like "-1.25".
    static Rational parse(std::string_view s);

    Integer num() const { return Integer(q_.get_num()); }
    Integer den() const { return Integer(q_.get_den()); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_positive() const { return sgn(q_) > 0; }
    bool is_negative() const { return sgn(q_) < 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    double to_double() const { return q_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw ZeroInput("rational division by zero");
        return Rational(mpq_class(q_ / o.q_));
    }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

    Rational inverse() const {
        if (is_zero()) throw ZeroInput("inverse of zero");
        return Rational(den(), num());
    }
    Rational abs() const { return is_negative() ? -*this : *this; }

    bool operator==(const Rational& o) const { return mpq_equal(q_.get_mpq_t(), o.q_.get_mpq_t()) != 0; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return mpq_cmp(q_.get_mpq_t(), o.q_.get_mpq_t()) < 0; }
    bool operator<=(const Rational& o) const { return mpq_cmp(q_.get_mpq_t(), o.q_.get_mpq_t()) <= 0; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    std::string str() const {
        std::string s = q_.get_num().get_str();
        if (q_.get_den() != 1) s += "/" + q_.get_den().get_str();
        return s;
    }

private:
    explicit Rational(const mpq_class& q) : q_(q) {}
    mpq_class q_;  // kept canonical
};

inline Rational Rational::parse(std::string_view s) {
    if (s.empty()) throw ParseError("empty rational literal");
    std::string str(s);
    auto slash = str.find('/');
    auto dot = str.find('.');
    try {
        if (slash != std::string::npos) {
            Integer n(str.substr(0, slash));
            Integer d(str.substr(slash + 1));
            if (d == 0) throw ZeroInput("zero denominator");
            return Rational(n, d);
        }
        if (dot != std::string::npos) {
            std::string digits = str.substr(0, dot) + str.substr(dot + 1);
            size_t frac_len = str.size() - dot - 1;
            Integer n(digits);
            Integer d(1);
            for (size_t i = 0; i < frac_len; ++i) d *= 10;
            return Rational(n, d);
        }
        return Rational(Integer(str));
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + str);
    }
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational abs(const Rational& r) { return r.abs(); }

} // namespace lorentz
