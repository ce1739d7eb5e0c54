#pragma once

/**
 * @file prime_field.hpp
 * @brief Prime fields F_p, quadratic residues, and the canonical map.
 *
 * The main case is p = 7 (mod 8), where the Minkowski machinery applies;
 * this is recorded in the `minkowski_admissible` flag. Any odd prime is
 * accepted for utility work. Primality is verified at construction.
 */

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "lorentz/errors.hpp"
#include "lorentz/integer.hpp"
#include "lorentz/rational.hpp"

namespace lorentz {

class PrimeField;
using FieldPtr = std::shared_ptr<const PrimeField>;

class PrimeField : public std::enable_shared_from_this<PrimeField> {
public:
    static FieldPtr make(Integer p, int mr_rounds = 40) {
        if (p == 2) throw NotPrime("field modulus must be an odd prime");
        if (!is_prime(p, mr_rounds)) throw NotPrime("field modulus " + p.get_str() + " is not prime");
        return FieldPtr(new PrimeField(std::move(p)));
    }
    static FieldPtr make(long p) { return make(Integer(p)); }

    const Integer& modulus() const { return p_; }
    /// True iff p = 7 (mod 8), the case where 2 is a residue and -1 is not.
    bool minkowski_admissible() const { return admissible_; }
    /// True iff -1 is a non-square, i.e. p = 3 (mod 4).
    bool minus_one_nonsquare() const { return mpz_fdiv_ui(p_.get_mpz_t(), 4) == 3; }

private:
    explicit PrimeField(Integer p)
        : p_(std::move(p)), admissible_(mpz_fdiv_ui(p_.get_mpz_t(), 8) == 7) {}
    Integer p_;
    bool admissible_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    return a == b || a->modulus() == b->modulus();
}

class FpElem {
public:
    FpElem(Integer v, FieldPtr f) : f_(std::move(f)) {
        mpz_fdiv_r(v_.get_mpz_t(), v.get_mpz_t(), f_->modulus().get_mpz_t());
    }
    FpElem(long v, FieldPtr f) : FpElem(Integer(v), std::move(f)) {}

    const Integer& value() const { return v_; }
    const FieldPtr& field() const { return f_; }
    bool is_zero() const { return v_ == 0; }

    FpElem operator+(const FpElem& o) const { check(o); return FpElem(v_ + o.v_, f_); }
    FpElem operator-(const FpElem& o) const { check(o); return FpElem(v_ - o.v_, f_); }
    FpElem operator*(const FpElem& o) const { check(o); return FpElem(v_ * o.v_, f_); }
    FpElem operator-() const { return FpElem(-v_, f_); }

    FpElem inverse() const {
        if (is_zero()) throw ZeroInput("inverse of zero in F_p");
        Integer r;
        mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), f_->modulus().get_mpz_t());
        return FpElem(r, f_);
    }
    FpElem operator/(const FpElem& o) const { check(o); return *this * o.inverse(); }

    FpElem pow(const Integer& e) const { return FpElem(pow_mod(v_, e, f_->modulus()), f_); }

    bool operator==(const FpElem& o) const { return same_field(f_, o.f_) && v_ == o.v_; }
    bool operator!=(const FpElem& o) const { return !(*this == o); }

    std::string str() const { return v_.get_str(); }

private:
    void check(const FpElem& o) const {
        if (!same_field(f_, o.f_))
            throw FieldMismatch("operands live in different prime fields");
    }
    Integer v_;
    FieldPtr f_;
};

inline std::ostream& operator<<(std::ostream& os, const FpElem& x) { return os << x.str(); }

/// Canonical surjection Z_(p) -> F_p: num * den^-1 (mod p). Defined only
/// when p does not divide the (reduced) denominator.
inline FpElem canonical_map(const Rational& q, const FieldPtr& f) {
    Integer den = q.den();
    if (mpz_divisible_p(den.get_mpz_t(), f->modulus().get_mpz_t()))
        throw NotInLocalization(q.str() + " has denominator divisible by p = " + f->modulus().get_str());
    Integer dinv;
    mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), f->modulus().get_mpz_t());
    return FpElem(q.num() * dinv, f);
}

/// Euler criterion. Zero is neither a residue nor a non-residue here.
inline bool is_quadratic_residue(const FpElem& x) {
    if (x.is_zero()) throw ZeroInput("residue test of zero");
    const Integer& p = x.field()->modulus();
    return pow_mod(x.value(), (p - 1) / 2, p) == 1;
}

/// Square root in F_p for nonzero x, smaller of the two roots; Absent for
/// non-residues. p = 3 (mod 4) uses the (p+1)/4 exponent, otherwise
/// Tonelli-Shanks.
inline std::optional<FpElem> sqrt_mod(const FpElem& x) {
    if (x.is_zero()) throw ZeroInput("sqrt of zero");
    if (!is_quadratic_residue(x)) return std::nullopt;
    const Integer& p = x.field()->modulus();
    Integer r;
    if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) {
        r = pow_mod(x.value(), (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks. Write p - 1 = q * 2^s with q odd.
        Integer q = p - 1;
        unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
        mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
        Integer z = 2;
        while (jacobi(z, p) != -1) ++z;
        Integer c = pow_mod(z, q, p);
        Integer t = pow_mod(x.value(), q, p);
        r = pow_mod(x.value(), (q + 1) / 2, p);
        unsigned long m = s;
        while (t != 1) {
            Integer tt = t;
            unsigned long i = 0;
            while (tt != 1) { tt = (tt * tt) % p; ++i; }
            Integer b = c;
            for (unsigned long j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
            r = (r * b) % p;
            c = (b * b) % p;
            t = (t * c) % p;
            m = i;
        }
    }
    if (r > p - r) r = p - r;
    return FpElem(r, x.field());
}

/// The nontransitive order <_p: x <_p y iff y - x is a nonzero square.
inline bool lt_p(const FpElem& x, const FpElem& y) {
    if (!same_field(x.field(), y.field()))
        throw FieldMismatch("lt_p across different fields");
    FpElem d = y - x;
    if (d.is_zero()) return false;
    return is_quadratic_residue(d);
}

} // namespace lorentz
