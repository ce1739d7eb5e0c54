#pragma once

/**
 * @file ck.hpp
 * @brief The bounded-coefficient sets C_k and best approximation within them.
 *
 * C_k is the set of rationals expressible as s/t with |s| <= k and |t| <= k.
 * Since any representation is an integer multiple of the reduced one,
 * membership reduces to two comparisons on the stored reduced form.
 */

#include <utility>
#include <vector>

#include "lorentz/errors.hpp"
#include "lorentz/rational.hpp"

namespace lorentz {

struct CkBound {
    Integer k;
    explicit CkBound(Integer kk) : k(std::move(kk)) {
        if (k < 1) throw BoundTooLarge("C_k bound must be >= 1");
    }
    explicit CkBound(long kk) : CkBound(Integer(kk)) {}
};

inline bool in_ck(const Rational& q, const CkBound& k) {
    Integer n = q.num();
    if (n < 0) n = -n;
    return n <= k.k && q.den() <= k.k;
}

namespace detail {

// Mediant walk state: a Stern-Brocot tree fraction as (num, den).
struct SbFrac {
    Integer n, d;
};

} // namespace detail

/// Nearest member of C_k to x, ties broken toward the smaller denominator
/// and then toward the smaller value. Targets beyond [-k, k] are clamped
/// first. Runs a mediant (Stern-Brocot) walk with batched descent; any
/// fraction strictly inside a pruned interval has numerator and denominator
/// at least those of the rejected mediant, so the surviving endpoints are
/// the only candidates.
inline Rational best_rational_in_ck(double x, const CkBound& kb) {
    const Integer& K = kb.k;
    Rational target = Rational::from_double(x);
    Rational kr(K);
    if (target > kr) target = kr;
    if (target < -kr) target = -kr;
    if (target.is_zero()) return Rational(0);

    const bool neg = target.is_negative();
    Rational a = target.abs();
    const Integer an = a.num(), ad = a.den();

    detail::SbFrac lo{0, 1}, hi{1, 0};
    bool exact = false;

    // Invariant: lo < a < hi, lo admissible, hi admissible or the 1/0 sentinel.
    while (true) {
        // Run toward a from below: lo <- lo + m*hi.
        Integer run_d = hi.n * ad - an * hi.d;  // > 0 (hi > a or sentinel)
        Integer run_n = an * lo.d - lo.n * ad;  // > 0 (lo < a)
        Integer m_full = run_n / run_d;
        Integer m_cap = m_full;
        if (hi.n > 0) m_cap = std::min(m_cap, Integer((K - lo.n) / hi.n));
        if (hi.d > 0) m_cap = std::min(m_cap, Integer((K - lo.d) / hi.d));
        lo.n += m_cap * hi.n;
        lo.d += m_cap * hi.d;
        if (m_cap < m_full) break;  // bound hit; interior is inadmissible
        if (lo.n * ad == an * lo.d) { exact = true; break; }

        // Run toward a from above: hi <- hi + m*lo.
        run_d = an * lo.d - lo.n * ad;
        run_n = hi.n * ad - an * hi.d;
        m_full = run_n / run_d;
        m_cap = m_full;
        if (lo.n > 0) m_cap = std::min(m_cap, Integer((K - hi.n) / lo.n));
        m_cap = std::min(m_cap, Integer((K - hi.d) / lo.d));  // lo.d >= 1 always
        hi.n += m_cap * lo.n;
        hi.d += m_cap * lo.d;
        if (m_cap < m_full) break;
        if (hi.n * ad == an * hi.d) { lo = hi; exact = true; break; }
    }

    if (exact) return neg ? Rational(-lo.n, lo.d) : Rational(lo.n, lo.d);

    std::vector<Rational> cands;
    cands.emplace_back(neg ? -lo.n : lo.n, lo.d);
    if (hi.d > 0) cands.emplace_back(neg ? -hi.n : hi.n, hi.d);

    const Rational* best = nullptr;
    Rational best_err(0);
    for (const Rational& c : cands) {
        Rational err = (target - c).abs();
        if (!best || err < best_err ||
            (err == best_err && (c.den() < best->den() ||
                                 (c.den() == best->den() && c < *best)))) {
            best = &c;
            best_err = err;
        }
    }
    return *best;
}

} // namespace lorentz
