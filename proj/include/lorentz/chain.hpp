#pragma once

/**
 * @file chain.hpp
 * @brief Search for chain primes: p = 7 (mod 8) with 1..k all quadratic
 *        residues, and the variant with the 32 k^16 magnitude bound.
 *
 * Since the residues form a multiplicative group, 1..k are all residues as
 * soon as every prime q <= k is one. Candidates are filtered by those
 * Legendre symbols first (cheapest test), then by Miller-Rabin, and the
 * winner is re-verified by a direct Euler-criterion pass over 1..k.
 */

#include <algorithm>
#include <vector>

#include "lorentz/errors.hpp"
#include "lorentz/integer.hpp"
#include "lorentz/prime_field.hpp"

namespace lorentz {

struct ChainPrimeRequest {
    long k = 1;                     // chain depth, >= 1
    Integer min_bound = 0;          // exclusive lower bound for p
    bool require_mod8 = true;       // p = 7 (mod 8); otherwise p = 3 (mod 4)
    long limit = 100000000;         // candidates examined before giving up
};

/// Largest k >= 0 such that 1..k are all nonzero quadratic residues mod p.
inline long chain_length(const PrimeField& f) {
    const Integer& p = f.modulus();
    long k = 0;
    while (true) {
        Integer q = k + 1;
        if (q >= p) return k;
        if (pow_mod(q, (p - 1) / 2, p) != 1) return k;
        ++k;
    }
}

/// Euler-criterion check that 1..k are residues; the independent
/// verification pass behind every returned prime.
inline bool verify_chain(const PrimeField& f, long k) {
    return chain_length(f) >= k;
}

inline std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> sieve(static_cast<size_t>(n) + 1, true);
    for (long i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (long j = i + i; j <= n; j += i) sieve[j] = false;
    }
    return out;
}

namespace detail {

// (q|p) = 1 for every prime q <= k, assuming p prime, p = 3 (mod 4).
inline bool residue_prefilter(const Integer& p, const std::vector<long>& qs) {
    for (long q : qs) {
        if (q == 2) {
            unsigned long r = mpz_fdiv_ui(p.get_mpz_t(), 8);
            if (r != 1 && r != 7) return false;
        } else {
            if (jacobi(Integer(q), p) != 1) return false;
        }
    }
    return true;
}

} // namespace detail

/// Smallest prime p > max(min_bound, k) in the requested progression with
/// chain_length(p) >= k. Throws SearchExhausted when the candidate budget
/// runs out; qualifying primes exist for every k, but the search is finite.
inline FieldPtr find_chain_prime(const ChainPrimeRequest& req) {
    if (req.k < 1) throw BoundTooLarge("chain depth must be >= 1");
    Integer start = std::max(req.min_bound, Integer(req.k));
    const long step = req.require_mod8 ? 8 : 4;
    const long want = req.require_mod8 ? 7 : 3;

    Integer p = start + 1;
    long r = static_cast<long>(mpz_fdiv_ui(p.get_mpz_t(), step));
    p += (want - r + step) % step;

    const std::vector<long> qs = primes_up_to(req.k);
    for (long tried = 0; tried < req.limit; ++tried, p += step) {
        if (!detail::residue_prefilter(p, qs)) continue;
        if (!is_prime(p)) continue;
        FieldPtr f = PrimeField::make(p);
        if (verify_chain(*f, req.k)) return f;
    }
    throw SearchExhausted("no chain prime for k = " + std::to_string(req.k) + " within " +
                          std::to_string(req.limit) + " candidates");
}

/// Smallest prime p = 7 (mod 8) with p > 32 k^16 and chain_length(p) >=
/// effective_bound. The effective bound is the coefficient bound of the
/// working set A u AA, so every positive coefficient maps to a nonzero
/// square; k alone would do for C_k membership by multiplicative closure.
inline FieldPtr find_theorem1_prime(long k, long effective_bound, long limit = 100000000) {
    if (k < 1) throw BoundTooLarge("k must be >= 1");
    if (effective_bound < k)
        throw BoundTooLarge("effective bound must cover k");
    Integer bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(k), 16);
    bound *= 32;
    ChainPrimeRequest req;
    req.k = effective_bound;
    req.min_bound = bound;
    req.require_mod8 = true;
    req.limit = limit;
    return find_chain_prime(req);
}

/// 32 k^16, the magnitude bound from the injectivity argument.
inline Integer theorem1_bound(long k) {
    Integer bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(k), 16);
    return bound * 32;
}

} // namespace lorentz
