#pragma once

/**
 * @file integer.hpp
 * @brief Arbitrary-precision integers and primality testing.
 *
 * Integers are GMP mpz_class values. Primality is Miller-Rabin: below 2^64
 * the first twelve prime bases give a deterministic answer, above that a
 * configurable number of rounds is run with bases derived deterministically
 * from the input, so repeated runs produce identical reports.
 */

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace lorentz {

using Integer = mpz_class;

inline Integer pow_mod(const Integer& base, const Integer& exp, const Integer& mod) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

namespace detail {

// One strong-probable-prime round. n odd, n - 1 = d * 2^s.
inline bool miller_rabin_round(const Integer& n, const Integer& d, unsigned long s,
                               const Integer& base) {
    Integer a = base % n;
    if (a <= 1) return true;
    Integer x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

/// Miller-Rabin primality test. Deterministic for n < 2^64 (twelve prime
/// bases suffice there); probabilistic with `rounds` extra bases above.
inline bool is_prime(const Integer& n, int rounds = 40) {
    if (n < 2) return false;
    static const int small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                       23, 29, 31, 37, 41, 43, 47, 53};
    for (int p : small_primes) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }

    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    static const int det_bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int b : det_bases)
        if (!detail::miller_rabin_round(n, d, s, b)) return false;

    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) return true;

    // Additional bases seeded from n itself: deterministic per input.
    std::uint64_t state = mpz_fdiv_ui(n.get_mpz_t(), 0xFFFFFFFFFFFFFFC5ull) ^ 0x9E3779B97F4A7C15ull;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int i = 0; i < rounds; ++i) {
        Integer base = Integer(static_cast<unsigned long>(next() >> 1)) % (n - 3) + 2;
        if (!detail::miller_rabin_round(n, d, s, base)) return false;
    }
    return true;
}

/// Jacobi symbol (a|n), n odd positive.
inline int jacobi(const Integer& a, const Integer& n) {
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

struct PrimalityCertificate {
    bool probable_prime = false;
    bool deterministic = false;  // fixed-base result is exact below 2^64
    int rounds = 0;              // probabilistic rounds run above 2^64
};

/// Re-checks a final answer. Below 2^64 the fixed-base pass is a proof;
/// above, the best on offer is more rounds, and the certificate says so.
inline PrimalityCertificate certify_prime(const Integer& n, int extra_rounds = 256) {
    PrimalityCertificate cert;
    cert.deterministic = mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
    cert.rounds = cert.deterministic ? 0 : 40 + extra_rounds;
    cert.probable_prime = is_prime(n, cert.rounds);
    return cert;
}

} // namespace lorentz
