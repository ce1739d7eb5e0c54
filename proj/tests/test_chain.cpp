#include <catch2/catch_amalgamated.hpp>

#include "lorentz/chain.hpp"

using namespace lorentz;

TEST_CASE("chain_length by direct Euler scans", "[chain]") {
    CHECK(chain_length(*PrimeField::make(7)) == 2);
    CHECK(chain_length(*PrimeField::make(23)) == 4);
    CHECK(chain_length(*PrimeField::make(71)) == 6);
    CHECK(chain_length(*PrimeField::make(47)) == 4);
    CHECK(chain_length(*PrimeField::make(31)) == 2);
    CHECK(chain_length(*PrimeField::make(3)) == 1);
}

TEST_CASE("find_chain_prime: table, verification, growth", "[chain]") {
    const long expected[] = {7, 23, 23, 71, 71, 311, 311};
    FieldPtr prev;
    for (long k = 2; k <= 8; ++k) {
        ChainPrimeRequest req;
        req.k = k;
        auto f = find_chain_prime(req);
        CHECK(f->modulus() == expected[k - 2]);
        CHECK(is_prime(f->modulus()));
        CHECK(f->minkowski_admissible());
        CHECK(verify_chain(*f, k));
        CHECK(f->modulus() >= 2 * k + 1);  // chain primes exceed 2k
        if (prev) CHECK(f->modulus() >= prev->modulus());  // monotone in k
        prev = f;
    }
}

TEST_CASE("find_chain_prime respects the lower bound", "[chain]") {
    ChainPrimeRequest req;
    req.k = 2;
    req.min_bound = 7;  // exclusive, so 7 itself is skipped
    auto f = find_chain_prime(req);
    CHECK(f->modulus() == 23);
}

TEST_CASE("search gives up at the candidate budget", "[chain]") {
    ChainPrimeRequest req;
    req.k = 1000000;  // chain density ~2^-k: unreachable
    req.limit = 20000;
    CHECK_THROWS_AS(find_chain_prime(req), SearchExhausted);
}

TEST_CASE("theorem-1 prime: bound and chain condition together", "[chain]") {
    CHECK(theorem1_bound(1) == 32);
    CHECK(theorem1_bound(2) == 2097152);

    auto f1 = find_theorem1_prime(1, 1);
    CHECK(f1->modulus() == 47);

    auto f2 = find_theorem1_prime(2, 2);
    CHECK(f2->modulus() == 2097223);  // golden from the first verified run
    CHECK(f2->modulus() > theorem1_bound(2));
    CHECK(verify_chain(*f2, 2));

    auto f27 = find_theorem1_prime(2, 7);
    CHECK(f27->modulus() == 2097311);
    CHECK(verify_chain(*f27, 7));

    CHECK_THROWS_AS(find_theorem1_prime(2, 1), BoundTooLarge);  // bound must cover k
}

TEST_CASE("every positive member of C_k maps to a square under a chain prime", "[chain]") {
    // chain length >= k plus multiplicative closure covers all of C_k > 0
    for (long k = 2; k <= 6; ++k) {
        ChainPrimeRequest req;
        req.k = k;
        auto f = find_chain_prime(req);
        for (long s = 1; s <= k; ++s)
            for (long t = 1; t <= k; ++t) {
                Rational q(s, t);
                CHECK(is_quadratic_residue(canonical_map(q, f)));
            }
    }
    // same for a magnitude-bounded prime with effective bound 5
    auto f = find_theorem1_prime(1, 5);
    CHECK(f->modulus() == 71);  // 47 has chain length 4
    for (long s = 1; s <= 5; ++s)
        for (long t = 1; t <= 5; ++t)
            CHECK(is_quadratic_residue(canonical_map(Rational(s, t), f)));
}
