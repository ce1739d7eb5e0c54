#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <vector>

#include "lorentz/ck.hpp"
#include "lorentz/random.hpp"

using namespace lorentz;

namespace {

// Brute-force oracle: minimize (|x - q|, den, value) lexicographically over
// all reduced s/t with |s| <= k, t <= k.
Rational best_by_brute_force(double x, long k) {
    Rational target = Rational::from_double(x);
    if (target > Rational(k)) target = Rational(k);
    if (target < Rational(-k)) target = Rational(-k);
    bool have = false;
    Rational best(0), best_err(0);
    for (long t = 1; t <= k; ++t)
        for (long s = -k; s <= k; ++s) {
            if (std::gcd(std::labs(s), t) != 1) continue;
            Rational q(s, t);
            Rational err = (target - q).abs();
            if (!have || err < best_err ||
                (err == best_err &&
                 (q.den() < best.den() || (q.den() == best.den() && q < best)))) {
                best = q;
                best_err = err;
                have = true;
            }
        }
    return best;
}

} // namespace

TEST_CASE("in_ck reduces to two comparisons", "[ck]") {
    CHECK(in_ck(Rational(3, 4), CkBound(4)));
    CHECK_FALSE(in_ck(Rational(3, 4), CkBound(3)));
    CHECK(in_ck(Rational(0), CkBound(1)));
    CHECK(in_ck(Rational(-2), CkBound(2)));
    CHECK_FALSE(in_ck(Rational(5, 4), CkBound(2)));
    CHECK_THROWS_AS(CkBound(0), BoundTooLarge);
}

TEST_CASE("best_rational_in_ck: pinned values", "[ck]") {
    // exhaustive minimization over |s|,|t| <= 5 puts 3 nearest to pi
    CHECK(best_rational_in_ck(M_PI, CkBound(5)) == Rational(3));
    CHECK(best_rational_in_ck(M_PI, CkBound(16)) == Rational(16, 5));
    CHECK(best_rational_in_ck(0.5, CkBound(2)) == Rational(1, 2));
    CHECK(best_rational_in_ck(10.0, CkBound(3)) == Rational(3));   // clamped
    CHECK(best_rational_in_ck(-10.0, CkBound(3)) == Rational(-3));
    CHECK(best_rational_in_ck(0.0, CkBound(7)) == Rational(0));
    // tie between 0 and 1 at distance 1/2: smaller value wins
    CHECK(best_rational_in_ck(0.5, CkBound(1)) == Rational(0));
    CHECK(best_rational_in_ck(-0.5, CkBound(1)) == Rational(-1));
}

TEST_CASE("mediant walk agrees with brute force for |x| <= 5, k <= 8", "[ck]") {
    Rng rng(3);
    for (long k = 1; k <= 8; ++k) {
        for (int i = 0; i < 400; ++i) {
            double x = rng.uniform(-5.0, 5.0);
            CHECK(best_rational_in_ck(x, CkBound(k)) == best_by_brute_force(x, k));
        }
        // exact members and near-ties
        for (long t = 1; t <= k; ++t)
            for (long s = -k; s <= k; ++s) {
                if (std::gcd(std::labs(s), t) != 1) continue;
                double x = static_cast<double>(s) / static_cast<double>(t);
                CHECK(best_rational_in_ck(x, CkBound(k)) == best_by_brute_force(x, k));
            }
    }
}

TEST_CASE("C_{k^2} is (1/k)-dense in [-k, k]", "[ck]") {
    Rng rng(4);
    for (long k = 2; k <= 12; ++k) {
        CkBound kk(k * k);
        for (int i = 0; i < 200; ++i) {
            double x = rng.uniform(-static_cast<double>(k), static_cast<double>(k));
            Rational q = best_rational_in_ck(x, kk);
            CHECK(std::fabs(x - q.to_double()) <= 1.0 / static_cast<double>(k));
        }
    }
}

TEST_CASE("huge bounds stay fast via batched descent", "[ck]") {
    CkBound big(Integer("1000000000000"));
    Rational q = best_rational_in_ck(M_PI, big);
    CHECK(std::fabs(q.to_double() - M_PI) < 1e-12);
    CHECK(in_ck(q, big));
}
