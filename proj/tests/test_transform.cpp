#include <catch2/catch_amalgamated.hpp>

#include "lorentz/random.hpp"
#include "lorentz/transform.hpp"

using namespace lorentz;

namespace {

const Rational kOne(1);

LorentzTransform<Rational> identity_q() {
    return LorentzTransform<Rational>::unchecked(Mat4<Rational>::identity_like(kOne));
}

} // namespace

TEST_CASE("minkowski norm", "[lorentz]") {
    CHECK(minkowski_norm(Vec4<Rational>{kOne, Rational(0), Rational(0), Rational(0)}) == kOne);
    CHECK(minkowski_norm(Vec4<Rational>{Rational(5, 4), Rational(3, 4), Rational(0), Rational(0)}) ==
          kOne);
    CHECK(minkowski_norm(Vec4<Rational>{Rational(0), kOne, kOne, Rational(0)}) == Rational(-2));
}

TEST_CASE("validate: classification and rejection", "[lorentz]") {
    auto id = validate(Mat4<Rational>::identity_like(kOne));
    CHECK(id.det_part() == 1);
    CHECK(id.chronicity() == Chronicity::Orthochronous);

    auto tau = validate(Mat4<Rational>::diagonal(-kOne, kOne, kOne, kOne));
    CHECK(tau.det_part() == -1);
    CHECK(tau.chronicity() == Chronicity::Antichronous);

    Mat4<Rational> bad = Mat4<Rational>::identity_like(kOne);
    bad(0, 0) = Rational(2);
    CHECK_THROWS_AS(validate(bad), NotLorentz);

    // scaled identity is not Lorentz
    Mat4<double> bad2 = Mat4<double>::identity_like(1.0);
    for (int i = 0; i < 4; ++i) bad2(i, i) = 1.001;
    CHECK_THROWS_AS(validate(bad2), NotLorentz);

    // -1 must not be a square: p = 13 rejected for matrices
    auto f13 = PrimeField::make(13);
    CHECK_THROWS_AS(validate(Mat4<FpElem>::identity_like(FpElem(1, f13))), DomainNotAdmissible);
}

TEST_CASE("basic boost: formula, preconditions, F_7 projection", "[lorentz]") {
    auto b2 = basic_boost(Rational(2));
    CHECK(b2(0, 0) == Rational(5, 4));
    CHECK(b2(0, 1) == Rational(3, 4));
    CHECK(b2(1, 0) == Rational(3, 4));
    CHECK(b2(1, 1) == Rational(5, 4));
    CHECK(b2(2, 2) == kOne);
    CHECK(b2.chronicity() == Chronicity::Orthochronous);

    CHECK(basic_boost(Rational(1)) == identity_q());
    CHECK_THROWS_AS(basic_boost(Rational(0)), ZeroAlpha);
    CHECK_THROWS_AS(basic_boost(Rational(-2)), NonSquareAlpha);
    CHECK_NOTHROW(basic_boost_any(Rational(-2)));

    auto f7 = PrimeField::make(7);
    auto b2p = basic_boost(FpElem(2, f7));
    CHECK(b2p(0, 0).value() == 3);
    CHECK(b2p(0, 1).value() == 6);
    CHECK(b2p.chronicity() == Chronicity::Antichronous);  // 3 is not a residue mod 7
    CHECK_THROWS_AS(basic_boost(FpElem(3, f7)), NonSquareAlpha);
    CHECK_NOTHROW(basic_boost_any(FpElem(3, f7)));
}

TEST_CASE("basic rotation: formula over Q and F_7", "[lorentz]") {
    auto r1 = basic_rotation(kOne);
    CHECK(r1(2, 2) == Rational(0));
    CHECK(r1(2, 3) == kOne);
    CHECK(r1(3, 2) == -kOne);

    auto r2 = basic_rotation(Rational(2));
    CHECK(r2(2, 2) == Rational(3, 5));
    CHECK(r2(2, 3) == Rational(4, 5));
    CHECK(r2(3, 2) == Rational(-4, 5));

    auto f7 = PrimeField::make(7);
    auto r3 = basic_rotation(FpElem(3, f7));
    CHECK(r3(2, 2).value() == 5);
    CHECK(r3(2, 3).value() == 2);
    CHECK(r3(3, 2).value() == 5);
    CHECK(r3(3, 3).value() == 5);

    CHECK_THROWS_AS(basic_rotation(Rational(0)), ZeroAlpha);
}

TEST_CASE("named generators", "[lorentz]") {
    auto str = named_generator(NamedGenerator::SpaceTimeReversal, kOne);
    CHECK(str.matrix() == -Mat4<Rational>::identity_like(kOne));
    CHECK(str.det_part() == 1);
    CHECK(str.chronicity() == Chronicity::Antichronous);

    auto yz = named_generator(NamedGenerator::YZReflection, kOne);
    CHECK(yz.matrix() == Mat4<Rational>::diagonal(-kOne, -kOne, kOne, kOne));
    CHECK(yz.det_part() == 1);

    auto c = named_generator(NamedGenerator::AxisRot3, kOne);
    CHECK(compose(compose(c, c), c) == identity_q());
    CHECK(compose(c, c) == named_generator(NamedGenerator::AxisRot3Sq, kOne));

    auto ht = named_generator(NamedGenerator::HalfTurnX, kOne);
    CHECK(ht.matrix() == Mat4<Rational>::diagonal(kOne, kOne, -kOne, -kOne));
    CHECK(compose(ht, ht) == identity_q());

    auto tau = named_generator(NamedGenerator::TimeReversal, kOne);
    CHECK(tau.det_part() == -1);
    CHECK(tau.chronicity() == Chronicity::Antichronous);
    auto par = named_generator(NamedGenerator::Parity, kOne);
    CHECK(par.det_part() == -1);
    CHECK(par.chronicity() == Chronicity::Orthochronous);
}

TEST_CASE("composition and inverse", "[lorentz]") {
    auto b2 = basic_boost(Rational(2));
    CHECK(compose(b2, b2) == basic_boost(Rational(4)));
    CHECK(inverse(b2) == basic_boost(Rational(1, 2)));
    CHECK(compose(b2, inverse(b2)) == identity_q());
    CHECK(inverse(identity_q()) == identity_q());

    // inverse is J L^T J: coefficients stay in the same subring
    auto r2 = basic_rotation(Rational(2));
    auto inv = inverse(r2);
    CHECK(compose(r2, inv) == identity_q());
    CHECK(inv(2, 3) == Rational(-4, 5));

    auto f7 = PrimeField::make(7);
    auto b2p = basic_boost(FpElem(2, f7));
    CHECK(compose(b2p, inverse(b2p)).matrix() == Mat4<FpElem>::identity_like(FpElem(1, f7)));
    CHECK_THROWS_AS(compose(b2p, basic_boost(FpElem(2, PrimeField::make(23)))), DomainMismatch);
}

TEST_CASE("boost family is one-parameter: B_a B_g = B_ag", "[lorentz]") {
    // exhaustive over F_23, all nonzero parameters
    auto f23 = PrimeField::make(23);
    for (long a = 1; a < 23; ++a)
        for (long g = 1; g < 23; ++g) {
            FpElem fa(a, f23), fg(g, f23);
            CHECK(compose(basic_boost_any(fa), basic_boost_any(fg)) == basic_boost_any(fa * fg));
        }
    // randomized rationals
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        Rational a = rng.rational(9, 9, false);
        Rational g = rng.rational(9, 9, false);
        CHECK(compose(basic_boost_any(a), basic_boost_any(g)) == basic_boost_any(a * g));
    }
}

TEST_CASE("conjugate boosts", "[lorentz]") {
    CHECK(conjugate_boost(identity_q(), Rational(2)) == basic_boost(Rational(2)));
    CHECK(conjugate_boost(named_generator(NamedGenerator::HalfTurnX, kOne), Rational(2)) ==
          basic_boost(Rational(2)));

    auto by = conjugate_boost(named_generator(NamedGenerator::AxisRot3, kOne), Rational(2));
    CHECK(by(0, 0) == Rational(5, 4));
    CHECK(by(0, 2) == Rational(3, 4));
    CHECK(by(2, 0) == Rational(3, 4));
    CHECK(by(2, 2) == Rational(5, 4));
    CHECK(by(1, 1) == kOne);

    CHECK_THROWS_AS(conjugate_boost(basic_boost(Rational(2)), Rational(2)), NotRotation);
}

TEST_CASE("line reflections", "[lorentz]") {
    auto rt = line_reflection(Vec4<Rational>{kOne, Rational(0), Rational(0), Rational(0)});
    CHECK(rt.matrix() == Mat4<Rational>::diagonal(kOne, -kOne, -kOne, -kOne));
    auto rx = line_reflection(Vec4<Rational>{Rational(0), kOne, Rational(0), Rational(0)});
    CHECK(rx.matrix() == Mat4<Rational>::diagonal(-kOne, kOne, -kOne, -kOne));

    CHECK_THROWS_AS(line_reflection(Vec4<Rational>{Rational(2), Rational(0), Rational(0), Rational(0)}),
                    NotUnitNorm);

    // involution with det -1 on random exact axes of norm +-1
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        LorentzTransform<Rational> w = identity_q();
        for (int j = 0; j < 3; ++j) {
            Rational a = rng.rational(4, 4, false);
            w = compose(w, (rng.next_u64() % 2) ? basic_boost_any(a.abs().is_zero() ? kOne : a * a)
                                                : basic_rotation(a));
        }
        Vec4<Rational> axis = column(w.matrix(), static_cast<int>(rng.next_u64() % 4));
        auto refl = line_reflection(axis);
        CHECK(refl.det_part() == -1);
        CHECK(compose(refl, refl) == identity_q());
    }
}

TEST_CASE("frobenius norms", "[lorentz]") {
    CHECK(frobenius_norm(Mat4<double>::identity_like(1.0)) == 2.0);
    CHECK(frobenius_norm(basic_boost(2.0)) == Catch::Approx(2.5).margin(1e-12));
    CHECK(frobenius_norm(basic_boost(1.0)) == Catch::Approx(2.0).margin(1e-12));

    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        auto t = rng.orthochronous_proper(1.0, 8.0);
        auto r = rng.rotation();
        CHECK(frobenius_norm(compose(r, t)) == Catch::Approx(frobenius_norm(t)).margin(1e-9));
        CHECK(frobenius_norm(compose(t, r)) == Catch::Approx(frobenius_norm(t)).margin(1e-9));
    }
    for (int i = 0; i < 50; ++i) {
        double alpha = rng.uniform(1.0, 10.0);
        auto s = rng.rotation(), r = rng.rotation();
        auto t = compose(compose(compose(s, basic_boost(alpha)), inverse(s)), r);
        CHECK(frobenius_norm(t) == Catch::Approx(alpha + 1.0 / alpha).epsilon(1e-9));
    }
}

TEST_CASE("norm preservation across domains", "[lorentz]") {
    Rng rng(37);
    // real
    for (int i = 0; i < 20; ++i) {
        auto t = rng.orthochronous_proper(1.0, 5.0);
        for (int j = 0; j < 100; ++j) {
            Vec4<double> v{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                           rng.uniform(-3, 3)};
            CHECK(minkowski_norm(t.matrix() * v) ==
                  Catch::Approx(minkowski_norm(v)).margin(1e-9 * (1 + std::fabs(minkowski_norm(v)))));
        }
    }
    // rational, exact
    auto b = basic_boost(Rational(3, 2));
    for (int j = 0; j < 100; ++j) {
        Vec4<Rational> v{rng.rational(5, 5), rng.rational(5, 5), rng.rational(5, 5),
                         rng.rational(5, 5)};
        CHECK(minkowski_norm(b.matrix() * v) == minkowski_norm(v));
    }
    // F_p, exact
    auto f23 = PrimeField::make(23);
    auto bp = basic_boost(FpElem(2, f23) * FpElem(2, f23));
    for (long j = 0; j < 100; ++j) {
        Vec4<FpElem> v{FpElem(rng.uniform_long(0, 22), f23), FpElem(rng.uniform_long(0, 22), f23),
                       FpElem(rng.uniform_long(0, 22), f23), FpElem(rng.uniform_long(0, 22), f23)};
        CHECK(minkowski_norm(bp.matrix() * v) == minkowski_norm(v));
    }
}

TEST_CASE("boost velocity", "[lorentz]") {
    CHECK(boost_velocity(Rational(2)) == Rational(3, 5));
    CHECK(boost_velocity(Rational(1)).is_zero());
    CHECK_THROWS_AS(boost_velocity(Rational(0)), ZeroAlpha);
    // velocity of B_2 B_2 equals the addition-formula value
    auto b4 = compose(basic_boost(Rational(2)), basic_boost(Rational(2)));
    CHECK(b4(1, 0) / b4(0, 0) == Rational(15, 17));
    CHECK(boost_velocity(Rational(4)) == Rational(15, 17));
}

TEST_CASE("chronicity never NullTime over R and Q", "[lorentz]") {
    Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        auto t = rng.orthochronous_proper(1.0, 6.0);
        CHECK(std::fabs(t(0, 0)) >= 1.0 - 1e-9);
        CHECK(t.chronicity() != Chronicity::NullTime);
    }
    // exact side: |m(0,0)| >= 1 for random generator words over Q
    for (int i = 0; i < 50; ++i) {
        LorentzTransform<Rational> w = identity_q();
        for (int j = 0; j < 4; ++j) {
            Rational a = rng.rational(3, 3, false);
            w = compose(w, (rng.next_u64() % 2) ? basic_boost_any(a * a) : basic_rotation(a));
        }
        CHECK(w(0, 0).abs() >= kOne);
        CHECK(w.chronicity() != Chronicity::NullTime);
    }
}

TEST_CASE("float predicate residual stays below 1e-9 through 12 generators", "[lorentz]") {
    Rng rng(43);
    const Mat4<double> J = Mat4<double>::metric_like(1.0);
    for (int i = 0; i < 50; ++i) {
        Mat4<double> m = Mat4<double>::identity_like(1.0);
        for (int j = 0; j < 12; ++j) {
            switch (rng.next_u64() % 3) {
                case 0: m = m * basic_boost(rng.uniform(0.2, 5.0)).matrix(); break;
                case 1: m = m * rot_x(rng.uniform(-M_PI, M_PI)); break;
                default: m = m * rng.rotation().matrix();
            }
        }
        CHECK(max_abs_diff(m * J * m.transposed(), J) < 1e-9);
        CHECK_NOTHROW(validate(m));
    }
}
