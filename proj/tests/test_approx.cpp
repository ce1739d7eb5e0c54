#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "lorentz/approx.hpp"
#include "lorentz/random.hpp"

using namespace lorentz;

namespace {

LorentzTransform<double> real_identity() {
    return LorentzTransform<double>::unchecked(Mat4<double>::identity_like(1.0));
}

std::string key_of(const LorentzTransform<Rational>& t) {
    std::string s;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += t(i, j).str() + ",";
    return s;
}

} // namespace

TEST_CASE("boost_rotation_split: pinned cases and round trip", "[approx]") {
    auto b2 = basic_boost(2.0);
    auto sp = boost_rotation_split(b2);
    CHECK(sp.alpha == Catch::Approx(2.0).margin(1e-12));
    CHECK(max_abs_diff(sp.R.matrix(), Mat4<double>::identity_like(1.0)) < 1e-12);

    Rng rng(1);
    auto q = rng.rotation();
    auto sq = boost_rotation_split(q);
    CHECK(sq.alpha == 1.0);
    CHECK(max_abs_diff(sq.R.matrix(), q.matrix()) == 0.0);

    for (int i = 0; i < 200; ++i) {
        auto t = rng.orthochronous_proper(1.0, 9.0);
        auto s = boost_rotation_split(t);
        CHECK(s.alpha >= 1.0);
        auto rebuilt = compose(
            compose(compose(s.S, basic_boost(s.alpha)), inverse(s.S)), s.R);
        CHECK(max_abs_diff(rebuilt.matrix(), t.matrix()) < 1e-9);
    }

    CHECK_THROWS_AS(boost_rotation_split(compose(named_generator<double>(NamedGenerator::SpaceTimeReversal, 1.0),
                                                 basic_boost(2.0))),
                    NotOrthochronousProper);
}

TEST_CASE("boost recovered with residual rotation", "[approx]") {
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        auto rot = rng.rotation();
        auto t = compose(basic_boost(2.0), rot);
        auto s = boost_rotation_split(t);
        CHECK(s.alpha == Catch::Approx(2.0).epsilon(1e-9));
        CHECK(max_abs_diff(s.R.matrix(), rot.matrix()) < 1e-9);
    }
}

TEST_CASE("euler_factor: examples, gimbal, round trip", "[approx]") {
    auto id = euler_factor(real_identity());
    CHECK(id.theta1 == 0.0);
    CHECK(id.theta2 == 0.0);
    CHECK(id.theta3 == 0.0);

    auto rx = euler_factor(LorentzTransform<double>::unchecked(rot_x(0.7)));
    CHECK(rx.theta1 == Catch::Approx(0.7).margin(1e-12));
    CHECK(rx.theta2 == Catch::Approx(0.0).margin(1e-12));
    CHECK(rx.theta3 == 0.0);

    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        auto r = rng.rotation();
        auto ef = euler_factor(r);
        CHECK(ef.theta2 >= 0.0);
        CHECK(ef.theta2 <= M_PI);
        Mat4<double> rebuilt = rot_x(ef.theta1) * rot_y(ef.theta2) * rot_x(ef.theta3);
        CHECK(max_abs_diff(rebuilt, r.matrix()) < 1e-9);
    }
    // gimbal: theta2 = pi
    Mat4<double> g = rot_x(0.3) * rot_y(M_PI) * rot_x(-0.9);
    auto ef = euler_factor(LorentzTransform<double>::unchecked(g));
    CHECK(ef.theta3 == 0.0);
    CHECK(max_abs_diff(rot_x(ef.theta1) * rot_y(ef.theta2) * rot_x(ef.theta3), g) < 1e-9);

    CHECK_THROWS_AS(euler_factor(basic_boost(2.0)), NotRotation);
}

TEST_CASE("angle_to_param", "[approx]") {
    CHECK(angle_to_param(0.0).kind == AngleParam::Kind::Identity);
    CHECK(angle_to_param(2 * M_PI).kind == AngleParam::Kind::Identity);
    CHECK(angle_to_param(M_PI).kind == AngleParam::Kind::HalfTurn);
    CHECK(angle_to_param(-M_PI).kind == AngleParam::Kind::HalfTurn);

    auto q = angle_to_param(M_PI / 2);
    REQUIRE(q.kind == AngleParam::Kind::Param);
    CHECK(q.alpha == Catch::Approx(1.0).margin(1e-12));

    auto p3 = angle_to_param(M_PI / 3);
    REQUIRE(p3.kind == AngleParam::Kind::Param);
    CHECK(p3.alpha == Catch::Approx(std::sqrt(3.0)).margin(1e-12));
    // the basic rotation with that parameter has cosine entry 1/2
    CHECK(basic_rotation(p3.alpha)(2, 2) == Catch::Approx(0.5).margin(1e-12));

    // sign of alpha follows sin(theta)
    CHECK(angle_to_param(-M_PI / 2).alpha == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("rational_approximate: pinned cases", "[approx]") {
    auto res_id = rational_approximate(real_identity(), CkBound(5));
    CHECK(res_id.Tq.matrix() == Mat4<Rational>::identity_like(Rational(1)));
    CHECK(res_id.k_effective == 1);
    CHECK(res_id.error == 0.0);
    CHECK(res_id.factors.empty());

    auto res_b2 = rational_approximate(basic_boost(2.0), CkBound(2));
    CHECK(res_b2.Tq == basic_boost(Rational(2)));
    CHECK(res_b2.error < 1e-12);
    CHECK(res_b2.k_effective == 5);

    Rng rng(4);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        auto t = rng.orthochronous_proper(1.0, 9.0);  // norm <= 10 roughly
        auto res = rational_approximate(t, CkBound(2048));
        worst = std::max(worst, res.error);
        // the factor product is the result, exactly
        Mat4<Rational> prod = Mat4<Rational>::identity_like(Rational(1));
        for (const auto& f : res.factors) prod = prod * f.matrix();
        CHECK(prod == res.Tq.matrix());
        CHECK(res.factors.size() <= 10);
        CHECK(in_ck(Rational(1), CkBound(res.k_effective)));
        CHECK(validate(res.Tq.matrix()).proper());  // exact Lorentz, no float leakage
    }
    CHECK(worst < 0.01);
}

TEST_CASE("retract: fixed points and idempotence", "[approx]") {
    // B_2 supplied exactly is reproduced exactly at k = 2 (parameter 2 in C_2)
    auto b2q = basic_boost(Rational(2));
    CHECK(retract(b2q, CkBound(2)) == b2q);
    // and is a fixed point of the exact channel at k = 5 (entries in C_5)
    CHECK(retract(b2q, CkBound(5)) == b2q);

    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        auto t = rng.orthochronous_proper(1.0, 6.0);
        auto f1 = retract(t, CkBound(300));
        auto f2 = retract(f1, CkBound(300));
        CHECK(f1 == f2);
    }

    CHECK_THROWS_AS(retract(named_generator(NamedGenerator::TimeReversal, Rational(1)), CkBound(3)),
                    NotOrthochronousProper);
}

TEST_CASE("monotone improvement of the best sample error", "[approx]") {
    Rng rng(6);
    std::vector<LorentzTransform<double>> sample;
    for (int i = 0; i < 100; ++i) sample.push_back(rng.orthochronous_proper(1.0, 8.0));
    double min_small = 1e9, min_large = 1e9;
    for (const auto& t : sample) {
        min_small = std::min(min_small, rational_approximate(t, CkBound(30)).error);
        min_large = std::min(min_large, rational_approximate(t, CkBound(120)).error);
    }
    CHECK(min_large <= min_small);
}

TEST_CASE("retract_extended: components and exact representatives", "[approx]") {
    const Rational one(1);
    auto tau = named_generator(NamedGenerator::TimeReversal, one);
    CHECK(retract_extended(tau, CkBound(2)) == tau);
    auto par = named_generator(NamedGenerator::Parity, one);
    CHECK(retract_extended(par, CkBound(2)) == par);
    auto str = named_generator(NamedGenerator::SpaceTimeReversal, one);
    CHECK(retract_extended(str, CkBound(2)) == str);

    // every coset of the C_2 retract is fixed pointwise through the exact channel
    auto a2 = enumerate_a(CkBound(2));
    for (size_t i = 0; i < a2.size(); i += 17) {
        for (auto rep : {NamedGenerator::Parity, NamedGenerator::TimeReversal,
                         NamedGenerator::SpaceTimeReversal}) {
            auto moved = compose(named_generator(rep, one), a2[i]);
            CHECK(retract_extended(moved, CkBound(2)) == moved);
        }
    }

    Rng rng(7);
    for (int i = 0; i < 25; ++i) {
        auto t = rng.orthochronous_proper(1.0, 5.0);
        for (auto rep : {NamedGenerator::Parity, NamedGenerator::TimeReversal,
                         NamedGenerator::SpaceTimeReversal}) {
            auto moved = compose(named_generator<double>(rep, 1.0), t);
            auto f = retract_extended(moved, CkBound(100));
            CHECK(f.det_part() == moved.det_part());
            CHECK(f.chronicity() == moved.chronicity());
            // Frobenius distance matches the orthochronous-proper core's
            double err_moved = frobenius_norm(moved.matrix() - to_double(f.matrix()));
            auto core = retract(t, CkBound(100));
            double err_core = frobenius_norm(t.matrix() - to_double(core.matrix()));
            CHECK(err_moved == Catch::Approx(err_core).margin(1e-15));
        }
    }
}

TEST_CASE("enumerate_a: the 24 rotations at k = 1", "[approx]") {
    auto a1 = enumerate_a(CkBound(1));
    CHECK(a1.size() == 24);
    std::set<std::string> keys;
    for (const auto& t : a1) {
        keys.insert(key_of(t));
        CHECK(t.proper());
        CHECK(t.orthochronous());
        CHECK(is_space_rotation(t));  // entries in {-1,0,1} force the first column
    }
    CHECK(keys.size() == 24);
    CHECK(keys.count(key_of(LorentzTransform<Rational>::unchecked(
              Mat4<Rational>::identity_like(Rational(1))))) == 1);
    CHECK(keys.count(key_of(named_generator(NamedGenerator::HalfTurnX, Rational(1)))) == 1);

    // closed under composition and inverse: it is the rotation group
    for (const auto& x : a1) {
        CHECK(keys.count(key_of(inverse(x))) == 1);
        for (const auto& y : a1) CHECK(keys.count(key_of(compose(x, y))) == 1);
    }
}

TEST_CASE("enumerate_a: k = 2 and 3 sizes, inverse closure, membership", "[approx]") {
    auto a2 = enumerate_a(CkBound(2));
    CHECK(a2.size() == 216);
    std::set<std::string> keys;
    for (const auto& t : a2) keys.insert(key_of(t));
    // B_2 has entries 5/4, 3/4 not in C_2: must be absent
    CHECK(keys.count(key_of(basic_boost(Rational(2)))) == 0);
    for (const auto& t : a2) {
        CHECK(keys.count(key_of(inverse(t))) == 1);
        CHECK(validate(t.matrix()).proper());
    }

    auto a3 = enumerate_a(CkBound(3));
    CHECK(a3.size() == 1176);
    // A(2) is contained in A(3)
    std::set<std::string> keys3;
    for (const auto& t : a3) keys3.insert(key_of(t));
    for (const auto& k : keys) CHECK(keys3.count(k) == 1);

    CHECK_THROWS_AS(enumerate_a(CkBound(4)), BoundTooLarge);
}

TEST_CASE("cross-oracle: small approximation outputs are members of A", "[approx]") {
    auto a1 = enumerate_a(CkBound(1));
    std::set<std::string> keys;
    for (const auto& t : a1) keys.insert(key_of(t));

    // quarter turn about x: parameter 1, entries in C_1
    auto res = rational_approximate(LorentzTransform<double>::unchecked(rot_x(M_PI / 2)), CkBound(1));
    CHECK(res.k_effective == 1);
    CHECK(keys.count(key_of(res.Tq)) == 1);

    auto res_id = rational_approximate(real_identity(), CkBound(3));
    CHECK(keys.count(key_of(res_id.Tq)) == 1);
}

TEST_CASE("constructive f versus the nearest-member oracle at k = 2", "[approx]") {
    auto a2 = enumerate_a(CkBound(2));

    // On members of A the constructive f attains the nearest-member
    // minimum: distance zero, via the exact channel.
    for (const auto& m : a2) CHECK(retract(m, CkBound(2)) == m);

    // Off A the two retractions target different sets (factor products
    // escape C_2), so the comparison is measured, not asserted.
    Rng rng(8);
    double worst_ratio = 0.0;
    for (int i = 0; i < 20; ++i) {
        auto t = rng.orthochronous_proper(1.0, 2.0);
        double nearest = 1e300;
        for (const auto& m : a2)
            nearest = std::min(nearest, frobenius_norm(t.matrix() - to_double(m.matrix())));
        auto res = rational_approximate(t, CkBound(2));
        CHECK(std::isfinite(nearest));
        CHECK(std::isfinite(res.error));
        worst_ratio = std::max(worst_ratio, res.error / nearest);
    }
    INFO("constructive/nearest error ratio, worst of 20: " << worst_ratio);
    CHECK(worst_ratio < 10.0);  // same order of magnitude as the oracle
}

TEST_CASE("coefficient_bound", "[approx]") {
    CHECK(coefficient_bound(LorentzTransform<Rational>::unchecked(
              Mat4<Rational>::identity_like(Rational(1)))) == 1);
    CHECK(coefficient_bound(basic_boost(Rational(2))) == 5);
    CHECK(coefficient_bound(compose(basic_boost(Rational(2)), basic_boost(Rational(2)))) == 17);
}
