#pragma once

/**
 * @file approx.hpp
 * @brief Rotation-boost splitting, Euler factorization, and rational
 *        approximation of real Lorentz transformations.
 *
 * The split convention is T = S B_alpha S^-1 R with the boost applied last:
 * S is the canonical rotation Rx(t1) Ry(t2) taking e_x to the boost
 * direction, alpha = t + |x| >= 1 where (t, x) is the image of e_t, and R
 * is the residual space rotation. Rotations factor in the X-Y-X Euler
 * convention, matching the basic rotation which acts about the x axis.
 *
 * rational_approximate snaps the at most six parameters (two aligning
 * angles, the boost, three residual angles) to best C_k members and
 * composes the corresponding generator matrices exactly over Q. The second
 * application recovers the same snapped parameters, so the retraction is
 * idempotent: parameter gaps in C_k dwarf double rounding noise.
 */

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/ck.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/transform.hpp"

namespace lorentz {

// -- elementary real rotations ------------------------------------------------

/// Rotation about the x axis: yz block [[cos, sin], [-sin, cos]].
inline Mat4<double> rot_x(double theta) {
    Mat4<double> m = Mat4<double>::identity_like(1.0);
    const double c = std::cos(theta), s = std::sin(theta);
    m(2, 2) = c; m(2, 3) = s;
    m(3, 2) = -s; m(3, 3) = c;
    return m;
}

/// Rotation about the y axis, the x-rotation conjugated by the axis 3-cycle.
inline Mat4<double> rot_y(double theta) {
    Mat4<double> m = Mat4<double>::identity_like(1.0);
    const double c = std::cos(theta), s = std::sin(theta);
    m(1, 1) = c; m(1, 3) = -s;
    m(3, 1) = s; m(3, 3) = c;
    return m;
}

struct BoostRotationSplit {
    LorentzTransform<double> S;  // aligns e_x with the boost direction
    double alpha;                // boost parameter, >= 1
    LorentzTransform<double> R;  // residual space rotation
};

struct EulerFactors {
    double theta1, theta2, theta3;  // X-Y-X, theta2 in [0, pi]
};

namespace detail {

struct AlignAngles {
    double t1, t2;  // S = Rx(t1) Ry(t2)
    bool trivial;   // no boost present
    double alpha;
};

inline AlignAngles align_angles(const LorentzTransform<double>& t) {
    Vec4<double> v = column(t.matrix(), 0);
    const double r = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    if (r < 1e-12) return {0.0, 0.0, true, 1.0};
    const double ux = v.x / r, uy = v.y / r, uz = v.z / r;
    const double t2 = std::acos(std::clamp(ux, -1.0, 1.0));
    const double t1 = (std::sin(t2) > 1e-12) ? std::atan2(uy, uz) : 0.0;
    return {t1, t2, false, v.t + r};
}

} // namespace detail

/// Splits an orthochronous proper T as S B_alpha S^-1 R. A pure rotation
/// comes back as (I, 1, T).
inline BoostRotationSplit boost_rotation_split(const LorentzTransform<double>& t,
                                               double tol = 1e-9) {
    if (!t.proper() || !t.orthochronous())
        throw NotOrthochronousProper("split requires an orthochronous proper transform");
    detail::AlignAngles a = detail::align_angles(t);
    if (a.trivial) {
        auto id = LorentzTransform<double>::unchecked(Mat4<double>::identity_like(1.0));
        return {id, 1.0, t};
    }
    Mat4<double> s = rot_x(a.t1) * rot_y(a.t2);
    Mat4<double> binv = s * detail::boost_matrix(1.0 / a.alpha) * s.transposed();
    Mat4<double> r = binv * t.matrix();
    auto rt = LorentzTransform<double>::unchecked(r);
    if (!is_space_rotation(rt, std::max(tol, 1e-9) * 100))
        throw NotOrthochronousProper("residual after removing the boost is not a rotation");
    return {LorentzTransform<double>::unchecked(s), a.alpha, rt};
}

/// X-Y-X Euler angles of a space rotation; the 3x3 block is re-orthonormalized
/// (modified Gram-Schmidt) first to stop drift in long compositions. Gimbal
/// cases theta2 in {0, pi} put the whole x-rotation into theta1.
inline EulerFactors euler_factor(const LorentzTransform<double>& rot, double tol = 1e-9) {
    if (!is_space_rotation(rot, tol)) throw NotRotation("euler factorization needs a space rotation");

    double b[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[i][j] = rot(i + 1, j + 1);
    // MGS over columns
    for (int c = 0; c < 3; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            double dot = 0;
            for (int i = 0; i < 3; ++i) dot += b[i][c] * b[i][prev];
            for (int i = 0; i < 3; ++i) b[i][c] -= dot * b[i][prev];
        }
        double n = std::sqrt(b[0][c] * b[0][c] + b[1][c] * b[1][c] + b[2][c] * b[2][c]);
        for (int i = 0; i < 3; ++i) b[i][c] /= n;
    }

    const double th2 = std::acos(std::clamp(b[0][0], -1.0, 1.0));
    double th1, th3;
    if (std::sin(th2) > 1e-9) {
        th3 = std::atan2(b[0][1], -b[0][2]);
        th1 = std::atan2(b[1][0], b[2][0]);
    } else {
        th3 = 0.0;
        // P Ry(th2)^T is a pure x-rotation; read its angle off the yz block.
        const double c2 = std::cos(th2), s2 = std::sin(th2);
        const double r11 = b[1][1];
        const double r12 = b[1][0] * s2 + b[1][2] * c2;
        th1 = std::atan2(r12, r11);
    }
    return {th1, th2, th3};
}

struct AngleParam {
    enum class Kind { Param, Identity, HalfTurn } kind;
    double alpha;  // cot(theta/2) when kind == Param
};

/// theta = 0 (mod 2 pi) is the identity, theta = pi the half turn, otherwise
/// the basic-rotation parameter alpha = cot(theta/2) whose sign follows
/// sin(theta).
inline AngleParam angle_to_param(double theta, double tol = 1e-12) {
    const double two_pi = 2.0 * M_PI;
    double th = std::remainder(theta, two_pi);  // (-pi, pi]
    if (std::fabs(th) <= tol) return {AngleParam::Kind::Identity, 0.0};
    if (std::fabs(std::fabs(th) - M_PI) <= tol) return {AngleParam::Kind::HalfTurn, 0.0};
    return {AngleParam::Kind::Param, 1.0 / std::tan(th / 2.0)};
}

struct ApproxResult {
    LorentzTransform<Rational> Tq;
    Integer k_effective;  // minimal k with every entry of Tq in C_k
    double error;         // || T - Tq ||_F
    std::vector<LorentzTransform<Rational>> factors;  // product, left to right, is Tq
};

/// Minimal k with every entry of T in C_k: max over entries of
/// max(|num|, den).
inline Integer coefficient_bound(const LorentzTransform<Rational>& t) {
    Integer b = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Integer n = t(i, j).num();
            if (n < 0) n = -n;
            b = std::max(b, n);
            b = std::max(b, t(i, j).den());
        }
    return b;
}

namespace detail {

enum class Axis { X, Y };

// Exact rational elementary rotation from a snapped parameter; a parameter
// snapped to 0 degenerates to the half turn, its alpha -> 0 limit.
inline std::optional<LorentzTransform<Rational>> rational_rotation_factor(const AngleParam& ap,
                                                                          Axis axis,
                                                                          const CkBound& k) {
    const Rational one(1);
    if (ap.kind == AngleParam::Kind::Identity) return std::nullopt;
    if (ap.kind == AngleParam::Kind::HalfTurn) {
        return named_generator(axis == Axis::X ? NamedGenerator::HalfTurnX : NamedGenerator::HalfTurnY,
                               one);
    }
    Rational q = best_rational_in_ck(ap.alpha, k);
    if (q.is_zero()) {
        return named_generator(axis == Axis::X ? NamedGenerator::HalfTurnX : NamedGenerator::HalfTurnY,
                               one);
    }
    LorentzTransform<Rational> rx = basic_rotation(q);
    if (axis == Axis::X) return rx;
    LorentzTransform<Rational> c = named_generator(NamedGenerator::AxisRot3, one);
    return compose(compose(c, rx), inverse(c));
}

} // namespace detail

/// Factor-snapped rational approximation: split, factor both rotations,
/// snap every parameter into C_k, recompose exactly over Q. The boost
/// parameter stays positive; identity and half-turn factors stay exact.
inline ApproxResult rational_approximate(const LorentzTransform<double>& t, const CkBound& k) {
    if (!t.proper() || !t.orthochronous())
        throw NotOrthochronousProper("approximation requires an orthochronous proper transform");

    using detail::Axis;
    detail::AlignAngles a = detail::align_angles(t);

    LorentzTransform<double> residual = t;
    std::optional<Rational> boost_q;
    std::optional<AngleParam> s1, s2;
    if (!a.trivial) {
        Mat4<double> s = rot_x(a.t1) * rot_y(a.t2);
        Mat4<double> binv = s * detail::boost_matrix(1.0 / a.alpha) * s.transposed();
        residual = LorentzTransform<double>::unchecked(binv * t.matrix());
        Rational qb = best_rational_in_ck(a.alpha, k);
        if (!qb.is_positive()) qb = Rational(1);  // alpha >= 1, so unreachable
        boost_q = qb;
        s1 = angle_to_param(a.t1);
        s2 = angle_to_param(a.t2);
    }
    EulerFactors ef = euler_factor(residual, 1e-7);

    const Rational one(1);
    std::vector<LorentzTransform<Rational>> factors;
    Mat4<Rational> accm = Mat4<Rational>::identity_like(one);

    auto push = [&](const std::optional<LorentzTransform<Rational>>& f) {
        if (!f) return;
        factors.push_back(*f);
        accm = accm * f->matrix();
    };

    if (boost_q) {
        auto f1 = detail::rational_rotation_factor(*s1, Axis::X, k);
        auto f2 = detail::rational_rotation_factor(*s2, Axis::Y, k);
        std::vector<LorentzTransform<Rational>> sq;
        if (f1) sq.push_back(*f1);
        if (f2) sq.push_back(*f2);
        for (const auto& f : sq) push(f);
        push(basic_boost(*boost_q));
        for (auto it = sq.rbegin(); it != sq.rend(); ++it) push(inverse(*it));
    }
    push(detail::rational_rotation_factor(angle_to_param(ef.theta1), Axis::X, k));
    push(detail::rational_rotation_factor(angle_to_param(ef.theta2), Axis::Y, k));
    push(detail::rational_rotation_factor(angle_to_param(ef.theta3), Axis::X, k));

    ApproxResult out{validate(accm), Integer(1), 0.0, std::move(factors)};
    out.k_effective = coefficient_bound(out.Tq);
    out.error = frobenius_norm(t.matrix() - to_double(out.Tq.matrix()));
    return out;
}

/// The retraction f of Theorem 1, constructive form. A float input is never
/// treated as a member of A; an exact input already inside C_k is returned
/// unchanged,  so f fixes its image pointwise.
inline LorentzTransform<Rational> retract(const LorentzTransform<double>& t, const CkBound& k) {
    return rational_approximate(t, k).Tq;
}

inline LorentzTransform<Rational> retract(const LorentzTransform<Rational>& t, const CkBound& k) {
    if (!t.proper() || !t.orthochronous())
        throw NotOrthochronousProper("retract requires an orthochronous proper transform");
    bool inside = true;
    for (int i = 0; i < 4 && inside; ++i)
        for (int j = 0; j < 4 && inside; ++j)
            if (!in_ck(t(i, j), k)) inside = false;
    if (inside) return t;
    return rational_approximate(to_double(t), k).Tq;
}

namespace detail {

inline std::optional<NamedGenerator> component_representative(int det_part, Chronicity ch) {
    if (det_part == 1 && ch == Chronicity::Orthochronous) return std::nullopt;
    if (det_part == -1 && ch == Chronicity::Orthochronous) return NamedGenerator::Parity;
    if (det_part == -1) return NamedGenerator::TimeReversal;
    return NamedGenerator::SpaceTimeReversal;
}

} // namespace detail

/// Retraction on the full group: move into the orthochronous proper component with
/// the exact discrete representative, retract there, move back. Preserves
/// the connected component.
inline LorentzTransform<Rational> retract_extended(const LorentzTransform<double>& t,
                                                   const CkBound& k) {
    auto rep = detail::component_representative(t.det_part(), t.chronicity());
    if (!rep) return retract(t, k);
    LorentzTransform<double> moved =
        compose(named_generator(*rep, 1.0), t);
    LorentzTransform<Rational> core = retract(moved, k);
    return compose(named_generator(*rep, Rational(1)), core);
}

inline LorentzTransform<Rational> retract_extended(const LorentzTransform<Rational>& t,
                                                   const CkBound& k) {
    auto rep = detail::component_representative(t.det_part(), t.chronicity());
    if (!rep) return retract(t, k);
    LorentzTransform<Rational> moved = compose(named_generator(*rep, Rational(1)), t);
    LorentzTransform<Rational> core = retract(moved, k);
    return compose(named_generator(*rep, Rational(1)), core);
}

// -- exact enumeration of A = orthochronous proper matrices over C_k ----------

namespace detail {

inline std::vector<Rational> ck_elements(long k) {
    std::vector<Rational> out;
    out.emplace_back(0);
    for (long s = 1; s <= k; ++s)
        for (long t = 1; t <= k; ++t) {
            if (std::gcd(s, t) != 1) continue;
            out.emplace_back(s, t);
            out.emplace_back(-s, t);
        }
    return out;
}

} // namespace detail

/// All orthochronous proper Lorentz matrices with every entry in C_k,
/// k <= 3. Column-by-column search over Minkowski-orthonormal frames; the
/// last column spans the orthogonal complement of the first three, so the
/// search is quadratic in the candidate-vector count.
inline std::vector<LorentzTransform<Rational>> enumerate_a(const CkBound& kb) {
    if (kb.k > 3) throw BoundTooLarge("enumerate_a is guarded to k <= 3");
    const long k = static_cast<long>(kb.k.get_si());
    const long L = (k == 1) ? 1 : (k == 2 ? 2 : 6);
    const long L2 = L * L;

    // Scaled candidate entries: s/t * L is integral for t | L.
    std::vector<long> entries;
    for (const Rational& q : detail::ck_elements(k)) {
        long num = static_cast<long>(q.num().get_si());
        long den = static_cast<long>(q.den().get_si());
        entries.push_back(num * (L / den));
    }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());

    auto mink = [&](const std::array<long, 4>& u, const std::array<long, 4>& v) {
        return u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3];
    };

    std::vector<std::array<long, 4>> plus, minus;
    for (long t : entries)
        for (long x : entries)
            for (long y : entries)
                for (long z : entries) {
                    std::array<long, 4> v{t, x, y, z};
                    long mu = mink(v, v);
                    if (mu == L2 && t > 0) plus.push_back(v);
                    if (mu == -L2) minus.push_back(v);
                }

    std::vector<LorentzTransform<Rational>> out;
    for (const auto& c0 : plus) {
        for (const auto& c1 : minus) {
            if (mink(c0, c1) != 0) continue;
            for (const auto& c2 : minus) {
                if (mink(c0, c2) != 0 || mink(c1, c2) != 0) continue;
                // J times the formal cross product of (c0, c1, c2) spans the
                // orthogonal complement.
                std::array<std::array<long, 4>, 3> rows{c0, c1, c2};
                auto minor3 = [&](int skip) {
                    int cols[3], n = 0;
                    for (int c = 0; c < 4; ++c)
                        if (c != skip) cols[n++] = c;
                    const auto& r = rows;
                    return r[0][cols[0]] * (r[1][cols[1]] * r[2][cols[2]] - r[1][cols[2]] * r[2][cols[1]]) -
                           r[0][cols[1]] * (r[1][cols[0]] * r[2][cols[2]] - r[1][cols[2]] * r[2][cols[0]]) +
                           r[0][cols[2]] * (r[1][cols[0]] * r[2][cols[1]] - r[1][cols[1]] * r[2][cols[0]]);
                };
                std::array<long, 4> x{};
                for (int i = 0; i < 4; ++i) {
                    long m = minor3(i);
                    x[i] = ((i % 2) ? m : -m);  // cofactor signs of det(v; c0; c1; c2)
                }
                // apply J
                for (int i = 1; i < 4; ++i) x[i] = -x[i];
                long mu_x = mink(x, x);
                if (mu_x == 0) continue;
                // need lambda with lambda^2 mu_x = -L^2, c3 = lambda x / L rational.
                // Work over rationals: lambda^2 = -L^2 / mu_x.
                Rational lam2 = Rational(-L2, mu_x);
                if (!lam2.is_positive()) continue;
                Integer ln = lam2.num(), ld = lam2.den();
                if (mpz_perfect_square_p(ln.get_mpz_t()) == 0 ||
                    mpz_perfect_square_p(ld.get_mpz_t()) == 0)
                    continue;
                Integer sn, sd;
                mpz_sqrt(sn.get_mpz_t(), ln.get_mpz_t());
                mpz_sqrt(sd.get_mpz_t(), ld.get_mpz_t());
                Rational lam(sn, sd);
                for (int sign = 0; sign < 2; ++sign, lam = -lam) {
                    // c3 entries: lam * x_i / L
                    bool ok = true;
                    std::array<Rational, 4> c3{};
                    for (int i = 0; i < 4 && ok; ++i) {
                        c3[i] = lam * Rational(x[i], L);
                        if (!in_ck(c3[i], kb)) ok = false;
                    }
                    if (!ok) continue;
                    Mat4<Rational> m = Mat4<Rational>::filled(Rational(0));
                    for (int r = 0; r < 4; ++r) {
                        m(r, 0) = Rational(c0[r], L);
                        m(r, 1) = Rational(c1[r], L);
                        m(r, 2) = Rational(c2[r], L);
                        m(r, 3) = c3[r];
                    }
                    if (m.det() != Rational(1)) continue;
                    out.push_back(LorentzTransform<Rational>::unchecked(m));
                }
            }
        }
    }
    return out;
}

} // namespace lorentz
