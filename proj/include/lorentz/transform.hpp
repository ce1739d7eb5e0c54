#pragma once

/**
 * @file transform.hpp
 * @brief Lorentz transformations over any admitted scalar domain.
 *
 * A LorentzTransform wraps a matrix m with m J m^T = J (exactly over exact
 * domains, entrywise within a tolerance over doubles, J = diag(1,-1,-1,-1))
 * together with its classification: determinant part +-1 and chronicity.
 * A transformation is orthochronous when m(0,0), the time component of the
 * image of (1,0,0,0), is a nonzero square of the domain. Over finite fields
 * that component can also be zero, which gets its own class NullTime; this
 * never happens over the reals or rationals, where |m(0,0)| >= 1.
 *
 * For every member L the inverse is J L^T J, which keeps coefficients in
 * whatever subring they came from.
 */

#include <string>

#include "lorentz/errors.hpp"
#include "lorentz/mat4.hpp"
#include "lorentz/scalar.hpp"

namespace lorentz {

enum class Chronicity { Orthochronous, Antichronous, NullTime };

inline const char* to_string(Chronicity c) {
    switch (c) {
        case Chronicity::Orthochronous: return "orthochronous";
        case Chronicity::Antichronous: return "antichronous";
        default: return "null-time";
    }
}

template <class S>
class LorentzTransform {
public:
    const Mat4<S>& matrix() const { return m_; }
    int det_part() const { return det_part_; }
    Chronicity chronicity() const { return chron_; }
    bool orthochronous() const { return chron_ == Chronicity::Orthochronous; }
    bool proper() const { return det_part_ == 1; }

    const S& operator()(int r, int c) const { return m_(r, c); }

    bool operator==(const LorentzTransform& o) const { return m_ == o.m_; }

    /// Classifies without re-checking the Lorentz predicate; for use where
    /// the predicate holds by construction (products, inverses, closures).
    static LorentzTransform unchecked(Mat4<S> m) {
        LorentzTransform t(std::move(m));
        t.classify();
        return t;
    }

private:
    explicit LorentzTransform(Mat4<S> m) : m_(std::move(m)) {}
    void classify() {
        const S& m00 = m_(0, 0);
        if (dom_is_zero(m00, 1e-9))
            chron_ = Chronicity::NullTime;
        else
            chron_ = dom_nonzero_square(m00) ? Chronicity::Orthochronous : Chronicity::Antichronous;
        if constexpr (is_exact_domain<S>::value) {
            S d = m_.det();
            det_part_ = (d == dom_one(m00)) ? 1 : -1;
        } else {
            det_part_ = m_.det() > 0 ? 1 : -1;
        }
    }

    template <class T>
    friend LorentzTransform<T> validate(const Mat4<T>&, double);

    Mat4<S> m_;
    int det_part_ = 1;
    Chronicity chron_ = Chronicity::Orthochronous;
};

/// Checks m J m^T = J and det = +-1, then classifies. The tolerance applies
/// to the real domain only; exact domains compare exactly.
template <class S>
LorentzTransform<S> validate(const Mat4<S>& m, double tol = 1e-9) {
    require_admissible(m(0, 0));
    Mat4<S> lhs = m * Mat4<S>::metric_like(m(0, 0)) * m.transposed();
    Mat4<S> J = Mat4<S>::metric_like(m(0, 0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!dom_eq(lhs(i, j), J(i, j), tol))
                throw NotLorentz("matrix does not satisfy L J L^T = J");
    if constexpr (is_exact_domain<S>::value) {
        S d = m.det();
        if (d != dom_one(m(0, 0)) && d != -dom_one(m(0, 0)))
            throw NotLorentz("determinant is not +-1");
    } else {
        double d = m.det();
        if (std::fabs(std::fabs(d) - 1.0) > 100 * tol)
            throw NotLorentz("determinant is not +-1");
    }
    LorentzTransform<S> t(m);
    t.classify();
    return t;
}

template <class S>
LorentzTransform<S> compose(const LorentzTransform<S>& a, const LorentzTransform<S>& b) {
    if (!dom_compatible(a(0, 0), b(0, 0)))
        throw DomainMismatch("composing transforms over different domains");
    return LorentzTransform<S>::unchecked(a.matrix() * b.matrix());
}

template <class S>
LorentzTransform<S> inverse(const LorentzTransform<S>& a) {
    const Mat4<S> J = Mat4<S>::metric_like(a(0, 0));
    return LorentzTransform<S>::unchecked(J * a.matrix().transposed() * J);
}

// -- generators --------------------------------------------------------------

namespace detail {

template <class S>
S half_of(const S& v) {
    S two = dom_one(v) + dom_one(v);
    try {
        return v * dom_inv(two);
    } catch (const ZeroInput&) {
        throw NoHalving("2 is not invertible in this domain");
    }
}

template <class S>
Mat4<S> boost_matrix(const S& alpha) {
    const S inv = dom_inv(alpha);
    const S c = half_of(alpha + inv);
    const S s = half_of(alpha - inv);
    Mat4<S> m = Mat4<S>::identity_like(alpha);
    m(0, 0) = c; m(0, 1) = s;
    m(1, 0) = s; m(1, 1) = c;
    return m;
}

} // namespace detail

/// Basic boost B_alpha in the tx plane; alpha must be a nonzero square.
template <class S>
LorentzTransform<S> basic_boost(const S& alpha) {
    if (dom_is_zero(alpha, 0.0)) throw ZeroAlpha("boost parameter is zero");
    if (!dom_nonzero_square(alpha))
        throw NonSquareAlpha("boost parameter is not a nonzero square");
    return LorentzTransform<S>::unchecked(detail::boost_matrix(alpha));
}

/// Boost with any nonzero parameter; over finite fields a non-square alpha
/// still yields a Lorentz matrix, just outside the boost family proper.
template <class S>
LorentzTransform<S> basic_boost_any(const S& alpha) {
    if (dom_is_zero(alpha, 0.0)) throw ZeroAlpha("boost parameter is zero");
    return LorentzTransform<S>::unchecked(detail::boost_matrix(alpha));
}

/// Basic rotation R_alpha in the yz plane.
template <class S>
LorentzTransform<S> basic_rotation(const S& alpha) {
    if (dom_is_zero(alpha, 0.0)) throw ZeroAlpha("rotation parameter is zero");
    const S inv = dom_inv(alpha);
    const S den = alpha + inv;
    if (dom_is_zero(den, 0.0))
        throw DomainNotAdmissible("alpha + alpha^-1 = 0: -1 is a square here");
    const S dinv = dom_inv(den);
    const S c = (alpha - inv) * dinv;
    const S s = (dom_one(alpha) + dom_one(alpha)) * dinv;
    Mat4<S> m = Mat4<S>::identity_like(alpha);
    m(2, 2) = c; m(2, 3) = s;
    m(3, 2) = -s; m(3, 3) = c;
    return LorentzTransform<S>::unchecked(m);
}

enum class NamedGenerator {
    HalfTurnX,          // diag(1, 1, -1, -1)
    HalfTurnY,          // diag(1, -1, 1, -1)
    HalfTurnZ,          // diag(1, -1, -1, 1)
    AxisRot3,           // x -> y -> z -> x
    AxisRot3Sq,         // x -> z -> y -> x
    SpaceTimeReversal,  // -I
    YZReflection,       // diag(-1, -1, 1, 1)
    TimeReversal,       // diag(-1, 1, 1, 1)
    Parity              // diag(1, -1, -1, -1)
};

template <class S>
LorentzTransform<S> named_generator(NamedGenerator which, const S& like) {
    const S o = dom_one(like);
    const S n = -o;
    const S z = dom_zero(like);
    Mat4<S> m = Mat4<S>::filled(z);
    switch (which) {
        case NamedGenerator::HalfTurnX: m = Mat4<S>::diagonal(o, o, n, n); break;
        case NamedGenerator::HalfTurnY: m = Mat4<S>::diagonal(o, n, o, n); break;
        case NamedGenerator::HalfTurnZ: m = Mat4<S>::diagonal(o, n, n, o); break;
        case NamedGenerator::AxisRot3:
            m = Mat4<S>::filled(z);
            m(0, 0) = o;
            m(2, 1) = o;  // e_x -> e_y
            m(3, 2) = o;  // e_y -> e_z
            m(1, 3) = o;  // e_z -> e_x
            break;
        case NamedGenerator::AxisRot3Sq:
            m = Mat4<S>::filled(z);
            m(0, 0) = o;
            m(3, 1) = o;  // e_x -> e_z
            m(1, 2) = o;  // e_y -> e_x
            m(2, 3) = o;  // e_z -> e_y
            break;
        case NamedGenerator::SpaceTimeReversal: m = Mat4<S>::diagonal(n, n, n, n); break;
        case NamedGenerator::YZReflection: m = Mat4<S>::diagonal(n, n, o, o); break;
        case NamedGenerator::TimeReversal: m = Mat4<S>::diagonal(n, o, o, o); break;
        case NamedGenerator::Parity: m = Mat4<S>::diagonal(o, n, n, n); break;
    }
    return LorentzTransform<S>::unchecked(m);
}

/// True iff T fixes (1,0,0,0) and is proper, i.e. is a space rotation.
template <class S>
bool is_space_rotation(const LorentzTransform<S>& t, double tol = 1e-9) {
    if (!t.proper()) return false;
    const S o = dom_one(t(0, 0));
    const S z = dom_zero(t(0, 0));
    return dom_eq(t(0, 0), o, tol) && dom_eq(t(1, 0), z, tol) && dom_eq(t(2, 0), z, tol) &&
           dom_eq(t(3, 0), z, tol);
}

/// R B_alpha R^-1 for a space rotation R: the boost along R(e_x).
template <class S>
LorentzTransform<S> conjugate_boost(const LorentzTransform<S>& r, const S& alpha) {
    if (!is_space_rotation(r)) throw NotRotation("conjugating element must fix (1,0,0,0)");
    LorentzTransform<S> b = basic_boost(alpha);
    return compose(compose(r, b), inverse(r));
}

/// Reflection in the line spanned by a, mu(a) = +-1: x -> 2 mu(a) <x,a> a - x,
/// as the matrix 2 mu(a) a (Ja)^T - I. An involution with determinant -1.
template <class S>
LorentzTransform<S> line_reflection(const Vec4<S>& a) {
    const S mu = minkowski_norm(a);
    const S o = dom_one(a.t);
    if (!dom_eq(mu, o, 1e-9) && !dom_eq(mu, -o, 1e-9))
        throw NotUnitNorm("axis must have Minkowski norm +-1");
    const S two_mu = mu + mu;
    Vec4<S> ja{a.t, -a.x, -a.y, -a.z};
    Mat4<S> m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            S v = two_mu * a[i] * ja[j];
            if (i == j) v = v - o;
            m(i, j) = v;
        }
    return validate(m);
}

inline double frobenius_norm(const Mat4<double>& m) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

inline double frobenius_norm(const LorentzTransform<double>& t) { return frobenius_norm(t.matrix()); }

/// v_alpha = (alpha - alpha^-1) / (alpha + alpha^-1).
template <class S>
S boost_velocity(const S& alpha) {
    if (dom_is_zero(alpha, 0.0)) throw ZeroAlpha("boost parameter is zero");
    const S inv = dom_inv(alpha);
    return (alpha - inv) * dom_inv(alpha + inv);
}

// -- conversions ---------------------------------------------------------------

inline Mat4<double> to_double(const Mat4<Rational>& m) {
    Mat4<double> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = m(i, j).to_double();
    return r;
}

inline LorentzTransform<double> to_double(const LorentzTransform<Rational>& t) {
    return LorentzTransform<double>::unchecked(to_double(t.matrix()));
}

} // namespace lorentz
