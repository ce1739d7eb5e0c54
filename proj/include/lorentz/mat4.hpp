#pragma once

/**
 * @file mat4.hpp
 * @brief 4x4 matrices and 4-vectors over a scalar domain, index 0 = time.
 */

#include <array>
#include <cmath>
#include <concepts>
#include <utility>

#include "lorentz/scalar.hpp"

namespace lorentz {

template <class S>
struct Vec4 {
    S t, x, y, z;

    const S& operator[](int i) const {
        switch (i) {
            case 0: return t;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }
    S& operator[](int i) {
        switch (i) {
            case 0: return t;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }
    bool operator==(const Vec4& o) const { return t == o.t && x == o.x && y == o.y && z == o.z; }
};

namespace detail {

template <class S, std::size_t... I>
std::array<S, 16> filled_array(const S& v, std::index_sequence<I...>) {
    return {{((void)I, v)...}};
}

} // namespace detail

template <class S>
class Mat4 {
public:
    Mat4() requires std::default_initializable<S> : e_{} {}
    explicit Mat4(std::array<S, 16> e) : e_(std::move(e)) {}

    static Mat4 filled(const S& v) {
        return Mat4(detail::filled_array(v, std::make_index_sequence<16>{}));
    }
    static Mat4 identity_like(const S& like) {
        Mat4 m = filled(dom_zero(like));
        for (int i = 0; i < 4; ++i) m(i, i) = dom_one(like);
        return m;
    }
    /// J = diag(1, -1, -1, -1).
    static Mat4 metric_like(const S& like) {
        Mat4 m = identity_like(like);
        for (int i = 1; i < 4; ++i) m(i, i) = -dom_one(like);
        return m;
    }
    static Mat4 diagonal(const S& a, const S& b, const S& c, const S& d) {
        Mat4 m = filled(dom_zero(a));
        m(0, 0) = a; m(1, 1) = b; m(2, 2) = c; m(3, 3) = d;
        return m;
    }

    const S& operator()(int r, int c) const { return e_[r * 4 + c]; }
    S& operator()(int r, int c) { return e_[r * 4 + c]; }
    const std::array<S, 16>& entries() const { return e_; }

    Mat4 operator*(const Mat4& o) const {
        Mat4 r = filled(dom_zero(e_[0]));
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) {
                const S& a = (*this)(i, k);
                for (int j = 0; j < 4; ++j) r(i, j) = r(i, j) + a * o(k, j);
            }
        return r;
    }
    Vec4<S> operator*(const Vec4<S>& v) const {
        const S z = dom_zero(e_[0]);
        Vec4<S> r{z, z, z, z};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r[i] = r[i] + (*this)(i, j) * v[j];
        return r;
    }
    Mat4 operator-(const Mat4& o) const {
        Mat4 r = *this;
        for (int i = 0; i < 16; ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }
    Mat4 operator-() const {
        Mat4 r = *this;
        for (int i = 0; i < 16; ++i) r.e_[i] = -e_[i];
        return r;
    }

    Mat4 transposed() const {
        Mat4 r = *this;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    /// Cofactor expansion; ring operations only, so it is exact over exact
    /// domains.
    S det() const {
        auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
            const Mat4& m = *this;
            return m(r0, c0) * (m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1)) -
                   m(r0, c1) * (m(r1, c0) * m(r2, c2) - m(r1, c2) * m(r2, c0)) +
                   m(r0, c2) * (m(r1, c0) * m(r2, c1) - m(r1, c1) * m(r2, c0));
        };
        const Mat4& m = *this;
        return m(0, 0) * det3(1, 2, 3, 1, 2, 3) - m(0, 1) * det3(1, 2, 3, 0, 2, 3) +
               m(0, 2) * det3(1, 2, 3, 0, 1, 3) - m(0, 3) * det3(1, 2, 3, 0, 1, 2);
    }

    bool operator==(const Mat4& o) const { return e_ == o.e_; }

private:
    std::array<S, 16> e_;
};

/// t^2 - x^2 - y^2 - z^2.
template <class S>
inline S minkowski_norm(const Vec4<S>& v) {
    return v.t * v.t - v.x * v.x - v.y * v.y - v.z * v.z;
}

/// Minkowski inner product <u, v> = u J v.
template <class S>
inline S minkowski_inner(const Vec4<S>& u, const Vec4<S>& v) {
    return u.t * v.t - u.x * v.x - u.y * v.y - u.z * v.z;
}

inline double max_abs_diff(const Mat4<double>& a, const Mat4<double>& b) {
    double w = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) w = std::max(w, std::fabs(a(i, j) - b(i, j)));
    return w;
}

template <class S>
inline Vec4<S> column(const Mat4<S>& m, int c) {
    return Vec4<S>{m(0, c), m(1, c), m(2, c), m(3, c)};
}

} // namespace lorentz
