#pragma once

/**
 * @file random.hpp
 * @brief Deterministic sampling for the randomized suites. Doubles are
 *        drawn from the raw mt19937_64 stream (53-bit mantissa), not from
 *        std::uniform_real_distribution, so a seed fixes every report
 *        byte-for-byte across implementations.
 */

#include <cmath>
#include <cstdint>
#include <random>

#include "lorentz/approx.hpp"
#include "lorentz/rational.hpp"
#include "lorentz/transform.hpp"

namespace lorentz {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
    long uniform_long(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Uniform random space rotation via a Marsaglia quaternion.
    LorentzTransform<double> rotation() {
        const double u1 = uniform01(), u2 = uniform01(), u3 = uniform01();
        const double two_pi = 2.0 * M_PI;
        const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
        const double qx = a * std::sin(two_pi * u2), qy = a * std::cos(two_pi * u2);
        const double qz = b * std::sin(two_pi * u3), qw = b * std::cos(two_pi * u3);
        Mat4<double> m = Mat4<double>::identity_like(1.0);
        m(1, 1) = 1 - 2 * (qy * qy + qz * qz);
        m(1, 2) = 2 * (qx * qy - qz * qw);
        m(1, 3) = 2 * (qx * qz + qy * qw);
        m(2, 1) = 2 * (qx * qy + qz * qw);
        m(2, 2) = 1 - 2 * (qx * qx + qz * qz);
        m(2, 3) = 2 * (qy * qz - qx * qw);
        m(3, 1) = 2 * (qx * qz - qy * qw);
        m(3, 2) = 2 * (qy * qz + qx * qw);
        m(3, 3) = 1 - 2 * (qx * qx + qy * qy);
        return LorentzTransform<double>::unchecked(m);
    }

    /// R1 B_alpha R2 with random rotations: an orthochronous proper
    /// transform of Frobenius norm alpha + 1/alpha.
    LorentzTransform<double> orthochronous_proper(double alpha_min, double alpha_max) {
        const double alpha = uniform(alpha_min, alpha_max);
        return compose(compose(rotation(), basic_boost(alpha)), rotation());
    }

    /// Nonzero rational with |num| <= max_num, 1 <= den <= max_den.
    Rational rational(long max_num, long max_den, bool allow_zero = true) {
        while (true) {
            long n = uniform_long(-max_num, max_num);
            long d = uniform_long(1, max_den);
            if (!allow_zero && n == 0) continue;
            return Rational(n, d);
        }
    }

private:
    std::mt19937_64 eng_;
};

} // namespace lorentz
