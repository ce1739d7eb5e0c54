#pragma once

/**
 * @file finite.hpp
 * @brief The finite side: projection to L+ F_p, local-isomorphism
 *        certificates, group enumeration, and the boost-group phenomenology.
 */

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lorentz/approx.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/prime_field.hpp"
#include "lorentz/transform.hpp"

namespace lorentz {

/// Entrywise canonical map of a rational Lorentz transformation into F_p.
/// Defined when no denominator is divisible by p; the image satisfies the
/// F_p Lorentz predicate, which validate() re-asserts.
inline LorentzTransform<FpElem> project(const LorentzTransform<Rational>& t, const FieldPtr& f) {
    Mat4<FpElem> m = Mat4<FpElem>::filled(FpElem(0, f));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = canonical_map(t(i, j), f);
    return validate(m);
}

namespace detail {

inline std::string rational_key(const Mat4<Rational>& m) {
    std::string s;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            s += m(i, j).str();
            s += ',';
        }
    return s;
}

inline std::string fp_key(const Mat4<FpElem>& m) {
    std::string s;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            s += m(i, j).str();
            s += ',';
        }
    return s;
}

// Row-major numeric comparison; the canonical order shared by bfs_closure
// (whose packed keys sort the same way) and enumerate_group.
inline bool fp_matrix_less(const Mat4<FpElem>& a, const Mat4<FpElem>& b) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int c = cmp(a(i, j).value(), b(i, j).value());
            if (c != 0) return c < 0;
        }
    return false;
}

} // namespace detail

/// Machine-checkable evidence that A maps injectively and homomorphically
/// into L+ F_p. Valid iff injective and homomorphic; the orthochronicity
/// and magnitude-bound findings are reported separately.
struct LocalIsoCertificate {
    Integer k;                // measured coefficient bound of A
    Integer effective_bound;  // measured coefficient bound of A u AA
    Integer p;
    std::size_t size_A = 0;
    std::size_t size_AA = 0;
    bool injective = false;
    bool homomorphic = false;
    bool orthochronicity_preserved = false;
    bool bound_check = false;  // 32 k^16 < p
    bool valid() const { return injective && homomorphic; }
};

/// Projects A and all pairwise products, checks injectivity on A u AA,
/// sigma(xy) = sigma(x) sigma(y) for all pairs, and that images of
/// orthochronous members and of products of two orthochronous members stay
/// orthochronous.
inline LocalIsoCertificate local_iso_check(const std::vector<LorentzTransform<Rational>>& a_in,
                                           const FieldPtr& f) {
    // Dedup the input set.
    std::vector<const LorentzTransform<Rational>*> a;
    {
        std::unordered_set<std::string> seen;
        for (const auto& t : a_in)
            if (seen.insert(detail::rational_key(t.matrix())).second) a.push_back(&t);
    }

    LocalIsoCertificate cert;
    cert.p = f->modulus();
    cert.size_A = a.size();

    cert.k = 1;
    for (const auto* t : a) cert.k = std::max(cert.k, coefficient_bound(*t));
    {
        Integer b;
        mpz_pow_ui(b.get_mpz_t(), cert.k.get_mpz_t(), 16);
        cert.bound_check = 32 * b < f->modulus();
    }

    std::vector<LorentzTransform<FpElem>> sigma;
    sigma.reserve(a.size());
    for (const auto* t : a) sigma.push_back(project(*t, f));

    // A u AA with exact products, deduplicated.
    std::unordered_map<std::string, std::size_t> union_idx;
    std::vector<LorentzTransform<Rational>> union_elems;
    std::vector<bool> ortho_pair_image;  // of union elements: must be orthochronous
    auto add = [&](LorentzTransform<Rational> t, bool must_stay_ortho) -> std::size_t {
        std::string key = detail::rational_key(t.matrix());
        auto it = union_idx.find(key);
        if (it != union_idx.end()) {
            if (must_stay_ortho) ortho_pair_image[it->second] = true;
            return it->second;
        }
        std::size_t idx = union_elems.size();
        union_idx.emplace(std::move(key), idx);
        union_elems.push_back(std::move(t));
        ortho_pair_image.push_back(must_stay_ortho);
        return idx;
    };
    for (const auto* t : a) add(*t, t->orthochronous());

    std::vector<std::size_t> prod_idx(a.size() * a.size());
    std::unordered_set<std::string> aa_keys;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            LorentzTransform<Rational> xy = compose(*a[i], *a[j]);
            aa_keys.insert(detail::rational_key(xy.matrix()));
            bool both_ortho = a[i]->orthochronous() && a[j]->orthochronous();
            prod_idx[i * a.size() + j] = add(std::move(xy), both_ortho);
        }
    cert.size_AA = aa_keys.size();

    cert.effective_bound = cert.k;
    for (const auto& t : union_elems)
        cert.effective_bound = std::max(cert.effective_bound, coefficient_bound(t));

    // Injectivity of the projection on A u AA.
    std::vector<LorentzTransform<FpElem>> images;
    images.reserve(union_elems.size());
    cert.injective = true;
    {
        std::unordered_set<std::string> image_keys;
        for (const auto& t : union_elems) {
            LorentzTransform<FpElem> img = project(t, f);
            if (!image_keys.insert(detail::fp_key(img.matrix())).second) cert.injective = false;
            images.push_back(std::move(img));
        }
    }

    // sigma(x y) = sigma(x) sigma(y); the canonical map is a ring
    // homomorphism, so this is an assertion, not a discovery.
    cert.homomorphic = true;
    for (std::size_t i = 0; i < a.size() && cert.homomorphic; ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            const auto& img = images[prod_idx[i * a.size() + j]];
            if (!(compose(sigma[i], sigma[j]).matrix() == img.matrix())) {
                cert.homomorphic = false;
                break;
            }
        }

    cert.orthochronicity_preserved = true;
    for (std::size_t i = 0; i < union_elems.size(); ++i)
        if (ortho_pair_image[i] && !images[i].orthochronous())
            cert.orthochronicity_preserved = false;

    return cert;
}

// -- closure and enumeration ---------------------------------------------------

namespace detail {

// Packed representation for fast closure arithmetic; requires p < 2^31 so
// products of residues fit __int128 accumulation.
struct PackedGroup {
    std::uint32_t p;
    using M = std::array<std::uint32_t, 16>;

    M pack(const Mat4<FpElem>& m) const {
        M r;
        for (int i = 0; i < 16; ++i)
            r[static_cast<size_t>(i)] =
                static_cast<std::uint32_t>(m(i / 4, i % 4).value().get_ui());
        return r;
    }
    Mat4<FpElem> unpack(const M& m, const FieldPtr& f) const {
        Mat4<FpElem> r = Mat4<FpElem>::filled(FpElem(0, f));
        for (int i = 0; i < 16; ++i) r(i / 4, i % 4) = FpElem(static_cast<long>(m[static_cast<size_t>(i)]), f);
        return r;
    }
    M mul(const M& a, const M& b) const {
        M r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                unsigned __int128 acc = 0;
                for (int k = 0; k < 4; ++k)
                    acc += static_cast<unsigned __int128>(a[static_cast<size_t>(i * 4 + k)]) *
                           b[static_cast<size_t>(k * 4 + j)];
                r[static_cast<size_t>(i * 4 + j)] = static_cast<std::uint32_t>(acc % p);
            }
        return r;
    }
    static std::string key(const M& m) {
        return std::string(reinterpret_cast<const char*>(m.data()), sizeof(M));
    }
};

} // namespace detail

/// Breadth-first closure of the generators under composition. Deterministic:
/// the result is sorted by canonical serialization. Throws when the closure
/// exceeds `max_elements`.
inline std::vector<LorentzTransform<FpElem>> bfs_closure(
    const std::vector<LorentzTransform<FpElem>>& gens, const FieldPtr& f,
    std::size_t max_elements = 10000000) {
    if (gens.empty()) throw BoundTooLarge("closure of an empty generating set");
    if (mpz_sizeinbase(f->modulus().get_mpz_t(), 2) > 31)
        throw BoundTooLarge("closure arithmetic is limited to p < 2^31");

    detail::PackedGroup g{static_cast<std::uint32_t>(f->modulus().get_ui())};
    std::vector<detail::PackedGroup::M> gpacked;
    gpacked.reserve(gens.size());
    for (const auto& t : gens) gpacked.push_back(g.pack(t.matrix()));

    std::unordered_set<std::string> seen;
    std::deque<detail::PackedGroup::M> frontier;
    std::vector<detail::PackedGroup::M> all;
    auto insert = [&](const detail::PackedGroup::M& m) {
        if (!seen.insert(detail::PackedGroup::key(m)).second) return;
        if (all.size() + 1 > max_elements)
            throw MemoryBudgetExceeded("closure exceeded " + std::to_string(max_elements) +
                                       " elements");
        frontier.push_back(m);
        all.push_back(m);
    };
    for (const auto& m : gpacked) insert(m);
    while (!frontier.empty()) {
        detail::PackedGroup::M cur = frontier.front();
        frontier.pop_front();
        for (const auto& gen : gpacked) insert(g.mul(cur, gen));
    }

    std::sort(all.begin(), all.end());
    std::vector<LorentzTransform<FpElem>> out;
    out.reserve(all.size());
    for (const auto& m : all) out.push_back(LorentzTransform<FpElem>::unchecked(g.unpack(m, f)));
    return out;
}

/// All determinant-1 solutions of the Lorentz predicate over F_p, built
/// column by column over Minkowski-orthonormal frames. Independent of
/// bfs_closure, which it cross-checks. Guarded to p <= 11.
inline std::vector<LorentzTransform<FpElem>> enumerate_group(const FieldPtr& f) {
    if (f->modulus() > 11) throw BoundTooLarge("enumerate_group is guarded to p <= 11");
    const long p = static_cast<long>(f->modulus().get_si());

    auto modp = [&](long v) { return ((v % p) + p) % p; };
    auto mink = [&](const std::array<long, 4>& u, const std::array<long, 4>& v) {
        return modp(u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3]);
    };

    std::vector<std::array<long, 4>> plus, minus;
    for (long t = 0; t < p; ++t)
        for (long x = 0; x < p; ++x)
            for (long y = 0; y < p; ++y)
                for (long z = 0; z < p; ++z) {
                    std::array<long, 4> v{t, x, y, z};
                    long mu = mink(v, v);
                    if (mu == 1) plus.push_back(v);
                    if (mu == p - 1) minus.push_back(v);
                }

    // residue table for the square root of -1/mu(x)
    std::vector<long> sqrt_table(static_cast<size_t>(p), -1);
    for (long x = 1; x < p; ++x) {
        long sq = modp(x * x);
        if (sqrt_table[static_cast<size_t>(sq)] < 0 || x < sqrt_table[static_cast<size_t>(sq)])
            sqrt_table[static_cast<size_t>(sq)] = x;
    }

    std::vector<LorentzTransform<FpElem>> out;
    auto inv_mod = [&](long v) {
        long r = 1, b = modp(v), e = p - 2;
        while (e) {
            if (e & 1) r = modp(r * b);
            b = modp(b * b);
            e >>= 1;
        }
        return r;
    };

    for (const auto& c0 : plus) {
        for (const auto& c1 : minus) {
            if (mink(c0, c1) != 0) continue;
            for (const auto& c2 : minus) {
                if (mink(c0, c2) != 0 || mink(c1, c2) != 0) continue;
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
                    long m = modp(minor3(i));
                    x[i] = (i % 2) ? m : modp(-m);
                }
                for (int i = 1; i < 4; ++i) x[i] = modp(-x[i]);
                long mu_x = mink(x, x);
                if (mu_x == 0) continue;
                // lambda^2 = -1 / mu_x
                long lam2 = modp(-inv_mod(mu_x));
                long lam = sqrt_table[static_cast<size_t>(lam2)];
                if (lam < 0) continue;
                for (int sign = 0; sign < 2; ++sign, lam = modp(-lam)) {
                    std::array<long, 4> c3{};
                    for (int i = 0; i < 4; ++i) c3[i] = modp(lam * x[i]);
                    // determinant must be 1
                    std::array<std::array<long, 4>, 4> mcols{c0, c1, c2, c3};
                    auto det4 = [&]() {
                        auto det3 = [&](int r0, int r1, int r2, int sk0, int sk1, int sk2) {
                            return mcols[static_cast<size_t>(sk0)][r0] *
                                       (mcols[static_cast<size_t>(sk1)][r1] * mcols[static_cast<size_t>(sk2)][r2] -
                                        mcols[static_cast<size_t>(sk1)][r2] * mcols[static_cast<size_t>(sk2)][r1]) -
                                   mcols[static_cast<size_t>(sk1)][r0] *
                                       (mcols[static_cast<size_t>(sk0)][r1] * mcols[static_cast<size_t>(sk2)][r2] -
                                        mcols[static_cast<size_t>(sk0)][r2] * mcols[static_cast<size_t>(sk2)][r1]) +
                                   mcols[static_cast<size_t>(sk2)][r0] *
                                       (mcols[static_cast<size_t>(sk0)][r1] * mcols[static_cast<size_t>(sk1)][r2] -
                                        mcols[static_cast<size_t>(sk0)][r2] * mcols[static_cast<size_t>(sk1)][r1]);
                        };
                        long d = 0;
                        d += mcols[0][0] * det3(1, 2, 3, 1, 2, 3);
                        d -= mcols[1][0] * det3(1, 2, 3, 0, 2, 3);
                        d += mcols[2][0] * det3(1, 2, 3, 0, 1, 3);
                        d -= mcols[3][0] * det3(1, 2, 3, 0, 1, 2);
                        return modp(d);
                    };
                    if (det4() != 1) continue;
                    Mat4<FpElem> m = Mat4<FpElem>::filled(FpElem(0, f));
                    for (int r = 0; r < 4; ++r) {
                        m(r, 0) = FpElem(c0[r], f);
                        m(r, 1) = FpElem(c1[r], f);
                        m(r, 2) = FpElem(c2[r], f);
                        m(r, 3) = FpElem(c3[r], f);
                    }
                    out.push_back(LorentzTransform<FpElem>::unchecked(m));
                }
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return detail::fp_matrix_less(a.matrix(), b.matrix());
    });
    return out;
}

/// The standard generating set of L+ F_p: basic boosts over the nonzero
/// squares, the three elementary rotation groups, and space-time reversal.
inline std::vector<LorentzTransform<FpElem>> standard_generators(const FieldPtr& f) {
    const long p = static_cast<long>(f->modulus().get_si());
    const FpElem one(1, f);
    std::vector<LorentzTransform<FpElem>> gens;
    std::unordered_set<std::string> seen;
    auto add = [&](const LorentzTransform<FpElem>& t) {
        if (seen.insert(detail::fp_key(t.matrix())).second) gens.push_back(t);
    };

    for (long x = 1; x <= (p - 1) / 2; ++x) {
        FpElem alpha = FpElem(x, f) * FpElem(x, f);
        add(basic_boost(alpha));
    }
    LorentzTransform<FpElem> c = named_generator(NamedGenerator::AxisRot3, one);
    for (long a = 1; a < p; ++a) {
        LorentzTransform<FpElem> rx = basic_rotation(FpElem(a, f));
        add(rx);
        add(compose(compose(c, rx), inverse(c)));
        add(compose(compose(inverse(c), rx), c));
    }
    add(named_generator(NamedGenerator::HalfTurnX, one));
    add(named_generator(NamedGenerator::HalfTurnY, one));
    add(named_generator(NamedGenerator::HalfTurnZ, one));
    add(named_generator<FpElem>(NamedGenerator::SpaceTimeReversal, one));
    return gens;
}

// -- boost groups and velocities ------------------------------------------------

struct BoostGroupInfo {
    FpElem generator;  // square of the least primitive root
    Integer order;     // (p - 1) / 2
};

/// The cyclic boost group {B_alpha : alpha a nonzero square}: generated by
/// B_g for g the square of the least primitive root, of order (p-1)/2.
/// Factors p - 1 by trial division; intended for desk-scale p.
inline BoostGroupInfo boost_group(const FieldPtr& f) {
    const Integer& p = f->modulus();
    Integer n = p - 1;
    std::vector<Integer> prime_factors;
    {
        Integer m = n;
        for (Integer d = 2; d * d <= m; ++d)
            if (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
                prime_factors.push_back(d);
                while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) m /= d;
            }
        if (m > 1) prime_factors.push_back(m);
    }
    for (Integer r = 2; r < p; ++r) {
        bool primitive = true;
        for (const Integer& q : prime_factors)
            if (pow_mod(r, n / q, p) == 1) {
                primitive = false;
                break;
            }
        if (primitive) return {FpElem(r * r, f), n / 2};
    }
    throw Error("no primitive root found");  // unreachable for prime p
}

/// Least pair of nonzero squares (alpha, gamma) with B_alpha, B_gamma
/// orthochronous and B_{alpha gamma} not; Absent when no such pair exists.
/// Exhausts all ((p-1)/2)^2 pairs in lexicographic order, so it is guarded
/// to p < 2^24.
inline std::optional<std::pair<FpElem, FpElem>> find_antichronous_pair(const FieldPtr& f) {
    if (!f->minkowski_admissible())
        throw DomainNotAdmissible("antichronous-pair search expects p = 7 (mod 8)");
    if (f->modulus() >= (1L << 24))
        throw BoundTooLarge("exhaustive pair search is guarded to p < 2^24");
    const long p = static_cast<long>(f->modulus().get_si());

    // x^2 for 1 <= x <= (p-1)/2 hits every nonzero square exactly once
    std::vector<long> squares;
    squares.reserve(static_cast<size_t>((p - 1) / 2));
    for (long x = 1; x <= (p - 1) / 2; ++x)
        squares.push_back(static_cast<long>((static_cast<unsigned long long>(x) * x) % p));
    std::sort(squares.begin(), squares.end());

    auto ortho = [&](long alpha) {
        FpElem a(alpha, f);
        FpElem t = detail::half_of(a + a.inverse());
        return !t.is_zero() && is_quadratic_residue(t);
    };
    std::vector<bool> is_ortho(squares.size());
    for (std::size_t i = 0; i < squares.size(); ++i) is_ortho[i] = ortho(squares[i]);

    for (std::size_t i = 0; i < squares.size(); ++i) {
        if (!is_ortho[i]) continue;
        for (std::size_t j = 0; j < squares.size(); ++j) {
            if (!is_ortho[j]) continue;
            long prod = static_cast<long>(
                (static_cast<unsigned long long>(squares[i]) * squares[j]) % p);
            if (!ortho(prod))
                return std::make_pair(FpElem(squares[i], f), FpElem(squares[j], f));
        }
    }
    return std::nullopt;
}

/// Relativistic velocity addition, any scalar domain.
template <class S>
S velocity_addition(const S& v1, const S& v2) {
    const S den = dom_one(v1) + v1 * v2;
    if (dom_is_zero(den, 0.0)) throw DegenerateDenominator("1 + v1 v2 = 0");
    return (v1 + v2) * dom_inv(den);
}

struct VelocityBoundReport {
    FpElem alpha;
    FpElem v;                       // boost velocity of B_alpha
    bool alpha_square = false;      // echo of the precondition
    bool sq_plus_one_zero = false;  // alpha^2 + 1 = 0; impossible for p = 3 mod 4
    bool sq_plus_one_square = false;
    bool lower_ok = false;  // -1 <_p v
    bool upper_ok = false;  //  v <_p 1
    bool bounded() const { return lower_ok && upper_ok; }
};

/// Reports whether alpha^2 + 1 is a nonzero square and whether
/// -1 <_p v_alpha <_p 1; for p = 7 (mod 8) the first implies the second,
/// which is asserted.
inline VelocityBoundReport velocity_bounds_check(const FpElem& alpha) {
    const FieldPtr& f = alpha.field();
    VelocityBoundReport rep{alpha, boost_velocity(alpha)};
    rep.alpha_square = !alpha.is_zero() && is_quadratic_residue(alpha);
    FpElem sq1 = alpha * alpha + FpElem(1, f);
    rep.sq_plus_one_zero = sq1.is_zero();
    rep.sq_plus_one_square = !sq1.is_zero() && is_quadratic_residue(sq1);
    FpElem mone(-1, f), one(1, f);
    rep.lower_ok = lt_p(mone, rep.v);
    rep.upper_ok = lt_p(rep.v, one);
    if (f->minkowski_admissible() && rep.sq_plus_one_square && !rep.bounded())
        throw Error("velocity-bound implication violated for alpha = " + alpha.str());
    return rep;
}

} // namespace lorentz
