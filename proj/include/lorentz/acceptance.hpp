#pragma once

/**
 * @file acceptance.hpp
 * @brief End-to-end acceptance suite: one pass/fail line per criterion.
 *
 * Exact small-scale reproductions plus property suites; every threshold is
 * pinned here. The suite is deterministic for a fixed seed.
 */

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lorentz/approx.hpp"
#include "lorentz/chain.hpp"
#include "lorentz/finite.hpp"
#include "lorentz/random.hpp"

namespace lorentz {

namespace acceptance_detail {

class Runner {
public:
    explicit Runner(std::ostream& os) : os_(os) {}

    void run(int number, const std::string& title, const std::function<bool(std::string&)>& body) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << title;
        if (!detail.empty()) line << " -- " << detail;
        line << " (" << secs << " s)";
        os_ << line.str() << "\n";
        if (!ok) all_ok_ = false;
    }

    bool all_ok() const { return all_ok_; }

private:
    std::ostream& os_;
    bool all_ok_ = true;
};

// Random exact Lorentz matrix over Q: a word in boosts and rotations with
// random rational parameters. Source of random unit-norm axes.
inline LorentzTransform<Rational> random_exact_word(Rng& rng, int length) {
    auto acc = LorentzTransform<Rational>::unchecked(Mat4<Rational>::identity_like(Rational(1)));
    for (int i = 0; i < length; ++i) {
        switch (rng.next_u64() % 3) {
            case 0: {
                Rational a = rng.rational(4, 4, false).abs();
                if (a.is_zero()) a = Rational(2);
                acc = compose(acc, basic_boost_any(a));
                break;
            }
            case 1: {
                Rational a = rng.rational(4, 4, false);
                acc = compose(acc, basic_rotation(a));
                break;
            }
            default:
                acc = compose(acc, named_generator(NamedGenerator::AxisRot3, Rational(1)));
        }
    }
    return acc;
}

} // namespace acceptance_detail

/// Pinned constant for criterion 5: minimal tested k with max error < 1e-2
/// over the seed-0 sample of 1000 transforms (measured 1.5e-3 at k = 2048).
inline constexpr long kCriterion5K = 2048;

/// Pinned golden for criterion 2: the least prime = 7 (mod 8) above
/// 2^21 = 2097152, found and verified on the first run.
inline const char* kTheorem1K2Prime = "2097223";

inline bool run_acceptance(std::ostream& os, std::uint64_t seed = 0) {
    using acceptance_detail::Runner;
    Runner r(os);

    r.run(1, "chain primes k=2..6 are 7, 23, 23, 71, 71", [&](std::string& detail) {
        const long expected[] = {7, 23, 23, 71, 71};
        for (long k = 2; k <= 6; ++k) {
            ChainPrimeRequest req;
            req.k = k;
            auto f = find_chain_prime(req);
            if (f->modulus() != expected[k - 2]) {
                detail = "k=" + std::to_string(k) + " gave " + f->modulus().get_str();
                return false;
            }
            if (!verify_chain(*f, k)) {
                detail = "post-hoc Euler verification failed at k=" + std::to_string(k);
                return false;
            }
        }
        return true;
    });

    r.run(2, "theorem-1 primes: k=1 -> 47, k=2 -> 2097223", [&](std::string& detail) {
        auto f1 = find_theorem1_prime(1, 1);
        if (f1->modulus() != 47) {
            detail = "k=1 gave " + f1->modulus().get_str();
            return false;
        }
        auto f2 = find_theorem1_prime(2, 2);
        if (f2->modulus() != Integer(kTheorem1K2Prime)) {
            detail = "k=2 gave " + f2->modulus().get_str();
            return false;
        }
        bool transcript = is_prime(f2->modulus()) && f2->minkowski_admissible() &&
                          f2->modulus() > theorem1_bound(2) && verify_chain(*f2, 2);
        if (!transcript) {
            detail = "verification transcript failed";
            return false;
        }
        detail = "k=2 prime " + f2->modulus().get_str() + " verified";
        return true;
    });

    r.run(3, "Dickson generation over F_7: closure equals enumeration, order 117600",
          [&](std::string& detail) {
              auto f = PrimeField::make(7);
              auto closure = bfs_closure(standard_generators(f), f);
              auto enumerated = enumerate_group(f);
              Integer formula = Integer(49) * 50 * 48;
              if (Integer(static_cast<long>(closure.size())) != formula) {
                  detail = "closure order " + std::to_string(closure.size());
                  return false;
              }
              if (closure.size() != enumerated.size()) {
                  detail = "orders differ: " + std::to_string(closure.size()) + " vs " +
                           std::to_string(enumerated.size());
                  return false;
              }
              for (std::size_t i = 0; i < closure.size(); ++i)
                  if (!(closure[i].matrix() == enumerated[i].matrix())) {
                      detail = "sets differ at sorted index " + std::to_string(i);
                      return false;
                  }
              detail = "order 117600, sets equal";
              return true;
          });

    r.run(4, "local isomorphism certificate for A = enumerate_a(2)", [&](std::string& detail) {
        auto a = enumerate_a(CkBound(2));
        Integer b = 1;
        {
            // effective bound = max coefficient over A u AA, measured
            for (const auto& x : a)
                for (const auto& y : a)
                    b = std::max(b, coefficient_bound(compose(x, y)));
            for (const auto& x : a) b = std::max(b, coefficient_bound(x));
        }
        FieldPtr p;
        bool fallback = false;
        try {
            p = find_theorem1_prime(2, static_cast<long>(b.get_si()), 10000000);
        } catch (const SearchExhausted&) {
            fallback = true;
        }
        if (!fallback) {
            auto cert = local_iso_check(a, p);
            std::ostringstream d;
            d << "|A|=" << cert.size_A << " b=" << b.get_str() << " p=" << p->modulus().get_str()
              << " bound_check=" << (cert.bound_check ? "true" : "false");
            detail = d.str();
            return cert.injective && cert.homomorphic && cert.orthochronicity_preserved;
        }
        // documented fallback: A = enumerate_a(1), p = 47
        auto a1 = enumerate_a(CkBound(1));
        auto cert = local_iso_check(a1, PrimeField::make(47));
        detail = "fallback A=enumerate_a(1), p=47, bound_check=" +
                 std::string(cert.bound_check ? "true" : "false");
        return cert.injective && cert.homomorphic;
    });

    r.run(5, "approximation: 1000 samples, ||T|| <= 10, error < 1e-2 at k = 2048; f idempotent",
          [&](std::string& detail) {
              const double M = 10.0;
              const double eps = 1e-2;
              const double amax = (M + std::sqrt(M * M - 4.0)) / 2.0;
              Rng rng(seed);
              const CkBound k(kCriterion5K);
              double worst = 0.0;
              for (int i = 0; i < 1000; ++i) {
                  auto t = compose(compose(rng.rotation(), basic_boost(rng.uniform(1.0, amax))),
                                   rng.rotation());
                  auto res = rational_approximate(t, k);
                  worst = std::max(worst, res.error);
                  if (res.error >= eps) {
                      detail = "sample " + std::to_string(i) + " error " + std::to_string(res.error);
                      return false;
                  }
                  auto again = retract(res.Tq, k);
                  if (!(again == res.Tq)) {
                      detail = "idempotence broke at sample " + std::to_string(i);
                      return false;
                  }
              }
              std::ostringstream d;
              d << "max error " << worst << " < " << eps << ", f(f(T)) = f(T) exactly on all samples";
              detail = d.str();
              return true;
          });

    r.run(6, "velocity addition: exhaustive over F_23 residue pairs; 3/5 (+) 3/5 = 15/17",
          [&](std::string& detail) {
              auto f = PrimeField::make(23);
              std::vector<FpElem> squares;
              for (long x = 1; x <= 11; ++x) squares.push_back(FpElem(x * x, f));
              for (const auto& alpha : squares)
                  for (const auto& gamma : squares) {
                      auto ba = basic_boost(alpha), bg = basic_boost(gamma);
                      auto prod = compose(ba, bg);
                      if (!(prod == basic_boost(alpha * gamma))) {
                          detail = "B_a B_g != B_ag at a=" + alpha.str() + " g=" + gamma.str();
                          return false;
                      }
                      FpElem matrix_v = prod(1, 0) / prod(0, 0);
                      FpElem formula_v =
                          velocity_addition(boost_velocity(alpha), boost_velocity(gamma));
                      if (!(matrix_v == formula_v)) {
                          detail = "velocity mismatch at a=" + alpha.str() + " g=" + gamma.str();
                          return false;
                      }
                  }
              Rational v = velocity_addition(Rational(3, 5), Rational(3, 5));
              if (!(v == Rational(15, 17))) {
                  detail = "rational case gave " + v.str();
                  return false;
              }
              return true;
          });

    r.run(7, "non-group phenomenon: antichronous pair over F_23", [&](std::string& detail) {
        auto f = PrimeField::make(23);
        auto pair = find_antichronous_pair(f);
        if (!pair) {
            detail = "no pair found";
            return false;
        }
        auto ba = basic_boost(pair->first), bg = basic_boost(pair->second);
        auto prod = compose(ba, bg);
        bool replay = ba.orthochronous() && bg.orthochronous() && !prod.orthochronous();
        detail = "pair (" + pair->first.str() + ", " + pair->second.str() + ")";
        return replay;
    });

    r.run(8, "generator identities: boost composition, norms, line reflections",
          [&](std::string& detail) {
              // exhaustive over F_23, any nonzero parameters
              auto f = PrimeField::make(23);
              for (long a = 1; a < 23; ++a)
                  for (long g = 1; g < 23; ++g) {
                      FpElem fa(a, f), fg(g, f);
                      if (!(compose(basic_boost_any(fa), basic_boost_any(fg)) ==
                            basic_boost_any(fa * fg))) {
                          detail = "F_23 boost composition failed";
                          return false;
                      }
                  }
              Rng rng(seed + 1);
              for (int i = 0; i < 200; ++i) {
                  Rational a = rng.rational(9, 9, false);
                  Rational g = rng.rational(9, 9, false);
                  if (a.is_zero() || g.is_zero()) continue;
                  if (!(compose(basic_boost_any(a), basic_boost_any(g)) == basic_boost_any(a * g))) {
                      detail = "rational boost composition failed";
                      return false;
                  }
              }
              for (int i = 0; i < 50; ++i) {
                  double alpha = rng.uniform(1.0, 10.0);
                  double want = alpha + 1.0 / alpha;
                  if (std::fabs(frobenius_norm(basic_boost(alpha)) - want) > 1e-12) {
                      detail = "boost norm failed";
                      return false;
                  }
                  if (std::fabs(frobenius_norm(rng.rotation()) - 2.0) > 1e-12) {
                      detail = "rotation norm failed";
                      return false;
                  }
              }
              // line reflections on random rational unit axes
              Rng rng2(seed + 2);
              int done = 0;
              while (done < 100) {
                  auto w = acceptance_detail::random_exact_word(rng2, 3);
                  int col = static_cast<int>(rng2.next_u64() % 4);
                  Vec4<Rational> axis = column(w.matrix(), col);
                  auto refl = line_reflection(axis);
                  if (refl.det_part() != -1) {
                      detail = "reflection not improper";
                      return false;
                  }
                  if (!(compose(refl, refl).matrix() ==
                        Mat4<Rational>::identity_like(Rational(1)))) {
                      detail = "reflection not involutive";
                      return false;
                  }
                  ++done;
              }
              return true;
          });

    r.run(9, "order structure: trichotomy, nontransitivity witness, velocity bounds",
          [&](std::string& detail) {
              for (long p : {7L, 23L, 31L}) {
                  auto f = PrimeField::make(p);
                  for (long x = 0; x < p; ++x)
                      for (long y = 0; y < p; ++y) {
                          FpElem fx(x, f), fy(y, f);
                          bool lt = lt_p(fx, fy), gt = lt_p(fy, fx);
                          if (x == y ? (lt || gt) : (lt == gt)) {
                              detail = "trichotomy failed mod " + std::to_string(p);
                              return false;
                          }
                      }
              }
              auto f7 = PrimeField::make(7);
              FpElem z(0, f7), one(1, f7), three(3, f7);
              if (!(lt_p(z, one) && lt_p(one, three) && !lt_p(z, three))) {
                  detail = "nontransitivity witness (0,1,3) failed";
                  return false;
              }
              auto f23 = PrimeField::make(23);
              for (long x = 1; x <= 11; ++x) {
                  FpElem alpha(x * x, f23);
                  auto rep = velocity_bounds_check(alpha);  // throws on violation
                  (void)rep;
              }
              return true;
          });

    return r.all_ok();
}

} // namespace lorentz
