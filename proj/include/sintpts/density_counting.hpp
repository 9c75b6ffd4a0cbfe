/*
   Copyright 2026 The sintpts authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SINTPTS_DENSITY_COUNTING_HPP
#define SINTPTS_DENSITY_COUNTING_HPP

#include "sintpts/arith/polynomial.hpp"
#include "sintpts/arith/valuation.hpp"
#include "sintpts/bundle_engine.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace sintpts {

// The double cover y^2 = P(z) of the z-line.
class DoubleCoverModel {
  public:
    explicit DoubleCoverModel(IntPolynomial P) : P_(std::move(P)) {
        if (P_.degree() < 1) throw InputError("double cover: P must have degree at least 1");
        if (is_square_polynomial(P_)) throw Error("cover has a rational section: P is a square in Q[z]");
        if (!is_squarefree(to_rat(P_))) throw InputError("double cover: P = " + P_.str("z") + " is not squarefree");
    }

    const IntPolynomial& rhs() const { return P_; }
    int degree() const { return P_.degree(); }
    Integer leading() const { return P_.lead(); }
    Integer eval(const Integer& z) const { return P_.eval<Integer>(z); }
    SRational eval(const SRational& z) const { return P_.eval<SRational>(z); }

    static bool is_square_polynomial(const IntPolynomial& P) {
        if (P.is_zero()) return true;
        if (P.degree() % 2 != 0 || sgn(P.lead()) < 0) return false;
        for (const auto& [f, mult] : squarefree_decomposition(to_rat(P))) {
            if (mult % 2 == 1) return false;
        }
        // the monic part is a square, so P is one iff its leading coefficient is
        return is_rational_square(SRational(P.lead()));
    }

  private:
    IntPolynomial P_;
};

struct CountReport {
    Integer B;
    Integer chi, omega, chi_id;
    SRational mu_estimate;
    std::optional<SRational> ratio;  // omega / chi, undefined when chi = 0
};

namespace density_detail {

inline Integer count_range(const Integer& lo, const Integer& hi, unsigned threads,
                           const std::function<bool(const Integer&)>& pred) {
    if (hi < lo) return Integer(0);
    const Integer len = hi - lo + 1;
    const unsigned chunks = std::max(1u, threads) * 4;
    std::vector<std::pair<Integer, Integer>> ranges;
    for (unsigned k = 0; k < chunks; ++k) {
        const Integer a = lo + len * k / chunks, b = lo + len * (k + 1) / chunks - 1;
        if (a <= b) ranges.emplace_back(a, b);
    }
    const auto counts = ordered_parallel_map(ranges, threads, [&](const std::pair<Integer, Integer>& r) {
        Integer c = 0;
        for (Integer z = r.first; z <= r.second; ++z) {
            if (pred(z)) ++c;
        }
        return c;
    });
    Integer total = 0;
    for (const Integer& c : counts) total += c;
    return total;
}

inline bool nonzero_rational_square(const SRational& q) { return sgn(q.num()) > 0 && is_rational_square(q); }

// Machine-word evaluation, available when sum |c_i| B^i stays below 2^120.
using Wide = __int128;

inline std::optional<std::vector<Wide>> wide_coefficients(const IntPolynomial& P, const Integer& B) {
    Integer total = 0, Bi = 1;
    std::vector<Wide> out;
    for (const Integer& c : P.coeffs()) {
        total += int_abs(c) * Bi;
        Bi *= B;
        if (!c.fits_slong_p()) return std::nullopt;
        out.push_back(static_cast<Wide>(c.get_si()));
    }
    if (total >= int_pow(Integer(2), 120)) return std::nullopt;
    return out;
}

inline Wide eval_wide(const std::vector<Wide>& c, long z) {
    Wide v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
}

inline bool is_square_wide(Wide v) {
    if (v < 0) return false;
    Wide r = static_cast<Wide>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v;
}

inline Integer count_range_wide(long lo, long hi, unsigned threads, const std::function<bool(long)>& pred) {
    if (hi < lo) return Integer(0);
    const unsigned chunks = std::max(1u, threads) * 4;
    const long len = hi - lo + 1;
    std::vector<std::pair<long, long>> ranges;
    for (unsigned k = 0; k < chunks; ++k) {
        const long a = lo + len * static_cast<long>(k) / chunks, b = lo + len * static_cast<long>(k + 1) / chunks - 1;
        if (a <= b) ranges.emplace_back(a, b);
    }
    const auto counts = ordered_parallel_map(ranges, threads, [&](const std::pair<long, long>& r) {
        long c = 0;
        for (long z = r.first; z <= r.second; ++z) c += pred(z) ? 1 : 0;
        return c;
    });
    Integer total = 0;
    for (long c : counts) total += c;
    return total;
}

// S-smooth positive integers whose p-parts are all at most B.
inline std::vector<Integer> smooth_denominators(const PlaceSet& S, const Integer& B) {
    std::vector<Integer> out{Integer(1)};
    for (const Integer& p : S.primes()) {
        std::vector<Integer> next;
        for (const Integer& d : out) {
            for (Integer pk = 1; pk <= B; pk *= p) next.push_back(d * pk);
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace density_detail

// #{z in Z : |z| <= B, z in f(U(R))}: P(z) > 0.
inline Integer chi(const DoubleCoverModel& m, const Integer& B, const Place& v, unsigned threads = 1) {
    if (!v.is_infinite()) throw Error("chi: not implemented for finite v=" + v.str());
    if (sgn(B) < 1) throw InputError("chi: B must be positive");
    if (auto c = density_detail::wide_coefficients(m.rhs(), B); c && B.fits_slong_p())
        return density_detail::count_range_wide(-B.get_si(), B.get_si(), threads,
                                                [&](long z) { return density_detail::eval_wide(*c, z) > 0; });
    return density_detail::count_range(-B, B, threads, [&](const Integer& z) { return sgn(m.eval(z)) > 0; });
}

// #{z in Z : |z| <= B, P(z) != 0}
inline Integer chi_id(const DoubleCoverModel& m, const Integer& B, unsigned threads = 1) {
    if (sgn(B) < 1) throw InputError("chi_id: B must be positive");
    if (auto c = density_detail::wide_coefficients(m.rhs(), B); c && B.fits_slong_p())
        return density_detail::count_range_wide(-B.get_si(), B.get_si(), threads,
                                                [&](long z) { return density_detail::eval_wide(*c, z) != 0; });
    return density_detail::count_range(-B, B, threads, [&](const Integer& z) { return sgn(m.eval(z)) != 0; });
}

// #{z in O_S : |z|_w <= B for w in S, P(z) a nonzero rational square}
inline Integer omega(const DoubleCoverModel& m, const Integer& B, const PlaceSet& S, unsigned threads = 1) {
    if (sgn(B) < 1) throw InputError("omega: B must be positive");
    Integer total = 0;
    for (const Integer& d : density_detail::smooth_denominators(S, B)) {
        const Integer amax = B * d;
        if (d == 1) {
            if (auto c = density_detail::wide_coefficients(m.rhs(), B); c && B.fits_slong_p()) {
                total += density_detail::count_range_wide(-B.get_si(), B.get_si(), threads, [&](long z) {
                    const density_detail::Wide v = density_detail::eval_wide(*c, z);
                    return v > 0 && density_detail::is_square_wide(v);
                });
                continue;
            }
        }
        total += density_detail::count_range(-amax, amax, threads, [&](const Integer& a) {
            if (int_gcd(a, d) != 1) return false;
            return density_detail::nonzero_rational_square(m.eval(SRational(a, d)));
        });
    }
    return total;
}

inline CountReport count_report(const DoubleCoverModel& m, const Integer& B, const PlaceSet& S, unsigned threads = 1) {
    CountReport r;
    r.B = B;
    r.chi = chi(m, B, Place::infinite(), threads);
    r.omega = omega(m, B, S, threads);
    r.chi_id = chi_id(m, B, threads);
    r.mu_estimate = SRational(r.chi, r.chi_id);
    if (sgn(r.chi) > 0) r.ratio = SRational(r.omega, r.chi);
    return r;
}

inline std::vector<CountReport> ratio_report(const DoubleCoverModel& m, const std::vector<Integer>& Bs, const PlaceSet& S,
                                             unsigned threads = 1) {
    std::vector<CountReport> out;
    for (const Integer& B : Bs) out.push_back(count_report(m, B, S, threads));
    return out;
}

enum class MuClass { Zero, Half, One, PositiveRamified };

inline std::string mu_class_str(MuClass c) {
    switch (c) {
        case MuClass::Zero:
            return "Zero";
        case MuClass::Half:
            return "Half";
        case MuClass::One:
            return "One";
        default:
            return "PositiveRamified";
    }
}

inline SRational mu_value(MuClass c) {
    switch (c) {
        case MuClass::Zero:
            return SRational(0);
        case MuClass::Half:
            return SRational(Integer(1), Integer(2));
        case MuClass::One:
            return SRational(1);
        default:
            throw Error("mu_value: only a lower bound is known in the ramified case");
    }
}

struct MuClassification {
    MuClass kind;
    // P has no real root z with |z| >= M; so the sign of P on [M, inf) and (-inf, -M] is that at infinity.
    Integer M;
    std::string detail;
};

inline MuClassification mu_classify_real(const DoubleCoverModel& m) {
    const RatPolynomial P = to_rat(m.rhs());
    const SRational bound = cauchy_root_bound(P);
    auto clear_beyond = [&](const Integer& M) {
        const SRational q(M);
        const int above = count_real_roots_above(P, q) + (P.eval<SRational>(q).is_zero() ? 1 : 0);
        const int below = count_real_roots(P, -bound, -q);
        return above == 0 && below == 0;
    };
    Integer lo = 0, hi = bound.num() / bound.den() + 1;
    while (lo < hi) {
        const Integer mid = (lo + hi) / 2;
        if (clear_beyond(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    const bool pos = sgn(m.leading()) > 0;
    MuClassification c{MuClass::Zero, lo, ""};
    if (m.degree() % 2 == 0) {
        c.kind = pos ? MuClass::One : MuClass::Zero;
        c.detail = pos ? "two unramified real points over infinity" : "no real points over infinity; image bounded";
    } else {
        c.kind = MuClass::Half;
        c.detail = pos ? "ramified real point over infinity; image contains [M, inf)"
                       : "ramified real point over infinity; image contains (-inf, -M]";
    }
    return c;
}

// Behaviour over infinity at a finite place.
inline MuClassification mu_classify_local(const DoubleCoverModel& m, const Integer& p) {
    if (m.degree() % 2 == 1) return {MuClass::PositiveRamified, 0, "ramified point over infinity"};
    if (is_square_in_qp(SRational(m.leading()), p))
        return {MuClass::One, 0, "two unramified Q_" + p.get_str() + "-points over infinity"};
    return {MuClass::Zero, 0, "no Q_" + p.get_str() + "-points over infinity"};
}

inline bool doublecase_local_check(const DoubleCoverModel& m, const Integer& p, const SRational& z) {
    const SRational v = m.eval(z);
    if (v.is_zero()) throw Error("doublecase_local_check: z = " + z.str() + " is a branch point");
    return is_square_in_qp(v, p);
}

// For integral z with P(z) != 0, moving z by a multiple of p^m with m at least this keeps the
// square class of P(z).
inline int hensel_threshold(const DoubleCoverModel& m, const Integer& p, const Integer& z) {
    const Integer v = m.eval(z);
    if (sgn(v) == 0) throw Error("hensel_threshold: z is a branch point");
    return ord_p(v, p) + (p == 2 ? 3 : 1);
}

// z = M / p^beta with M = u0 mod p^beta and beta of the parity of ord_p(c_n): then c_n z^n has
// even valuation and unit part congruent to u0^(n+1), and P(z) is a square in Q_p.
inline std::vector<SRational> doublecase_witnesses(const DoubleCoverModel& m, const Integer& p, std::size_t count) {
    if (m.degree() % 2 == 0) throw Error("doublecase_witnesses: cover is unramified over infinity (even degree)");
    Place::finite(p);
    const int alpha = ord_p(m.leading(), p);
    const Integer u0 = remove_factor(m.leading(), p);
    int beta = alpha + (p == 2 ? 3 : 1);
    if ((beta - alpha) % 2 != 0) ++beta;
    for (; beta <= alpha + 64; beta += 2) {
        const Integer pb = int_pow(p, static_cast<unsigned long>(beta));
        const Integer M0 = mod_floor(u0, pb);
        std::vector<SRational> out;
        bool ok = true;
        for (std::size_t k = 0; k < count && ok; ++k) {
            const SRational z(M0 + pb * Integer(static_cast<unsigned long>(k)), pb);
            ok = !m.eval(z).is_zero() && doublecase_local_check(m, p, z);
            out.push_back(z);
        }
        if (ok) return out;
    }
    throw Error("doublecase_witnesses: no exponent found");
}

}  // namespace sintpts

#endif
