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

#ifndef SINTPTS_TORUS_PELL_HPP
#define SINTPTS_TORUS_PELL_HPP

#include "sintpts/arith/valuation.hpp"

#include <string>
#include <vector>

namespace sintpts {

class TorusForm {
  public:
    enum class Kind { Split, Nonsplit };

    static TorusForm split() { return TorusForm(Kind::Split, Integer(1)); }
    static TorusForm nonsplit(const Integer& d) {
        if (sgn(d) == 0 || is_perfect_square(d) || squarefree_part(d) != d)
            throw Error("nonsplit torus needs a squarefree non-square d, got " + d.get_str());
        return TorusForm(Kind::Nonsplit, d);
    }
    // The form classified by the square class of delta (delta != 0).
    static TorusForm from_discriminant(const SRational& delta) {
        if (delta.is_zero()) throw Error("degenerate boundary: discriminant 0");
        if (is_rational_square(delta)) return split();
        return nonsplit(squarefree_class(delta));
    }

    Kind kind() const { return kind_; }
    bool is_split() const { return kind_ == Kind::Split; }
    const Integer& d() const { return d_; }
    std::string str() const { return is_split() ? "split" : "nonsplit(" + d_.get_str() + ")"; }

    friend bool operator==(const TorusForm& a, const TorusForm& b) { return a.kind_ == b.kind_ && a.d_ == b.d_; }

  private:
    TorusForm(Kind k, Integer d) : kind_(k), d_(std::move(d)) {}
    Kind kind_;
    Integer d_;
};

struct PellProblem {
    Integer D;
    Integer N;

    PellProblem(Integer d, Integer n) : D(std::move(d)), N(std::move(n)) {
        if (sgn(D) <= 0 || is_perfect_square(D)) throw Error("Pell problem needs a positive non-square D");
        if (sgn(N) == 0) throw Error("Pell problem needs N != 0");
    }
    bool solves(const Integer& u, const Integer& v) const { return u * u - D * v * v == N; }
};

struct PellSolution {
    Integer u;
    Integer v;

    friend bool operator==(const PellSolution& a, const PellSolution& b) { return a.u == b.u && a.v == b.v; }
};

inline PellSolution make_pell_solution(const PellProblem& P, const Integer& u, const Integer& v) {
    if (!P.solves(u, v))
        throw Error("(" + u.get_str() + "," + v.get_str() + ") does not solve u^2 - " + P.D.get_str() + " v^2 = " +
                    P.N.get_str());
    return PellSolution{u, v};
}

inline std::size_t rank_split(const PlaceSet& S) { return S.size() - 1; }

inline std::size_t rank_nonsplit(const SRational& d, const PlaceSet& S) {
    std::size_t r = 0;
    for (const Place& v : S.places()) {
        if (splits_completely(d, v)) ++r;
    }
    return r;
}

inline std::size_t torus_rank(const TorusForm& T, const PlaceSet& S) {
    return T.is_split() ? rank_split(S) : rank_nonsplit(SRational(T.d()), S);
}

inline const Integer& pell_guard() {
    static const Integer g("1000000000000");
    return g;
}

// Least positive solution of u^2 - D v^2 = 1 from the continued fraction of sqrt(D).
inline PellSolution pell_fundamental(const Integer& D) {
    if (sgn(D) <= 0 || is_perfect_square(D)) throw Error("pell_fundamental: D must be a positive non-square");
    if (D > pell_guard()) throw Error("pell_fundamental: D exceeds the 10^12 guard");
    const Integer a0 = isqrt(D);
    Integer m = 0, d = 1, a = a0;
    Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    for (;;) {
        const Integer h = a * h1 + h2;
        const Integer k = a * k1 + k2;
        if (h * h - D * k * k == 1) return PellSolution{h, k};
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
    }
}

inline PellSolution pell_compose(const Integer& D, const PellSolution& a, const PellSolution& b) {
    const PellProblem P(D, 1);
    make_pell_solution(P, a.u, a.v);
    make_pell_solution(P, b.u, b.v);
    return make_pell_solution(P, a.u * b.u + D * a.v * b.v, a.u * b.v + a.v * b.u);
}

// seed, eps*seed, ..., eps^(n-1)*seed with eps the fundamental unit.
inline std::vector<PellSolution> orbit_on_torsor(const Integer& D, const Integer& N, const PellSolution& seed,
                                                 std::size_t n) {
    const PellProblem P(D, N);
    make_pell_solution(P, seed.u, seed.v);
    const PellSolution eps = pell_fundamental(D);
    std::vector<PellSolution> out;
    PellSolution cur = seed;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(make_pell_solution(P, cur.u, cur.v));
        cur = PellSolution{eps.u * cur.u + D * eps.v * cur.v, eps.u * cur.v + eps.v * cur.u};
    }
    return out;
}

inline std::vector<SRational> s_unit_generators(const PlaceSet& S) {
    std::vector<SRational> g{SRational(-1)};
    for (const Integer& p : S.primes()) g.emplace_back(p);
    return g;
}

}  // namespace sintpts

#endif
