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

#ifndef SINTPTS_ARITH_GROEBNER_HPP
#define SINTPTS_ARITH_GROEBNER_HPP

#include "sintpts/arith/mpoly.hpp"

#include <algorithm>
#include <vector>

namespace sintpts {

namespace groebner {

// Graded reverse lexicographic comparison: true when a > b.
inline bool grevlex_greater(const Monomial& a, const Monomial& b) {
    const int da = MPoly::degree_of(a), db = MPoly::degree_of(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

inline Monomial leading_monomial(const MPoly& f) {
    const Monomial* best = nullptr;
    for (const auto& [m, c] : f.terms()) {
        if (best == nullptr || grevlex_greater(m, *best)) best = &m;
    }
    if (best == nullptr) throw Error("leading monomial of zero");
    return *best;
}

inline bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
    return m;
}

inline Monomial quotient(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
    return m;
}

inline MPoly make_monic(const MPoly& f) { return f.coeff(leading_monomial(f)).inverse() * f; }

// Full reduction of f modulo a list of monic polynomials with cached leading monomials.
inline MPoly normal_form(MPoly f, const std::vector<MPoly>& G, const std::vector<Monomial>& LM) {
    MPoly r(f.nvars());
    while (!f.is_zero()) {
        const Monomial lm = leading_monomial(f);
        const SRational lc = f.coeff(lm);
        bool reduced = false;
        for (std::size_t i = 0; i < G.size(); ++i) {
            if (!divides(LM[i], lm)) continue;
            f -= lc * (MPoly::term(SRational(1), quotient(lm, LM[i])) * G[i]);
            reduced = true;
            break;
        }
        if (!reduced) {
            MPoly t = MPoly::term(lc, lm);
            r += t;
            f -= t;
        }
    }
    return r;
}

// Reduced Groebner basis for grevlex by Buchberger's algorithm.
inline std::vector<MPoly> basis(const std::vector<MPoly>& input) {
    std::vector<MPoly> G;
    std::vector<Monomial> LM;
    for (const MPoly& f : input) {
        if (f.is_zero()) continue;
        MPoly g = normal_form(f, G, LM);
        if (g.is_zero()) continue;
        g = make_monic(g);
        G.push_back(g);
        LM.push_back(leading_monomial(g));
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < G.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    }
    while (!pairs.empty()) {
        // Normal strategy: smallest lcm first.
        auto best = pairs.begin();
        for (auto it = pairs.begin(); it != pairs.end(); ++it) {
            if (grevlex_greater(lcm(LM[best->first], LM[best->second]), lcm(LM[it->first], LM[it->second]))) best = it;
        }
        const auto [i, j] = *best;
        pairs.erase(best);
        const Monomial l = lcm(LM[i], LM[j]);
        if (l == [&] {
                Monomial m(l.size());
                for (std::size_t k = 0; k < m.size(); ++k) m[k] = LM[i][k] + LM[j][k];
                return m;
            }())
            continue;
        MPoly s = MPoly::term(SRational(1), quotient(l, LM[i])) * G[i] - MPoly::term(SRational(1), quotient(l, LM[j])) * G[j];
        MPoly h = normal_form(s, G, LM);
        if (h.is_zero()) continue;
        h = make_monic(h);
        G.push_back(h);
        LM.push_back(leading_monomial(h));
        for (std::size_t k = 0; k + 1 < G.size(); ++k) pairs.emplace_back(k, G.size() - 1);
        if (MPoly::degree_of(LM.back()) == 0) return {h};
    }
    // Interreduce.
    std::vector<MPoly> minimal;
    std::vector<Monomial> minimal_lm;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j || !divides(LM[j], LM[i])) continue;
            redundant = LM[j] != LM[i] || j < i;
        }
        if (!redundant) {
            minimal.push_back(G[i]);
            minimal_lm.push_back(LM[i]);
        }
    }
    std::vector<MPoly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MPoly> others;
        std::vector<Monomial> others_lm;
        for (std::size_t j = 0; j < minimal.size(); ++j) {
            if (j == i) continue;
            others.push_back(minimal[j]);
            others_lm.push_back(minimal_lm[j]);
        }
        MPoly tail = minimal[i] - MPoly::term(SRational(1), minimal_lm[i]);
        reduced.push_back(MPoly::term(SRational(1), minimal_lm[i]) + normal_form(tail, others, others_lm));
    }
    std::sort(reduced.begin(), reduced.end(), [](const MPoly& a, const MPoly& b) {
        return grevlex_greater(leading_monomial(b), leading_monomial(a));
    });
    return reduced;
}

// True when the polynomials have no common zero over an algebraic closure.
inline bool is_inconsistent(const std::vector<MPoly>& polys) {
    for (const MPoly& g : basis(polys)) {
        if (g.total_degree() == 0) return true;
    }
    return false;
}

// For homogeneous polynomials: true when they share a nontrivial common zero.
inline bool has_projective_zero(const std::vector<MPoly>& polys) {
    if (polys.empty()) return true;
    const std::size_t n = polys[0].nvars();
    std::vector<bool> pure(n, false);
    for (const MPoly& g : basis(polys)) {
        const Monomial lm = leading_monomial(g);
        std::size_t nonzero = 0, which = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (lm[i] > 0) {
                ++nonzero;
                which = i;
            }
        }
        if (nonzero == 0) return false;
        if (nonzero == 1) pure[which] = true;
    }
    for (bool b : pure) {
        if (!b) return true;
    }
    return false;
}

}  // namespace groebner

}  // namespace sintpts

#endif
