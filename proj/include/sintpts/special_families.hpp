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

#ifndef SINTPTS_SPECIAL_FAMILIES_HPP
#define SINTPTS_SPECIAL_FAMILIES_HPP

#include "sintpts/arith/polynomial.hpp"

#include <array>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sintpts {

// ---------------------------------------------------------------------------
// Markov triples x^2 + y^2 + z^2 = 3xyz

struct MarkovTriple {
    Integer x, y, z;  // sorted, x <= y <= z

    static MarkovTriple sorted(Integer a, Integer b, Integer c) {
        std::array<Integer, 3> v{std::move(a), std::move(b), std::move(c)};
        std::sort(v.begin(), v.end());
        return {v[0], v[1], v[2]};
    }
    bool valid() const { return x * x + y * y + z * z == Integer(3) * x * y * z && sgn(x) > 0; }
    auto key() const { return std::tie(x, y, z); }
    friend bool operator<(const MarkovTriple& a, const MarkovTriple& b) { return a.key() < b.key(); }
    friend bool operator==(const MarkovTriple& a, const MarkovTriple& b) { return a.key() == b.key(); }
};

inline std::array<MarkovTriple, 3> vieta_neighbours(const MarkovTriple& m) {
    const Integer three(3);
    return {MarkovTriple::sorted(three * m.y * m.z - m.x, m.y, m.z), MarkovTriple::sorted(m.x, three * m.x * m.z - m.y, m.z),
            MarkovTriple::sorted(m.x, m.y, three * m.x * m.y - m.z)};
}

// Triples within `depth` Vieta moves of (1, 1, 1), with their distance.
inline std::map<MarkovTriple, int> markov_distances(int depth) {
    if (depth < 0 || depth > 12) throw InputError("markov: depth must be in [0, 12]");
    std::map<MarkovTriple, int> dist{{MarkovTriple{1, 1, 1}, 0}};
    std::deque<MarkovTriple> queue{MarkovTriple{1, 1, 1}};
    while (!queue.empty()) {
        const MarkovTriple m = queue.front();
        queue.pop_front();
        const int d = dist.at(m);
        if (d == depth) continue;
        for (const MarkovTriple& n : vieta_neighbours(m)) {
            if (!n.valid()) throw Error("internal: Vieta move left the Markov surface");
            if (dist.emplace(n, d + 1).second) queue.push_back(n);
        }
    }
    return dist;
}

inline std::set<MarkovTriple> markov_orbit(int depth) {
    std::set<MarkovTriple> out;
    for (const auto& [m, d] : markov_distances(depth)) out.insert(m);
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial solutions of x^3 + y^3 + z^3 = 1

namespace families_detail {

inline IntPolynomial T() { return IntPolynomial::x(); }
inline IntPolynomial C(long a) { return IntPolynomial::constant(Integer(a)); }
inline IntPolynomial M(long a, std::size_t k) { return IntPolynomial::monomial(Integer(a), k); }

}  // namespace families_detail

class IdentityError : public Error {
  public:
    IdentityError(const std::string& what, IntPolynomial residual) : Error(what), residual_(std::move(residual)) {}
    const IntPolynomial& residual() const { return residual_; }

  private:
    IntPolynomial residual_;
};

struct PolyTriple {
    IntPolynomial x, y, z;

    IntPolynomial cube_sum_residual() const { return x.pow(3) + y.pow(3) + z.pow(3) - families_detail::C(1); }

    static PolyTriple checked(IntPolynomial x, IntPolynomial y, IntPolynomial z, const std::string& label) {
        PolyTriple p{std::move(x), std::move(y), std::move(z)};
        const IntPolynomial r = p.cube_sum_residual();
        if (!r.is_zero()) throw IdentityError(label + ": x^3 + y^3 + z^3 - 1 = " + r.str() + " is not zero", r);
        return p;
    }
    int degree() const { return std::max({x.degree(), y.degree(), z.degree()}); }
    std::array<Integer, 3> at(const Integer& t) const { return {x.eval<Integer>(t), y.eval<Integer>(t), z.eval<Integer>(t)}; }
    bool operator==(const PolyTriple& o) const { return x == o.x && y == o.y && z == o.z; }
};

// (9t^4, 3t - 9t^4, 1 - 9t^3)
inline PolyTriple euler_multisection() {
    using namespace families_detail;
    return PolyTriple::checked(M(9, 4), M(3, 1) - M(9, 4), C(1) - M(9, 3), "Euler triple");
}

// (9t^4, -3t - 9t^4, 1 + 9t^3): the Euler triple at -t
inline PolyTriple euler_reparam() {
    using namespace families_detail;
    return PolyTriple::checked(M(9, 4), M(-3, 1) - M(9, 4), C(1) + M(9, 3), "reparametrized Euler triple");
}

// 2(216t^6 - 1) v_n - v_{n-1} + (-108t^4, -108t^4, 216t^4 + 4)
inline PolyTriple lehmer_next(const PolyTriple& prev, const PolyTriple& prev2) {
    using namespace families_detail;
    const IntPolynomial k = C(2) * (M(216, 6) - C(1));
    return PolyTriple::checked(k * prev.x - prev2.x + M(-108, 4), k * prev.y - prev2.y + M(-108, 4),
                               k * prev.z - prev2.z + (M(216, 4) + C(4)), "Lehmer recursion");
}

struct LehmerRun {
    std::vector<PolyTriple> members;  // members[0], members[1] are the seeds
    std::optional<int> failed_index;  // first n whose recursion output violates the identity
    IntPolynomial residual;
};

// Members 0..n_max, stopping at the first identity violation.
inline LehmerRun lehmer_sequence(int n_max) {
    LehmerRun run;
    run.members = {euler_multisection(), euler_reparam()};
    for (int n = 2; n <= n_max; ++n) {
        try {
            run.members.push_back(lehmer_next(run.members[static_cast<std::size_t>(n - 1)], run.members[static_cast<std::size_t>(n - 2)]));
        } catch (const IdentityError& e) {
            run.failed_index = n;
            run.residual = e.residual();
            break;
        }
    }
    return run;
}

// ---------------------------------------------------------------------------
// The norm group scheme u^2 - d(t) v^2 = 1

inline IntPolynomial norm_scheme_d() {
    using namespace families_detail;
    return C(3) * (M(108, 6) - C(1));
}

inline std::pair<IntPolynomial, IntPolynomial> norm_scheme_section() {
    using namespace families_detail;
    return {M(216, 6) - C(1), M(12, 3)};
}

inline bool verify_norm_identity(const IntPolynomial& u, const IntPolynomial& v, const IntPolynomial& d) {
    return (u * u - d * v * v) == families_detail::C(1);
}

inline bool verify_norm_identity(const IntPolynomial& u, const IntPolynomial& v) { return verify_norm_identity(u, v, norm_scheme_d()); }

inline std::pair<IntPolynomial, IntPolynomial> pell_compose_polynomial(const IntPolynomial& u1, const IntPolynomial& v1,
                                                                        const IntPolynomial& u2, const IntPolynomial& v2,
                                                                        const IntPolynomial& d) {
    if (!verify_norm_identity(u1, v1, d)) throw Error("pell_compose_polynomial: first pair is not on the norm torus");
    if (!verify_norm_identity(u2, v2, d)) throw Error("pell_compose_polynomial: second pair is not on the norm torus");
    std::pair<IntPolynomial, IntPolynomial> r{u1 * u2 + d * v1 * v2, u1 * v2 + v1 * u2};
    if (!verify_norm_identity(r.first, r.second, d)) throw Error("internal: composition left the norm torus");
    return r;
}

// section^k for k = 0..count-1
inline std::vector<std::pair<IntPolynomial, IntPolynomial>> norm_scheme_powers(std::size_t count) {
    const IntPolynomial d = norm_scheme_d();
    const auto s = norm_scheme_section();
    std::vector<std::pair<IntPolynomial, IntPolynomial>> out{{families_detail::C(1), IntPolynomial{}}};
    while (out.size() < count) out.push_back(pell_compose_polynomial(out.back().first, out.back().second, s.first, s.second, d));
    out.resize(count);
    return out;
}

}  // namespace sintpts

#endif
