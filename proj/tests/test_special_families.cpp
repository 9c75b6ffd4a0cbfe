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

#include "oracles.hpp"
#include "sintpts/cubic_pipeline.hpp"
#include "sintpts/special_families.hpp"

#include <gtest/gtest.h>

using namespace sintpts;

namespace {

// Dense polynomials over 128-bit integers, written independently of the library.
using WP = std::vector<__int128>;

WP wmul(const WP& a, const WP& b) {
    WP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

WP wadd(WP a, const WP& b, __int128 s = 1) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

WP cube_sum_minus_one(const WP& x, const WP& y, const WP& z) {
    WP r = wadd(wadd(wmul(wmul(x, x), x), wmul(wmul(y, y), y)), wmul(wmul(z, z), z));
    return wadd(r, WP{1}, -1);
}

WP to_wide(const IntPolynomial& p) {
    WP r;
    for (const Integer& c : p.coeffs()) r.push_back(static_cast<__int128>(c.get_si()));
    return r;
}

IntPolynomial P(std::vector<long> c) { return IntPolynomial(std::vector<Integer>(c.begin(), c.end())); }

}  // namespace

TEST(Markov, SmallDepths) {
    EXPECT_EQ(markov_orbit(0), (std::set<MarkovTriple>{{1, 1, 1}}));
    EXPECT_EQ(markov_orbit(2), (std::set<MarkovTriple>{{1, 1, 1}, {1, 1, 2}, {1, 2, 5}}));
    const auto o4 = markov_orbit(4);
    EXPECT_TRUE(o4.count({1, 5, 13}));
    EXPECT_TRUE(o4.count({2, 5, 29}));
    EXPECT_THROW(markov_orbit(13), InputError);
    EXPECT_THROW(markov_orbit(-1), InputError);
}

TEST(Markov, MatchesCensusWithinReach) {
    const auto census = oracle::markov_census(1000);
    // oracle: breadth-first search on tuples, independent of the library's triple type
    std::map<std::tuple<long, long, long>, int> reach{{{1, 1, 1}, 0}};
    std::vector<std::tuple<long, long, long>> frontier{{1, 1, 1}};
    for (int d = 1; d <= 6; ++d) {
        std::vector<std::tuple<long, long, long>> next;
        for (const auto& [a, b, c] : frontier) {
            for (std::array<long, 3> v : {std::array<long, 3>{3 * b * c - a, b, c}, {a, 3 * a * c - b, c}, {a, b, 3 * a * b - c}}) {
                std::sort(v.begin(), v.end());
                if (reach.emplace(std::make_tuple(v[0], v[1], v[2]), d).second) next.emplace_back(v[0], v[1], v[2]);
            }
        }
        frontier = std::move(next);
    }
    std::set<MarkovTriple> expected;
    for (const auto& [a, b, c] : census) {
        if (reach.count({a, b, c})) expected.insert(MarkovTriple{a, b, c});
    }
    std::set<MarkovTriple> got;
    for (const auto& m : markov_orbit(6)) {
        EXPECT_TRUE(m.valid());
        if (m.z <= 1000) got.insert(m);
    }
    EXPECT_EQ(got, expected);
    std::set<Integer> coords;
    for (const auto& [a, b, c] : census) coords.insert({Integer(a), Integer(b), Integer(c)});
    for (long n : {1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985}) EXPECT_TRUE(coords.count(n)) << n;
}

TEST(Markov, OrbitsAreNested) {
    std::set<MarkovTriple> last;
    for (int d = 0; d <= 8; ++d) {
        const auto cur = markov_orbit(d);
        EXPECT_TRUE(std::includes(cur.begin(), cur.end(), last.begin(), last.end()));
        EXPECT_GT(cur.size(), last.size());
        last = cur;
    }
    const auto dist = markov_distances(7);
    EXPECT_EQ(dist.at(MarkovTriple{1, 233, 610}), 7);
    EXPECT_EQ(dist.at(MarkovTriple{2, 5, 29}), 3);
}

TEST(Euler, Identities) {
    const auto a = euler_multisection();
    const auto b = euler_reparam();
    EXPECT_TRUE(cube_sum_minus_one(to_wide(a.x), to_wide(a.y), to_wide(a.z)).empty());
    EXPECT_TRUE(cube_sum_minus_one(to_wide(b.x), to_wide(b.y), to_wide(b.z)).empty());
    EXPECT_EQ(a.at(1), (std::array<Integer, 3>{9, -6, -8}));
    for (long t = -5; t <= 5; ++t) EXPECT_EQ(b.at(-t), a.at(t));
    EXPECT_EQ(a.degree(), 4);
}

TEST(Lehmer, RecursionOutputViolatesTheIdentity) {
    const auto x0 = euler_multisection(), x1 = euler_reparam();
    // compute the candidate directly and its residual with the independent oracle
    const WP k{-2, 0, 0, 0, 0, 0, 432};
    const WP c{0, 0, 0, 0, -108}, cz{4, 0, 0, 0, 216};
    const WP x = wadd(wadd(wmul(k, to_wide(x1.x)), to_wide(x0.x), -1), c);
    const WP y = wadd(wadd(wmul(k, to_wide(x1.y)), to_wide(x0.y), -1), c);
    const WP z = wadd(wadd(wmul(k, to_wide(x1.z)), to_wide(x0.z), -1), cz);
    const WP residual = cube_sum_minus_one(x, y, z);
    ASSERT_FALSE(residual.empty());
    EXPECT_EQ(x.size(), 11u);  // degree 10
    try {
        lehmer_next(x1, x0);
        FAIL();
    } catch (const IdentityError& e) {
        EXPECT_EQ(to_wide(e.residual()), residual);
        // -648 t^4 (t^2 - 1) (15116544t^18 + 4199040t^15 + 839808t^13 + 225504t^12 + 108864t^10 - 1944t^9
        //   + 15552t^8 - 1944t^7 + 1161t^6 + 216t^4 - 18t^3 + 1)
        const IntPolynomial q = P({1, 0, 0, -18, 216, 0, 1161, -1944, 15552, -1944, 108864, 0, 225504, 839808, 0, 4199040, 0, 0, 15116544});
        const IntPolynomial expected = Integer(-648) * (IntPolynomial::monomial(Integer(1), 4) * P({-1, 0, 1}) * q);
        EXPECT_EQ(e.residual(), expected);
    }
    EXPECT_THROW(lehmer_next(x0, x1), IdentityError);
}

TEST(Lehmer, SequenceStopsWithResidual) {
    const auto run = lehmer_sequence(5);
    ASSERT_TRUE(run.failed_index.has_value());
    EXPECT_EQ(*run.failed_index, 2);
    EXPECT_EQ(run.members.size(), 2u);
    EXPECT_EQ(run.residual.degree(), 24);
    // the residual vanishes at t = 0, +-1: there the recursion still gives integer solutions
    for (long t : {-1L, 0L, 1L}) EXPECT_EQ(run.residual.eval<Integer>(Integer(t)), 0);
}

TEST(NormScheme, Section) {
    const auto [u, v] = norm_scheme_section();
    EXPECT_EQ(u, P({-1, 0, 0, 0, 0, 0, 216}));
    EXPECT_EQ(v, P({0, 0, 0, 12}));
    EXPECT_TRUE(verify_norm_identity(u, v));
    EXPECT_EQ(u.eval<Integer>(Integer(1)) * u.eval<Integer>(Integer(1)) - Integer(321) * 144, 1);
    EXPECT_TRUE(verify_norm_identity(P({1}), IntPolynomial{}));
    EXPECT_FALSE(verify_norm_identity(u, P({0, 0, 0, 11})));
    // independent expansion
    const WP uw = to_wide(u), vw = to_wide(v), dw{-3, 0, 0, 0, 0, 0, 324};
    EXPECT_EQ(wadd(wmul(uw, uw), wmul(dw, wmul(vw, vw)), -1), (WP{1}));
}

TEST(NormScheme, Composition) {
    const auto d = norm_scheme_d();
    const auto [u, v] = norm_scheme_section();
    const auto sq = pell_compose_polynomial(u, v, u, v, d);
    EXPECT_EQ(sq.first.degree(), 12);
    EXPECT_TRUE(verify_norm_identity(sq.first, sq.second));
    EXPECT_EQ(pell_compose_polynomial(u, v, P({1}), IntPolynomial{}, d), std::make_pair(u, v));
    EXPECT_EQ(pell_compose_polynomial(u, v, u, -v, d), std::make_pair(P({1}), IntPolynomial{}));
    EXPECT_THROW(pell_compose_polynomial(u, v, u, u, d), Error);
    const auto pw = norm_scheme_powers(6);
    for (std::size_t k = 1; k < pw.size(); ++k) {
        EXPECT_GT(pw[k].first.degree(), pw[k - 1].first.degree());
        EXPECT_EQ(pw[k].first.degree(), static_cast<int>(6 * k));
    }
}

TEST(CrossModule, EulerPointsLieOnFermatFibers) {
    RawCubic r;
    for (auto& c : r.coefficients) c = SRational(0);
    r.coefficients[0] = SRational(-1);
    r.coefficients[10] = SRational(1);
    r.coefficients[16] = SRational(1);
    r.coefficients[19] = SRational(1);
    r.boundary = {SRational(1), SRational(0), SRational(0), SRational(0)};
    r.line = {{{SRational(1), SRational(0), SRational(0), SRational(-1)}, {SRational(0), SRational(1), SRational(1), SRational(0)}}};
    const auto m = normalize_to_paper_coordinates(r);
    std::size_t on_fibers = 0;
    for (const auto& tr : {euler_multisection(), euler_reparam()}) {
        for (long t = -3; t <= 3; ++t) {
            const auto p = tr.at(t);
            EXPECT_EQ(p[0] * p[0] * p[0] + p[1] * p[1] * p[1] + p[2] * p[2] * p[2], 1);
            const std::array<SRational, 4> P4{SRational(1), SRational(p[0]), SRational(p[1]), SRational(p[2])};
            const auto f = fiber_through_point(m, P4);
            if (!f) continue;  // t = 0 gives (0, 0, 1), a point of the line
            EXPECT_TRUE(f->first.phi.eval({f->second.x, f->second.y}).is_zero());
            ++on_fibers;
        }
    }
    EXPECT_EQ(on_fibers, 12u);
}
