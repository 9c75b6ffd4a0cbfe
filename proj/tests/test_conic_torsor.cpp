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

#include "sintpts/conic_torsor.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sintpts;

namespace {

SRational Q(long a, long b = 1) { return SRational(Integer(a), Integer(b)); }

AffineConic conic(long a, long b, long c, long d, long e, long f) { return AffineConic(Q(a), Q(b), Q(c), Q(d), Q(e), Q(f)); }

std::vector<ConicPoint> orbit(const AffineConic& C, ConicPoint seed, const PlaceSet& S, std::size_t n) {
    return generate_bisection_case(C, BoundaryDivisor::at_infinity(C), seed, S, n).points;
}

}  // namespace

TEST(ClassifyForm, Examples) {
    const AffineConic pell = conic(1, 0, -3, 0, 0, -1);
    EXPECT_EQ(std::get<TorusForm>(classify_form(pell, BoundaryDivisor::at_infinity(pell))), TorusForm::nonsplit(3));
    const AffineConic hyper = conic(0, 1, 0, 0, 0, -1);
    EXPECT_EQ(std::get<TorusForm>(classify_form(hyper, BoundaryDivisor::at_infinity(hyper))), TorusForm::split());
    const AffineConic parabola = conic(1, 0, 0, 0, -1, 0);  // y = x^2
    EXPECT_TRUE(std::holds_alternative<AdditiveForm>(classify_form(parabola, BoundaryDivisor::at_infinity(parabola))));
    EXPECT_THROW(BoundaryDivisor::bisection(Q(1), Q(2), Q(1)), Error);
    EXPECT_THROW(conic(1, 0, -1, 0, 0, 0), Error);  // a pair of lines
}

TEST(ClassifyForm, InvariantUnderUnimodularChanges) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> small(-3, 3);
    const std::vector<std::array<long, 6>> conics{{1, 0, -3, 0, 0, -1}, {2, 1, -5, 1, 0, 7}, {1, 1, 1, 0, 0, -7}, {0, 1, 0, 0, 0, -1}};
    for (const auto& k : conics) {
        const AffineConic C = conic(k[0], k[1], k[2], k[3], k[4], k[5]);
        const FormClass base = classify_form(C, BoundaryDivisor::at_infinity(C));
        for (int trial = 0; trial < 30; ++trial) {
            // (x, y) = (p x' + q y', r x' + s y') with ps - qr in {+-1, +-2}
            long p, q, r, s;
            do {
                p = small(rng);
                q = small(rng);
                r = small(rng);
                s = small(rng);
            } while (std::abs(p * s - q * r) != 1 && std::abs(p * s - q * r) != 2);
            const SRational A = C.A() * Q(p * p) + C.B() * Q(p * r) + C.C() * Q(r * r);
            const SRational B = C.A() * Q(2 * p * q) + C.B() * Q(p * s + q * r) + C.C() * Q(2 * r * s);
            const SRational Cc = C.A() * Q(q * q) + C.B() * Q(q * s) + C.C() * Q(s * s);
            const SRational D = C.D() * Q(p) + C.E() * Q(r);
            const SRational E = C.D() * Q(q) + C.E() * Q(s);
            const AffineConic T(A, B, Cc, D, E, C.F());
            EXPECT_EQ(classify_form(T, BoundaryDivisor::at_infinity(T)), base);
        }
    }
}

TEST(SectionCase, Examples) {
    const LineModel A1;
    const auto r3 = generate_section_case(A1, PlaceSet{}, 3).parameters;
    EXPECT_EQ(std::set<SRational>(r3.begin(), r3.end()), (std::set<SRational>{Q(-3), Q(-2), Q(-1), Q(0), Q(1), Q(2), Q(3)}));
    const auto r2 = generate_section_case(A1, PlaceSet{2}, 2).parameters;
    EXPECT_EQ(std::set<SRational>(r2.begin(), r2.end()),
              (std::set<SRational>{Q(0), Q(1), Q(-1), Q(2), Q(-2), Q(1, 2), Q(-1, 2)}));
    EXPECT_EQ(generate_section_case(A1, PlaceSet{}, 0).parameters, std::vector<SRational>{Q(0)});
    LineModel parabola;
    parabola.y = RatPolynomial(std::vector<SRational>{Q(0), Q(0), Q(1)});
    const AffineConic C = conic(1, 0, 0, 0, -1, 0);
    for (const ConicPoint& p : generate_section_case(parabola, PlaceSet{3}, 9).points) EXPECT_TRUE(C.contains(p));
}

TEST(SectionCase, GrowsWithBound) {
    std::size_t last = 0;
    for (long B = 1; B <= 10; ++B) {
        const std::size_t n = s_integers_of_height(PlaceSet{2, 3}, B).size();
        EXPECT_GT(n, last);
        last = n;
    }
}

TEST(BisectionCase, Examples) {
    EXPECT_EQ(orbit(conic(1, 0, -3, 0, 0, -1), {Q(1), Q(0)}, PlaceSet{}, 3),
              (std::vector<ConicPoint>{{Q(1), Q(0)}, {Q(2), Q(1)}, {Q(7), Q(4)}}));
    EXPECT_EQ(orbit(conic(1, 0, -3, 0, 0, 2), {Q(1), Q(1)}, PlaceSet{}, 2),
              (std::vector<ConicPoint>{{Q(1), Q(1)}, {Q(5), Q(3)}}));
    EXPECT_EQ(orbit(conic(0, 1, 0, 0, 0, -1), {Q(1), Q(1)}, PlaceSet{2}, 3),
              (std::vector<ConicPoint>{{Q(1), Q(1)}, {Q(2), Q(1, 2)}, {Q(4), Q(1, 4)}}));
}

TEST(BisectionCase, Errors) {
    const AffineConic circle = conic(1, 0, 1, 0, 0, -1);
    EXPECT_THROW(orbit(circle, {Q(1), Q(0)}, PlaceSet{}, 3), Error);         // rank zero
    EXPECT_THROW(orbit(conic(1, 0, -3, 0, 0, -1), {Q(2), Q(0)}, PlaceSet{}, 3), Error);  // not on the conic
    EXPECT_THROW(orbit(conic(0, 1, 0, 0, 0, -1), {Q(1), Q(1)}, PlaceSet{}, 2), Error);  // split, S = {inf}
}

TEST(BisectionCase, SplitPrimeOfNonsplitForm) {
    // x^2 + y^2 = 1 with S = {inf, 5}: 5 splits in Q(i), rotations by (3 + 4i)/5.
    const AffineConic circle = conic(1, 0, 1, 0, 0, -1);
    const auto pts = orbit(circle, {Q(1), Q(0)}, PlaceSet{5}, 4);
    ASSERT_EQ(pts.size(), 4u);
    EXPECT_EQ(pts[1].x.abs(), Q(3, 5));
    for (const auto& p : pts) {
        EXPECT_TRUE(circle.contains(p));
        EXPECT_TRUE(is_s_integer(p.x, PlaceSet{5}));
    }
}

TEST(BisectionCase, CongruenceSubgroupKeepsIntegrality) {
    // Center (-2/5, -1/5); only a power of the unit keeps integral points integral.
    const AffineConic C = conic(1, 1, -1, 1, 0, -2);
    ASSERT_TRUE(C.contains({Q(1), Q(1)}));
    const auto res = generate_bisection_case(C, BoundaryDivisor::at_infinity(C), {Q(1), Q(1)}, PlaceSet{}, 6);
    EXPECT_EQ(res.form, TorusForm::nonsplit(5));
    EXPECT_FALSE(res.center.x.is_integer() && res.center.y.is_integer());
    for (const auto& p : res.points) {
        EXPECT_TRUE(C.contains(p));
        EXPECT_TRUE(p.x.is_integer() && p.y.is_integer()) << p.str();
    }
}

TEST(BisectionCase, NoRepetitionsUpToFifty) {
    for (const auto& [C, seed, S] : std::vector<std::tuple<AffineConic, ConicPoint, PlaceSet>>{
             {conic(1, 0, -2, 0, 0, -1), {Q(1), Q(0)}, PlaceSet{}},
             {conic(1, 0, -3, 0, 0, 2), {Q(1), Q(1)}, PlaceSet{}},
             {conic(0, 1, 0, 0, 0, -1), {Q(1), Q(1)}, PlaceSet{2, 3}},
             {conic(1, 0, 1, 0, 0, -1), {Q(1), Q(0)}, PlaceSet{5, 13}}}) {
        const auto pts = orbit(C, seed, S, 50);
        ASSERT_EQ(pts.size(), 50u);
        EXPECT_EQ(std::set<ConicPoint>(pts.begin(), pts.end()).size(), 50u);
        for (const auto& p : pts) {
            EXPECT_TRUE(C.contains(p));
            EXPECT_TRUE(is_s_integer(p.x, S) && is_s_integer(p.y, S));
        }
    }
}

TEST(FundamentalNormOne, OddDiscriminants) {
    // delta = 5: (1 + sqrt5)/2 has t = u = 1 but norm -1; the norm-one unit is its square (3, 1).
    EXPECT_EQ(fundamental_norm_one(Integer(5)), std::make_pair(Integer(3), Integer(1)));
    EXPECT_EQ(fundamental_norm_one(Integer(12)), std::make_pair(Integer(4), Integer(1)));
    EXPECT_EQ(fundamental_norm_one(Integer(13)), std::make_pair(Integer(11), Integer(3)));
    EXPECT_EQ(fundamental_norm_one(Integer(17)), std::make_pair(Integer(66), Integer(16)));
    for (long d = 5; d < 300; ++d) {
        if (d % 4 != 0 && d % 4 != 1) continue;
        if (is_perfect_square(Integer(d))) continue;
        const auto [t, u] = fundamental_norm_one(Integer(d));
        EXPECT_EQ(t * t - d * u * u, 4);
        // minimality by scanning
        for (long v = 1; v < u && v < 2000; ++v) EXPECT_FALSE(is_perfect_square(Integer(d * v * v + 4))) << d;
    }
}
