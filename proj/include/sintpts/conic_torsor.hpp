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

#ifndef SINTPTS_CONIC_TORSOR_HPP
#define SINTPTS_CONIC_TORSOR_HPP

#include "sintpts/arith/linalg.hpp"
#include "sintpts/arith/polynomial.hpp"
#include "sintpts/torus_pell.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace sintpts {

struct ConicPoint {
    SRational x;
    SRational y;

    friend bool operator==(const ConicPoint& a, const ConicPoint& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const ConicPoint& a, const ConicPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

// A x^2 + B xy + C y^2 + D x + E y + F = 0
class AffineConic {
  public:
    AffineConic(SRational a, SRational b, SRational c, SRational d, SRational e, SRational f)
        : c_{std::move(a), std::move(b), std::move(c), std::move(d), std::move(e), std::move(f)} {
        if (determinant().is_zero()) throw Error("conic " + str() + " is degenerate (determinant 0)");
    }

    const SRational& A() const { return c_[0]; }
    const SRational& B() const { return c_[1]; }
    const SRational& C() const { return c_[2]; }
    const SRational& D() const { return c_[3]; }
    const SRational& E() const { return c_[4]; }
    const SRational& F() const { return c_[5]; }
    const std::array<SRational, 6>& coefficients() const { return c_; }

    SRational eval(const SRational& x, const SRational& y) const {
        return A() * x * x + B() * x * y + C() * y * y + D() * x + E() * y + F();
    }
    bool contains(const ConicPoint& p) const { return eval(p.x, p.y).is_zero(); }

    // Symmetric matrix of the projective closure.
    RatMatrix matrix() const {
        const SRational h(Integer(1), Integer(2));
        return {{A(), h * B(), h * D()}, {h * B(), C(), h * E()}, {h * D(), h * E(), F()}};
    }
    SRational determinant() const { return sintpts::determinant(matrix()); }
    // Discriminant of the leading binary form A x^2 + B xy + C y^2.
    SRational leading_discriminant() const { return B() * B() - SRational(4) * A() * C(); }

    // The same zero set with coprime integer coefficients.
    std::array<Integer, 6> integral_coefficients() const {
        Integer l = 1, g = 0;
        for (const SRational& a : c_) l = int_lcm(l, a.den());
        std::array<Integer, 6> r;
        for (std::size_t i = 0; i < 6; ++i) {
            r[i] = c_[i].num() * (l / c_[i].den());
            g = int_gcd(g, r[i]);
        }
        for (Integer& v : r) v /= g;
        return r;
    }

    std::string str() const {
        static const char* names[] = {"x^2", "xy", "y^2", "x", "y", ""};
        std::string s;
        for (std::size_t i = 0; i < 6; ++i) {
            if (c_[i].is_zero()) continue;
            std::string a = c_[i].str();
            const bool neg = a[0] == '-';
            if (neg) a = a.substr(1);
            s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            if (a != "1" || i == 5) s += a;
            if (i < 5) s += (a != "1" ? "*" : "") + std::string(names[i]);
        }
        return (s.empty() ? "0" : s) + " = 0";
    }

  private:
    std::array<SRational, 6> c_;
};

// Boundary of the affine conic inside its projective closure.
class BoundaryDivisor {
  public:
    enum class Kind { SectionPoint, BisectionQuadratic };

    // The points at infinity of the conic: a bisection cut by the leading form, or a single
    // point when the leading form is a square.
    static BoundaryDivisor at_infinity(const AffineConic& c) {
        BoundaryDivisor d;
        d.q_ = {c.A(), c.B(), c.C()};
        if (c.leading_discriminant().is_zero()) {
            d.kind_ = Kind::SectionPoint;
            // direction [x:y] of the double root
            if (!c.A().is_zero())
                d.point_ = {-c.B() / (SRational(2) * c.A()), SRational(1)};
            else
                d.point_ = {SRational(1), SRational(0)};
        } else {
            d.kind_ = Kind::BisectionQuadratic;
        }
        return d;
    }
    // A designated binary quadratic a s^2 + b st + c t^2.
    static BoundaryDivisor bisection(SRational a, SRational b, SRational c) {
        BoundaryDivisor d;
        d.kind_ = Kind::BisectionQuadratic;
        d.q_ = {std::move(a), std::move(b), std::move(c)};
        if (d.delta().is_zero()) throw Error("degenerate boundary: bisection quadratic is not squarefree");
        return d;
    }

    Kind kind() const { return kind_; }
    const std::array<SRational, 3>& quadratic() const { return q_; }
    const std::array<SRational, 2>& point() const { return point_; }
    SRational delta() const { return q_[1] * q_[1] - SRational(4) * q_[0] * q_[2]; }

  private:
    Kind kind_ = Kind::BisectionQuadratic;
    std::array<SRational, 3> q_;
    std::array<SRational, 2> point_;
};

struct AdditiveForm {
    friend bool operator==(const AdditiveForm&, const AdditiveForm&) { return true; }
};

using FormClass = std::variant<AdditiveForm, TorusForm>;

inline std::string form_str(const FormClass& f) {
    if (std::holds_alternative<AdditiveForm>(f)) return "additive";
    return std::get<TorusForm>(f).str();
}

inline FormClass classify_form(const AffineConic& /*conic*/, const BoundaryDivisor& D) {
    if (D.kind() == BoundaryDivisor::Kind::SectionPoint) return AdditiveForm{};
    const SRational delta = D.delta();
    if (delta.is_zero()) throw Error("degenerate boundary: discriminant 0");
    return TorusForm::from_discriminant(delta);
}

// ---------------------------------------------------------------------------
// Section case

// All x in O_S with max(|numerator|, denominator) <= B, ordered by that height and then by value.
inline std::vector<SRational> s_integers_of_height(const PlaceSet& S, const Integer& B) {
    if (sgn(B) < 0) throw Error("height bound must be nonnegative");
    std::vector<Integer> dens{1};
    for (const Integer& p : S.primes()) {
        const std::size_t n = dens.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (Integer d = dens[i] * p; d <= B; d *= p) dens.push_back(d);
        }
    }
    std::sort(dens.begin(), dens.end());
    std::vector<std::pair<Integer, SRational>> items;
    items.emplace_back(0, SRational(0));
    for (const Integer& d : dens) {
        for (Integer a = 1; a <= B; ++a) {
            if (int_gcd(a, d) != 1) continue;
            const Integer h = a > d ? a : d;
            items.emplace_back(h, SRational(a, d));
            items.emplace_back(h, SRational(-a, d));
        }
    }
    std::sort(items.begin(), items.end(), [](const auto& l, const auto& r) {
        if (l.first != r.first) return l.first < r.first;
        return l.second < r.second;
    });
    std::vector<SRational> out;
    for (auto& [h, v] : items) out.push_back(std::move(v));
    return out;
}

// Polynomial parametrisation z -> (x(z), y(z)) of a G_a-torsor; the identity model is (z, 0).
struct LineModel {
    RatPolynomial x = RatPolynomial::x();
    RatPolynomial y;

    ConicPoint at(const SRational& z) const { return {x.eval<SRational>(z), y.eval<SRational>(z)}; }
};

struct SectionResult {
    std::vector<SRational> parameters;
    std::vector<ConicPoint> points;
};

inline SectionResult generate_section_case(const LineModel& line, const PlaceSet& S, const Integer& B) {
    for (const RatPolynomial* p : {&line.x, &line.y}) {
        for (const SRational& c : p->coeffs()) {
            if (!is_s_integer(c, S)) throw Error("line model has coefficient " + c.str() + " outside O_S");
        }
    }
    SectionResult r;
    r.parameters = s_integers_of_height(S, B);
    for (const SRational& z : r.parameters) r.points.push_back(line.at(z));
    return r;
}

// ---------------------------------------------------------------------------
// Bisection case

// Minimal t, u > 0 with t^2 - delta u^2 = 4, for a nonsquare discriminant delta > 0.
inline std::pair<Integer, Integer> fundamental_norm_one(const Integer& delta) {
    if (sgn(delta) <= 0 || is_perfect_square(delta)) throw Error("fundamental_norm_one: need positive non-square");
    const Integer r4 = mod_floor(delta, 4);
    if (r4 == 0) {
        const PellSolution s = pell_fundamental(delta / 4);
        return {2 * s.u, s.v};
    }
    if (r4 != 1) throw Error("fundamental_norm_one: " + delta.get_str() + " is not a discriminant");
    const PellSolution s = pell_fundamental(delta);
    if (mod_floor(delta, 8) == 5) {
        // A unit with odd t cubes to s: t^3 - 3t = 2u_s.
        const Integer target = 2 * s.u;
        Integer t;
        mpz_root(t.get_mpz_t(), target.get_mpz_t(), 3);
        for (Integer c = t - 2; c <= t + 2; ++c) {
            if (sgn(c) > 0 && c * c * c - 3 * c == target) {
                Integer u;
                const Integer q = c * c - 4;
                if (mpz_divisible_p(q.get_mpz_t(), delta.get_mpz_t()) != 0 && is_perfect_square(q / delta, &u) &&
                    sgn(u) > 0)
                    return {c, u};
            }
        }
    }
    return {2 * s.u, 2 * s.v};
}

using Matrix2 = std::array<std::array<SRational, 2>, 2>;

inline Matrix2 mat2_mul(const Matrix2& a, const Matrix2& b) {
    Matrix2 c;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    }
    return c;
}

inline Matrix2 mat2_identity() { return {{{SRational(1), SRational(0)}, {SRational(0), SRational(1)}}}; }

inline std::array<SRational, 2> mat2_apply(const Matrix2& m, const std::array<SRational, 2>& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

inline std::string mat2_str(const Matrix2& m) {
    return "[[" + m[0][0].str() + "," + m[0][1].str() + "],[" + m[1][0].str() + "," + m[1][1].str() + "]]";
}

// The proper automorph of a x^2 + b xy + c y^2 attached to (t + u sqrt(disc)) / 2 of norm 1.
inline Matrix2 automorph(const Integer& a, const Integer& b, const Integer& c, const SRational& t, const SRational& u) {
    const SRational h(Integer(1), Integer(2));
    return {{{h * (t - SRational(b) * u), -SRational(c) * u}, {SRational(a) * u, h * (t + SRational(b) * u)}}};
}

struct OrbitGenerator {
    std::string origin;  // "inf" or the split prime it comes from
    Matrix2 matrix;      // acts on p - center
    std::size_t period;  // power of the primitive automorph that preserves S-integrality
};

struct OrbitResult {
    std::vector<ConicPoint> points;
    TorusForm form = TorusForm::split();
    std::size_t rank = 0;
    std::vector<OrbitGenerator> generators;
    ConicPoint center;
};

struct OrbitLimits {
    std::size_t congruence_cap = 20000000;  // modular iterations when searching for the period
    std::size_t exact_period_cap = 2000;    // exact iterations when entries are not S-integral
    unsigned norm_exponent_cap = 12;        // largest j tried for N(alpha) = +-p^j
    unsigned long search_u_cap = 100000;    // largest u tried in that search
};

namespace detail {

inline bool matrix_s_integral(const Matrix2& m, const PlaceSet& S) {
    for (const auto& row : m) {
        for (const SRational& v : row) {
            if (!is_s_integer(v, S)) return false;
        }
    }
    return true;
}

// Smallest k >= 1 with M^k in GL_2(O_S) and (M^k - I) x0 in O_S^2.
inline std::size_t congruence_period(const Matrix2& M, const std::array<SRational, 2>& x0, const PlaceSet& S,
                                     const OrbitLimits& lim) {
    const Integer m = s_free_part(int_lcm(x0[0].den(), x0[1].den()), S);
    if (matrix_s_integral(M, S)) {
        if (m == 1) return 1;
        auto reduce = [&](const SRational& q) {
            const auto inv = mod_inverse(mod_floor(q.den(), m), m);
            if (!inv) throw Error("internal: denominator not invertible modulo the center denominator");
            return mod_floor(q.num() * *inv, m);
        };
        const Integer m00 = reduce(M[0][0]), m01 = reduce(M[0][1]), m10 = reduce(M[1][0]), m11 = reduce(M[1][1]);
        const Integer c0 = reduce(x0[0] * SRational(m)), c1 = reduce(x0[1] * SRational(m));
        Integer v0 = c0, v1 = c1;
        for (std::size_t k = 1; k <= lim.congruence_cap; ++k) {
            const Integer n0 = mod_floor(m00 * v0 + m01 * v1, m);
            const Integer n1 = mod_floor(m10 * v0 + m11 * v1, m);
            v0 = n0;
            v1 = n1;
            if (v0 == c0 && v1 == c1) return k;
        }
        throw Error("congruence period exceeds " + std::to_string(lim.congruence_cap));
    }
    Matrix2 P = M;
    for (std::size_t k = 1; k <= lim.exact_period_cap; ++k) {
        if (matrix_s_integral(P, S)) {
            const auto moved = mat2_apply(P, x0);
            if (is_s_integer(moved[0] - x0[0], S) && is_s_integer(moved[1] - x0[1], S)) return k;
        }
        P = mat2_mul(P, M);
    }
    throw Error("no S-integral power of the automorph within " + std::to_string(lim.exact_period_cap) + " steps");
}

// An element of norm +-p^j in the order of discriminant delta, giving a p-unit of infinite
// order alpha/conj(alpha); returns (T, U) of that unit written as (T + U sqrt(delta))/2.
inline std::optional<std::pair<SRational, SRational>> split_prime_unit(const Integer& delta, const Integer& p,
                                                                       const OrbitLimits& lim) {
    Integer pj = 1;
    for (unsigned j = 1; j <= lim.norm_exponent_cap; ++j) {
        pj *= p;
        for (unsigned long uu = 0; uu <= lim.search_u_cap; ++uu) {
            const Integer u(uu);
            const Integer du2 = delta * u * u;
            if (sgn(delta) < 0 && du2 + 4 * pj < 0) break;
            for (int sign : {1, -1}) {
                const Integer t2 = du2 + sign * 4 * pj;
                Integer t;
                if (!is_perfect_square(t2, &t)) continue;
                const Integer n = (t * t - du2) / 4;
                const SRational T(t * t + du2, 2 * n), U(t * u, n);
                if (ord_p(T.den(), p) > 0 || ord_p(U.den(), p) > 0) return std::make_pair(T, U);
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline OrbitResult generate_bisection_case(const AffineConic& conic, const BoundaryDivisor& D, const ConicPoint& seed,
                                           const PlaceSet& S, std::size_t n, const OrbitLimits& lim = {}) {
    if (D.kind() != BoundaryDivisor::Kind::BisectionQuadratic) throw Error("boundary is not a bisection");
    // The orbit action preserves the leading form, so the boundary must be the points at infinity.
    {
        const auto& q = D.quadratic();
        const std::array<SRational, 3> lead{conic.A(), conic.B(), conic.C()};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (q[i] * lead[j] != q[j] * lead[i])
                    throw Error("boundary bisection must be the conic's points at infinity");
            }
        }
    }
    if (!conic.contains(seed)) throw Error("seed " + seed.str() + " is not on " + conic.str());
    if (!is_s_integer(seed.x, S) || !is_s_integer(seed.y, S)) throw Error("seed " + seed.str() + " is not S-integral");

    OrbitResult res;
    res.form = std::get<TorusForm>(classify_form(conic, D));
    res.rank = torus_rank(res.form, S);
    if (res.rank == 0) throw Error("rank-zero torus: no orbit");

    const auto ic = conic.integral_coefficients();
    const Integer g = int_gcd(int_gcd(ic[0], ic[1]), ic[2]);
    const Integer a = ic[0] / g, b = ic[1] / g, c = ic[2] / g;
    const Integer delta = b * b - 4 * a * c;

    // Center: gradient of the conic vanishes.
    {
        const SRational A2 = SRational(2 * ic[0]), B1 = SRational(ic[1]), C2 = SRational(2 * ic[2]);
        const SRational det = A2 * C2 - B1 * B1;
        res.center.x = (SRational(-ic[3]) * C2 + B1 * SRational(ic[4])) / det;
        res.center.y = (A2 * SRational(-ic[4]) + B1 * SRational(ic[3])) / det;
    }
    const std::array<SRational, 2> x0{res.center.x, res.center.y};

    std::vector<std::pair<std::string, Matrix2>> primitive;
    if (res.form.is_split()) {
        Integer r;
        is_perfect_square(delta, &r);
        RatMatrix L;
        if (sgn(a) != 0) {
            const SRational rho1(-b + r, 2 * a), rho2(-b - r, 2 * a);
            L = {{SRational(1), -rho1}, {SRational(1), -rho2}};
        } else {
            L = {{SRational(b), SRational(c)}, {SRational(0), SRational(1)}};
        }
        const RatMatrix Li = inverse(L);
        for (const Integer& p : S.primes()) {
            const RatMatrix diag{{SRational(p), SRational(0)}, {SRational(0), SRational(Integer(1), p)}};
            const RatMatrix M = mat_mul(mat_mul(Li, diag), L);
            primitive.emplace_back(p.get_str(), Matrix2{{{M[0][0], M[0][1]}, {M[1][0], M[1][1]}}});
        }
    } else {
        if (sgn(delta) > 0) {
            const auto [t, u] = fundamental_norm_one(delta);
            primitive.emplace_back("inf", automorph(a, b, c, SRational(t), SRational(u)));
        }
        for (const Integer& p : S.primes()) {
            if (!splits_completely(SRational(delta), Place::finite(p))) continue;
            if (auto tu = detail::split_prime_unit(delta, p, lim))
                primitive.emplace_back(p.get_str(), automorph(a, b, c, tu->first, tu->second));
        }
    }
    if (primitive.empty()) throw Error("no unit of infinite order found within the search limits");

    for (const auto& [origin, M] : primitive) {
        const std::size_t k = detail::congruence_period(M, x0, S, lim);
        Matrix2 P = mat2_identity();
        for (std::size_t i = 0; i < k; ++i) P = mat2_mul(P, M);
        res.generators.push_back(OrbitGenerator{origin, P, k});
    }

    // Exponent vectors in N^r by sup-norm, then lexicographically.
    const std::size_t r = res.generators.size();
    std::vector<std::vector<Matrix2>> powers(r, std::vector<Matrix2>{mat2_identity()});
    auto power = [&](std::size_t i, std::size_t e) -> const Matrix2& {
        while (powers[i].size() <= e) powers[i].push_back(mat2_mul(powers[i].back(), res.generators[i].matrix));
        return powers[i][e];
    };
    const std::array<SRational, 2> rel{seed.x - x0[0], seed.y - x0[1]};
    std::set<ConicPoint> seen;
    for (std::size_t level = 0; res.points.size() < n; ++level) {
        std::vector<std::size_t> e(r, 0);
        for (;;) {
            std::size_t mx = 0;
            for (std::size_t v : e) mx = std::max(mx, v);
            if (mx == level) {
                Matrix2 P = mat2_identity();
                for (std::size_t i = 0; i < r; ++i) P = mat2_mul(P, power(i, e[i]));
                const auto moved = mat2_apply(P, rel);
                const ConicPoint pt{x0[0] + moved[0], x0[1] + moved[1]};
                if (!conic.contains(pt) || !is_s_integer(pt.x, S) || !is_s_integer(pt.y, S))
                    throw Error("internal: orbit point " + pt.str() + " failed verification");
                if (!seen.insert(pt).second) throw Error("internal: orbit repeated the point " + pt.str());
                res.points.push_back(pt);
                if (res.points.size() == n) break;
            }
            std::size_t i = r;
            while (i > 0 && e[i - 1] == level) --i;
            if (i == 0) break;
            ++e[i - 1];
            for (std::size_t j = i; j < r; ++j) e[j] = 0;
        }
    }
    return res;
}

}  // namespace sintpts

#endif
