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

#ifndef SINTPTS_BUNDLE_ENGINE_HPP
#define SINTPTS_BUNDLE_ENGINE_HPP

#include "sintpts/arith/valuation.hpp"
#include "sintpts/conic_torsor.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace sintpts {

// A family of affine conics
//   A(t) x^2 + B(t) xy + C(t) y^2 + D(t) x + E(t) y + F(t) = 0
// whose boundary on each fiber is the pair of points at infinity, with a polynomial section
// t -> (x(t), y(t)).
struct ConicBundleModel {
    std::array<IntPolynomial, 6> fiber_conic;
    RatPolynomial section_x;
    RatPolynomial section_y;
    Place marked_place = Place::infinite();
    std::string marked_point_q = "t=inf";

    // B(t)^2 - 4 A(t) C(t)
    IntPolynomial boundary_discriminant() const {
        return fiber_conic[1] * fiber_conic[1] - Integer(4) * (fiber_conic[0] * fiber_conic[2]);
    }
    // Determinant of the projective closure, times 4.
    IntPolynomial determinant_polynomial() const {
        const auto& [A, B, C, D, E, F] = fiber_conic;
        const Integer four(4);
        return four * (A * C * F) + B * E * D - A * E * E - C * D * D - F * B * B;
    }
    ConicPoint section(const SRational& t) const { return {section_x.eval<SRational>(t), section_y.eval<SRational>(t)}; }

    void validate() const {
        if (boundary_discriminant().is_zero()) throw Error("model: boundary quadratic is a square for every t");
        if (determinant_polynomial().is_zero()) throw Error("model: every fiber conic is degenerate");
        RatPolynomial val;
        const RatPolynomial& x = section_x;
        const RatPolynomial& y = section_y;
        std::array<RatPolynomial, 6> c;
        for (int i = 0; i < 6; ++i) c[i] = to_rat(fiber_conic[i]);
        val = c[0] * x * x + c[1] * x * y + c[2] * y * y + c[3] * x + c[4] * y + c[5];
        if (!val.is_zero()) throw Error("model: the section does not lie on the fiber conics (residual " + val.str() + ")");
    }
};

struct FiberReport {
    SRational t;
    bool local_ok = false;
    std::size_t rank = 0;
    std::optional<ConicPoint> seed;
    std::vector<ConicPoint> points;
    // Coordinates in the total space, one vector per entry of points.
    std::vector<std::vector<SRational>> lifted;
    std::string form;
    std::string status;  // "ok", "skipped", "local-fail", "rank-zero", "no-unit"
    std::string reason;
};

inline std::tuple<AffineConic, BoundaryDivisor, ConicPoint> fiber_at(const ConicBundleModel& model, const SRational& t) {
    std::array<SRational, 6> c;
    for (int i = 0; i < 6; ++i) c[i] = model.fiber_conic[i].eval<SRational>(t);
    const SRational delta = c[1] * c[1] - SRational(4) * c[0] * c[2];
    if (delta.is_zero())
        throw Error("degenerate fiber at t=" + t.str() + ": boundary discriminant " + model.boundary_discriminant().str() +
                    " vanishes");
    if (model.determinant_polynomial().eval<SRational>(t).is_zero())
        throw Error("degenerate fiber at t=" + t.str() + ": conic determinant " + model.determinant_polynomial().str() +
                    " vanishes");
    AffineConic conic(c[0], c[1], c[2], c[3], c[4], c[5]);
    BoundaryDivisor D = BoundaryDivisor::at_infinity(conic);
    ConicPoint seed = model.section(t);
    if (!conic.contains(seed)) throw Error("internal: section point " + seed.str() + " is off the fiber at t=" + t.str());
    return {std::move(conic), std::move(D), std::move(seed)};
}

// Local solvability at v of the boundary roots, excluding the fibers where they are already rational.
inline bool boundary_local_condition(const SRational& delta, const Place& v) {
    if (delta.is_zero()) throw Error("boundary discriminant vanishes");
    if (is_rational_square(delta)) return false;
    return is_square_in_qv(delta, v);
}

inline bool fiber_local_condition(const ConicBundleModel& model, const SRational& t, const Place& v) {
    const auto [conic, D, seed] = fiber_at(model, t);
    return boundary_local_condition(D.delta(), v);
}

// Orbit generation on a single nondegenerate fiber.
inline FiberReport process_fiber(const SRational& t, const AffineConic& conic, const ConicPoint& seed, const PlaceSet& S,
                                 const Place& v, std::size_t n, const OrbitLimits& lim = {}) {
    FiberReport r;
    r.t = t;
    const BoundaryDivisor D = BoundaryDivisor::at_infinity(conic);
    if (D.kind() != BoundaryDivisor::Kind::BisectionQuadratic) {
        r.status = "skipped";
        r.reason = "boundary is a single point";
        return r;
    }
    const TorusForm form = TorusForm::from_discriminant(D.delta());
    r.form = form.str();
    r.rank = torus_rank(form, S);
    r.local_ok = boundary_local_condition(D.delta(), v);
    r.seed = seed;
    if (!r.local_ok) {
        r.status = "local-fail";
        r.reason = "discriminant " + D.delta().str() + (is_rational_square(D.delta()) ? " is a rational square" : " is not a square at " + v.str());
        return r;
    }
    if (r.rank == 0) {
        r.status = "rank-zero";
        r.reason = "torus " + r.form + " has rank 0 over O_S";
        return r;
    }
    if (!is_s_integer(seed.x, S) || !is_s_integer(seed.y, S)) {
        r.seed.reset();
        r.status = "skipped";
        r.reason = "section point " + seed.str() + " is not S-integral";
        return r;
    }
    try {
        r.points = generate_bisection_case(conic, D, seed, S, n, lim).points;
        r.status = "ok";
    } catch (const Error& e) {
        r.status = "no-unit";
        r.reason = e.what();
    }
    return r;
}

using FiberLifter = std::function<std::vector<SRational>(const SRational& t, const ConicPoint& p)>;

// Deterministic parallel map: results land in input order whatever the thread count.
template <class In, class Fn>
auto ordered_parallel_map(const std::vector<In>& items, unsigned threads, Fn fn) -> std::vector<decltype(fn(items[0]))> {
    using Out = decltype(fn(items[0]));
    std::vector<std::optional<Out>> slots(items.size());
    std::vector<std::exception_ptr> errors(items.size());
    auto work = [&](std::size_t start, std::size_t step) {
        for (std::size_t i = start; i < items.size(); i += step) {
            try {
                slots[i].emplace(fn(items[i]));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(items.size(), 1))));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work, k, threads);
        for (auto& th : pool) th.join();
    }
    std::vector<Out> out;
    out.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

struct PelldenseOptions {
    unsigned threads = 1;
    OrbitLimits limits;
    FiberLifter lift;  // defaults to (x, y, t)
};

inline std::vector<FiberReport> pelldense_generate(const ConicBundleModel& model, const PlaceSet& S, const Integer& B,
                                                   std::size_t per_fiber, const PelldenseOptions& opt = {}) {
    model.validate();
    if (!S.contains(model.marked_place)) throw Error("marked place " + model.marked_place.str() + " is not in S");
    for (const RatPolynomial* p : {&model.section_x, &model.section_y}) {
        for (const SRational& c : p->coeffs()) {
            if (!is_s_integer(c, S)) throw Error("section has coefficient " + c.str() + " outside O_S");
        }
    }
    const std::vector<SRational> ts = generate_section_case(LineModel{}, S, B).parameters;
    return ordered_parallel_map(ts, opt.threads, [&](const SRational& t) {
        FiberReport r;
        try {
            const auto [conic, D, seed] = fiber_at(model, t);
            r = process_fiber(t, conic, seed, S, model.marked_place, per_fiber, opt.limits);
        } catch (const Error& e) {
            r.t = t;
            r.status = "skipped";
            r.reason = e.what();
            return r;
        }
        for (const ConicPoint& p : r.points) r.lifted.push_back(opt.lift ? opt.lift(t, p) : std::vector<SRational>{p.x, p.y, t});
        return r;
    });
}

inline std::size_t count_points(const std::vector<FiberReport>& reports) {
    std::size_t n = 0;
    for (const auto& r : reports) n += r.points.size();
    return n;
}

// ---------------------------------------------------------------------------
// Divisors of type (2,2) on P^1 x P^1

// d[i][j] is the coefficient of x0^i x1^(2-i) y0^j y1^(2-j).
struct BidegreeTwoForm {
    std::array<std::array<Integer, 3>, 3> d{};

    Integer eval(const Integer& x0, const Integer& x1, const Integer& y0, const Integer& y1) const {
        Integer s = 0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) s += d[i][j] * int_pow(x0, i) * int_pow(x1, 2 - i) * int_pow(y0, j) * int_pow(y1, 2 - j);
        }
        return s;
    }
    SRational eval(const SRational& x, const SRational& y) const {
        SRational s = 0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) s += SRational(d[i][j]) * x.pow(i) * y.pow(j);
        }
        return s;
    }
    // Coefficient of x0^i x1^(2-i) as a polynomial in the affine y-coordinate.
    IntPolynomial x_coefficient(int i) const { return IntPolynomial(std::vector<Integer>{d[i][0], d[i][1], d[i][2]}); }
    // Restriction to the ruling x = [0:1] as a binary quadratic in y, coefficients of y0^j y1^(2-j).
    std::array<Integer, 3> at_x_zero() const { return d[0]; }

    std::string str() const {
        std::string s;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (sgn(d[i][j]) == 0) continue;
                if (!s.empty()) s += " + ";
                s += d[i][j].get_str() + "*x^" + std::to_string(i) + "*y^" + std::to_string(j);
            }
        }
        return s.empty() ? "0" : s;
    }
};

namespace detail {

using IntMatrix2 = std::array<std::array<Integer, 2>, 2>;

// Coefficients of q(x0, x1) = q[0] x1^2 + q[1] x0 x1 + q[2] x0^2 after (x0, x1) <- M (X0, X1).
inline std::array<Integer, 3> substitute_binary_quadratic(const std::array<Integer, 3>& q, const IntMatrix2& M) {
    const IntPolynomial x0(std::vector<Integer>{M[0][1], M[0][0]});
    const IntPolynomial x1(std::vector<Integer>{M[1][1], M[1][0]});
    const IntPolynomial r = q[0] * (x1 * x1) + q[1] * (x0 * x1) + q[2] * (x0 * x0);
    return {r.coeff(0), r.coeff(1), r.coeff(2)};
}

// A matrix in GL_2(Z) whose column `col` is the primitive vector (a, b).
inline IntMatrix2 complete_column(const Integer& a, const Integer& b, int col) {
    Integer u, w;
    const Integer g = ext_gcd(a, b, u, w);  // a u + b w = g
    if (g != 1 && g != -1) throw Error("vector is not primitive");
    u *= g;
    w *= g;
    if (col == 1) {
        // [[m00, a], [m10, b]] with m00 b - a m10 = 1
        if (a == 0 && b == 1) return {{{1, 0}, {0, 1}}};
        return {{{w, a}, {-u, b}}};
    }
    if (a == 1 && b == 0) return {{{1, 0}, {0, 1}}};
    return {{{a, -w}, {b, u}}};
}

}  // namespace detail

inline BidegreeTwoForm transform(const BidegreeTwoForm& D, const detail::IntMatrix2& Mx, const detail::IntMatrix2& My) {
    BidegreeTwoForm a, b;
    for (int i = 0; i < 3; ++i) {
        const auto r = detail::substitute_binary_quadratic(D.d[i], My);
        for (int j = 0; j < 3; ++j) a.d[i][j] = r[j];
    }
    for (int j = 0; j < 3; ++j) {
        const auto r = detail::substitute_binary_quadratic({a.d[0][j], a.d[1][j], a.d[2][j]}, Mx);
        for (int i = 0; i < 3; ++i) b.d[i][j] = r[i];
    }
    return b;
}

// The binary quartic in y whose roots are the branch points of D -> P^1_y; D is smooth iff it is squarefree.
inline bool is_nonsingular(const BidegreeTwoForm& D) {
    const IntPolynomial a = D.x_coefficient(2), b = D.x_coefficient(1), c = D.x_coefficient(0);
    const IntPolynomial disc = b * b - Integer(4) * (a * c);
    if (disc.is_zero() || disc.degree() < 3) return false;
    return is_squarefree(to_rat(disc));
}

struct P1xP1Setup {
    ConicBundleModel model;
    PlaceSet S;
    Integer kappa;
    detail::IntMatrix2 Mx, My;
    BidegreeTwoForm normalized;
};

// Normalizes so that L = {x = [0:1]} and the tangency point is y = [1:0]; fibers are y = [t:1].
inline P1xP1Setup p1xp1_setup(const BidegreeTwoForm& D, const std::array<Integer, 2>& ruling, const PlaceSet& S,
                              const Place& v) {
    if (!is_nonsingular(D)) throw Error("D is singular: branch quartic " + D.str() + " is not squarefree");
    if (int_gcd(ruling[0], ruling[1]) != 1) throw InputError("ruling [x0:x1] must be primitive");
    P1xP1Setup s;
    s.Mx = detail::complete_column(ruling[0], ruling[1], 1);
    const BidegreeTwoForm Dx = transform(D, s.Mx, {{{1, 0}, {0, 1}}});
    const auto q = Dx.at_x_zero();  // q[0] y1^2 + q[1] y0 y1 + q[2] y0^2
    if ((sgn(q[0]) == 0 && sgn(q[1]) == 0 && sgn(q[2]) == 0) || q[1] * q[1] - 4 * q[0] * q[2] != 0)
        throw Error("L not tangent at q");
    // double root [r0:r1] of q
    Integer r0, r1;
    if (sgn(q[2]) != 0) {
        r0 = -q[1];
        r1 = 2 * q[2];
    } else {
        r0 = 1;
        r1 = 0;
    }
    const Integer g = int_gcd(r0, r1);
    r0 /= g;
    r1 /= g;
    s.My = detail::complete_column(r0, r1, 0);
    s.normalized = transform(Dx, {{{1, 0}, {0, 1}}}, s.My);
    const auto& n = s.normalized.d;
    if (sgn(n[0][1]) != 0 || sgn(n[0][2]) != 0 || sgn(n[0][0]) == 0) throw Error("internal: tangency normalization failed");
    s.kappa = n[0][0];
    s.S = S;
    for (const auto& [p, e] : factorize(int_abs(s.kappa))) s.S.add(p);

    ConicBundleModel& m = s.model;
    m.fiber_conic = {s.normalized.x_coefficient(2), s.normalized.x_coefficient(1), IntPolynomial::constant(s.kappa),
                     IntPolynomial{}, IntPolynomial{}, IntPolynomial::constant(-s.kappa)};
    m.section_x = RatPolynomial{};
    m.section_y = RatPolynomial::constant(SRational(1));
    m.marked_place = v;
    m.marked_point_q = "y=inf";
    return s;
}

// Each emitted point is lifted to ([x0:x1], [y0:y1]) in the original coordinates.
inline std::vector<FiberReport> p1xp1_generate(const BidegreeTwoForm& D, const std::array<Integer, 2>& ruling,
                                               const PlaceSet& S, const Place& v, const Integer& B, std::size_t n,
                                               unsigned threads = 1) {
    const P1xP1Setup s = p1xp1_setup(D, ruling, S, v);
    PelldenseOptions opt;
    opt.threads = threads;
    opt.lift = [&s](const SRational& t, const ConicPoint& p) {
        const auto& Mx = s.Mx;
        const auto& My = s.My;
        auto M = [](const Integer& a) { return SRational(a); };
        return std::vector<SRational>{M(Mx[0][0]) * p.x + M(Mx[0][1]) * p.y, M(Mx[1][0]) * p.x + M(Mx[1][1]) * p.y,
                                      M(My[0][0]) * t + M(My[0][1]), M(My[1][0]) * t + M(My[1][1])};
    };
    return pelldense_generate(s.model, s.S, B, n, opt);
}

// D at a lifted point, as a bihomogeneous form evaluated on rational coordinates.
inline SRational eval_bihomogeneous(const BidegreeTwoForm& D, const std::vector<SRational>& p) {
    SRational s = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            s += SRational(D.d[i][j]) * p[0].pow(i) * p[1].pow(2 - i) * p[2].pow(j) * p[3].pow(2 - j);
    }
    return s;
}

}  // namespace sintpts

#endif
