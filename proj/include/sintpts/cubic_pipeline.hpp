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

#ifndef SINTPTS_CUBIC_PIPELINE_HPP
#define SINTPTS_CUBIC_PIPELINE_HPP

#include "sintpts/arith/groebner.hpp"
#include "sintpts/arith/linalg.hpp"
#include "sintpts/arith/mpoly.hpp"
#include "sintpts/bundle_engine.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sintpts {

// Raised when a cubic does not meet the hypotheses needed for generation.
class ConditionFailure : public Error {
  public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Linear factors of homogeneous polynomials over Q

namespace cubic_detail {

inline MPoly restrict_to_line(const MPoly& h, std::size_t first, const std::vector<SRational>& p) {
    const std::size_t n = h.nvars();
    std::vector<MPoly> img(n, MPoly::constant(1, SRational(0)));
    img[first] = MPoly::var(1, 0);
    for (std::size_t j = first + 1; j < n; ++j) img[j] = MPoly::constant(1, p[j - first - 1]);
    return h.substitute(img);
}

inline void collect_linear_factors(MPoly h, std::size_t first, std::vector<std::pair<MPoly, int>>& out) {
    const std::size_t n = h.nvars();
    if (h.is_zero() || h.total_degree() <= 0) return;
    if (first + 1 == n) {
        out.emplace_back(MPoly::var(n, first), h.total_degree());
        return;
    }
    const std::size_t m = n - 1 - first;
    if (h.degree_in(first) > 0) {
        // Specialize the trailing variables at independent points; each factor x_first - b.x
        // contributes the root b.p on the line through p.
        std::vector<std::vector<SRational>> pts;
        std::vector<std::vector<SRational>> roots;
        std::vector<std::vector<SRational>> candidates;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<SRational> e(m, SRational(0));
            e[i] = 1;
            candidates.push_back(e);
        }
        for (int k = 1; k <= 3; ++k) {
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    if (i == j) continue;
                    std::vector<SRational> e(m, SRational(0));
                    e[i] = 1;
                    e[j] = k;
                    candidates.push_back(e);
                }
            }
        }
        for (const auto& c : candidates) {
            if (pts.size() == m) break;
            const RatPolynomial u = restrict_to_line(h, first, c).to_univariate(0);
            if (u.is_zero()) continue;
            RatMatrix M;
            for (const auto& q : pts) M.push_back(q);
            M.push_back(c);
            if (rank(M) < M.size()) continue;
            pts.push_back(c);
            roots.push_back(rational_roots(u));
        }
        bool possible = pts.size() == m;
        for (const auto& r : roots) possible = possible && !r.empty();
        if (possible) {
            const RatMatrix Pinv = inverse(pts);
            std::vector<std::size_t> idx(m, 0);
            for (;;) {
                RatVector r(m);
                for (std::size_t i = 0; i < m; ++i) r[i] = roots[i][idx[i]];
                const RatVector b = mat_vec(Pinv, r);
                MPoly l = MPoly::var(n, first);
                for (std::size_t j = 0; j < m; ++j) l -= b[j] * MPoly::var(n, first + 1 + j);
                int mult = 0;
                while (h.degree_in(first) > 0) {
                    auto q = divide_exact(h, l);
                    if (!q) break;
                    h = *q;
                    ++mult;
                }
                if (mult > 0) out.emplace_back(l.primitive(), mult);
                std::size_t i = 0;
                while (i < m && ++idx[i] == roots[i].size()) idx[i++] = 0;
                if (i == m) break;
            }
        }
    }
    if (h.total_degree() <= 0) return;
    if (h.degree_in(first) == 0) {
        collect_linear_factors(h, first + 1, out);
        return;
    }
    // Factors free of x_first divide the leading coefficient in x_first.
    const MPoly top = h.coefficients_in(first).back();
    std::vector<std::pair<MPoly, int>> cand;
    collect_linear_factors(top, first + 1, cand);
    for (const auto& [l, mmax] : cand) {
        int mult = 0;
        for (;;) {
            auto q = divide_exact(h, l);
            if (!q) break;
            h = *q;
            ++mult;
        }
        if (mult > 0) out.emplace_back(l.primitive(), mult);
    }
}

}  // namespace cubic_detail

// Rational linear factors of a homogeneous polynomial, with multiplicities.
inline std::vector<std::pair<MPoly, int>> linear_factors(const MPoly& f) {
    if (!f.is_homogeneous()) throw Error("linear_factors: polynomial is not homogeneous");
    std::vector<std::pair<MPoly, int>> out;
    cubic_detail::collect_linear_factors(f, 0, out);
    return out;
}

inline SRational hessian_at(const MPoly& g, const std::vector<SRational>& p) {
    const std::size_t n = g.nvars();
    RatMatrix H(n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        const MPoly gi = g.derivative(i);
        for (std::size_t j = 0; j < n; ++j) H[i][j] = gi.derivative(j).eval(p);
    }
    return determinant(H);
}

// Classical criterion for a nonsingular point of a plane cubic.
inline bool is_flex(const MPoly& g, const std::vector<SRational>& p) {
    if (!g.eval(p).is_zero()) throw Error("is_flex: point is not on the curve");
    return hessian_at(g, p).is_zero();
}

// ---------------------------------------------------------------------------
// Input data and normalization

struct RawCubic {
    std::array<SRational, 20> coefficients;  // lex order w^3, w^2x, ..., z^3
    std::array<SRational, 4> boundary;
    std::array<std::array<SRational, 4>, 2> line;
    PlaceSet S;
    Place v = Place::infinite();
    std::vector<std::array<SRational, 4>> seeds;
};

inline MPoly cubic_from_coefficients(const std::array<SRational, 20>& c) {
    const auto monos = monomials_of_degree(4, 3);
    MPoly F(4);
    for (std::size_t i = 0; i < 20; ++i) F.add_term(monos[i], c[i]);
    return F;
}

// The coefficients of the shape zw^2 + ax^3 + c1 wxz + ... + yz l(w,x,y,z), with the zw^2
// coefficient kept as e instead of being scaled away.
struct NormalFormCoefficients {
    SRational e, a, b, c, c1, c2, c4, c5, c6;
    std::array<SRational, 4> ell;
};

struct CubicSurfaceModel {
    MPoly F;           // normalized coordinates (W, X, Y, Z): boundary Y = 0, line X = Z = 0, q1 = [1:0:0:0]
    MPoly F_original;  // original coordinates (w, x, y, z)
    RatMatrix T;       // new = T * old
    RatMatrix T_inverse;
    std::array<Integer, 4> boundary;
    PlaceSet S;
    PlaceSet S_input;
    Place v = Place::infinite();
    Integer index = 1;  // lattice index of the coordinate change
    bool q1_singular = false;
    std::vector<std::array<SRational, 4>> seeds;

    std::vector<SRational> to_original(const std::vector<SRational>& p) const { return mat_vec(T_inverse, p); }
    std::vector<SRational> to_normalized(const std::vector<SRational>& p) const { return mat_vec(T, p); }

    std::optional<NormalFormCoefficients> normal_form_coefficients() const {
        auto co = [&](int w, int x, int y, int z) { return F.coeff(Monomial{w, x, y, z}); };
        if (!co(2, 1, 0, 0).is_zero() || !co(1, 2, 0, 0).is_zero() || !co(1, 1, 1, 0).is_zero()) return std::nullopt;
        NormalFormCoefficients p;
        p.e = co(2, 0, 0, 1);
        p.a = co(0, 3, 0, 0);
        p.c1 = co(1, 1, 0, 1);
        p.c2 = co(1, 0, 0, 2);
        p.c4 = co(0, 2, 0, 1);
        p.c5 = co(0, 1, 0, 2);
        p.c6 = co(0, 0, 0, 3);
        p.c = co(0, 2, 1, 0);
        p.b = co(0, 1, 2, 0);
        p.ell = {co(1, 0, 1, 1), co(0, 1, 1, 1), co(0, 0, 2, 1), co(0, 0, 1, 2)};
        return p;
    }
};

namespace cubic_detail {

inline std::array<Integer, 4> primitive_vector(const std::array<SRational, 4>& v) {
    Integer l = 1, g = 0;
    for (const auto& a : v) l = int_lcm(l, a.den());
    std::array<Integer, 4> r;
    for (std::size_t i = 0; i < 4; ++i) {
        r[i] = v[i].num() * (l / v[i].den());
        g = int_gcd(g, r[i]);
    }
    if (g == 0) return r;
    for (auto& a : r) a /= g;
    return r;
}

inline std::array<Integer, 4> last_nonzero_positive(std::array<Integer, 4> v) {
    for (std::size_t i = 4; i-- > 0;) {
        if (sgn(v[i]) != 0) {
            if (sgn(v[i]) < 0) {
                for (auto& a : v) a = -a;
            }
            break;
        }
    }
    return v;
}

inline Integer dot(const std::array<Integer, 4>& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < 4; ++i) s += a[i] * b[i];
    return s;
}

// Vectors with entries in {-1, 0, 1}, fewest nonzero entries first, last nonzero entry +1.
inline std::vector<std::array<Integer, 4>> small_vectors() {
    std::vector<std::array<Integer, 4>> out;
    for (int nz = 1; nz <= 4; ++nz) {
        for (int code = 0; code < 81; ++code) {
            std::array<Integer, 4> v;
            int c = code, cnt = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                const int d = c % 3;
                c /= 3;
                v[i] = d == 2 ? -1 : d;
                if (d != 0) ++cnt;
            }
            if (cnt != nz) continue;
            if (last_nonzero_positive(v) != v) continue;
            out.push_back(v);
        }
    }
    return out;
}

inline RatMatrix rows_to_matrix(const std::array<std::array<Integer, 4>, 4>& rows) {
    RatMatrix m(4, RatVector(4));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) m[i][j] = SRational(rows[i][j]);
    }
    return m;
}

}  // namespace cubic_detail

inline CubicSurfaceModel normalize_to_paper_coordinates(const RawCubic& raw) {
    using namespace cubic_detail;
    CubicSurfaceModel M;
    M.F_original = cubic_from_coefficients(raw.coefficients).primitive();
    if (M.F_original.is_zero()) throw InputError("cubic form is zero");
    M.S_input = raw.S;
    M.S = raw.S;
    M.v = raw.v;
    M.seeds = raw.seeds;
    if (!M.S.contains(M.v)) throw InputError("place v=" + M.v.str() + " is not in S");

    const auto h = primitive_vector(raw.boundary);
    if (std::all_of(h.begin(), h.end(), [](const Integer& a) { return sgn(a) == 0; }))
        throw InputError("boundary hyperplane is zero");
    M.boundary = h;
    const auto l1 = primitive_vector(raw.line[0]), l2 = primitive_vector(raw.line[1]);
    IntMatrix Lrows{IntVector(l1.begin(), l1.end()), IntVector(l2.begin(), l2.end())};
    if (rank(to_rat(Lrows)) != 2) throw InputError("line equations are dependent");
    const IntMatrix pts = integer_kernel(Lrows, 4);  // two points spanning the line

    {
        std::vector<MPoly> img(4);
        for (std::size_t i = 0; i < 4; ++i)
            img[i] = SRational(pts[0][i]) * MPoly::var(2, 0) + SRational(pts[1][i]) * MPoly::var(2, 1);
        if (!M.F_original.substitute(img).is_zero()) throw Error("line is not on the surface");
    }
    const Integer h0 = dot(h, pts[0]), h1 = dot(h, pts[1]);
    if (sgn(h0) == 0 && sgn(h1) == 0) throw Error("line lies inside the boundary hyperplane");
    std::array<SRational, 4> q1;
    for (std::size_t i = 0; i < 4; ++i) q1[i] = SRational(h1 * pts[0][i] - h0 * pts[1][i]);
    const auto q1i = primitive_vector(q1);

    // Integer linear forms vanishing on the line.
    const IntMatrix Lam = integer_kernel(IntMatrix{pts[0], pts[1]}, 4);
    auto in_lambda = [&](const std::array<Integer, 4>& c) { return sgn(dot(c, pts[0])) == 0 && sgn(dot(c, pts[1])) == 0; };
    auto lambda_coords = [&](const std::array<Integer, 4>& c) {
        // solve c = a Lam[0] + b Lam[1]
        RatMatrix A(4, RatVector(2));
        for (std::size_t i = 0; i < 4; ++i) {
            A[i][0] = SRational(Lam[0][i]);
            A[i][1] = SRational(Lam[1][i]);
        }
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                const RatMatrix sub{{A[i][0], A[i][1]}, {A[j][0], A[j][1]}};
                const SRational d = determinant(sub);
                if (d.is_zero()) continue;
                const RatVector ab = mat_vec(inverse(sub), RatVector{SRational(c[i]), SRational(c[j])});
                return std::make_pair(ab[0], ab[1]);
            }
        }
        throw Error("internal: degenerate line lattice");
    };

    std::array<SRational, 4> grad;
    {
        std::vector<SRational> qq;
        for (const Integer& a : q1i) qq.emplace_back(a);
        for (std::size_t i = 0; i < 4; ++i) grad[i] = M.F_original.derivative(i).eval(qq);
    }
    std::array<Integer, 4> H = primitive_vector(grad);
    const bool grad_zero = std::all_of(H.begin(), H.end(), [](const Integer& a) { return sgn(a) == 0; });
    bool prop_h = false;
    if (!grad_zero) {
        prop_h = true;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) prop_h = prop_h && H[i] * h[j] == H[j] * h[i];
        }
    }
    if (grad_zero || prop_h) {
        M.q1_singular = true;
        H = {Lam[0][0], Lam[0][1], Lam[0][2], Lam[0][3]};
    }
    H = last_nonzero_positive(H);
    const auto [ha, hb] = lambda_coords(H);

    std::optional<std::array<Integer, 4>> X;
    for (const auto& c : small_vectors()) {
        if (!in_lambda(c)) continue;
        const auto [ca, cb] = lambda_coords(c);
        const SRational d = ha * cb - hb * ca;
        if (d == SRational(1) || d == SRational(-1)) {
            X = c;
            break;
        }
    }
    if (!X) {
        Integer u, w;
        const Integer g = ext_gcd(ha.num(), hb.num(), u, w);  // ha u + hb w = g = +-1
        // X = -w Lam0 + u Lam1 gives ha*u - hb*(-w) = 1 up to sign
        std::array<Integer, 4> c;
        for (std::size_t i = 0; i < 4; ++i) c[i] = g * (-w * Lam[0][i] + u * Lam[1][i]);
        X = last_nonzero_positive(c);
    }

    std::array<std::array<Integer, 4>, 4> rows{std::array<Integer, 4>{}, *X, h, H};
    bool found = false;
    for (const auto& c : small_vectors()) {
        rows[0] = c;
        const SRational d = determinant(rows_to_matrix(rows));
        if (d == SRational(1) || d == SRational(-1)) {
            found = true;
            break;
        }
    }
    if (!found) {
        const auto [index, comp] = unimodular_completion(
            IntMatrix{IntVector(X->begin(), X->end()), IntVector(h.begin(), h.end()), IntVector(H.begin(), H.end())}, 4);
        for (std::size_t i = 0; i < 4; ++i) rows[0][i] = comp[0][i];
        const SRational d = determinant(rows_to_matrix(rows));
        if (d.is_zero()) throw Error("internal: coordinate change is singular");
        M.index = int_abs(d.num());
        for (const auto& [p, e] : factorize(M.index)) M.S.add(p);
    }
    M.T = rows_to_matrix(rows);
    M.T_inverse = inverse(M.T);
    std::vector<MPoly> img(4, MPoly(4));
    for (std::size_t i = 0; i < 4; ++i) {
        MPoly s(4);
        for (std::size_t j = 0; j < 4; ++j) s += M.T_inverse[i][j] * MPoly::var(4, j);
        img[i] = s;
    }
    M.F = M.F_original.substitute(img).primitive();
    return M;
}

// ---------------------------------------------------------------------------
// Plane sections and the conic fibration

namespace cubic_detail {

inline std::vector<MPoly> point_images_plane(std::size_t nvars, std::size_t iw, std::size_t ix, std::size_t iz) {
    std::vector<MPoly> img(4, MPoly(nvars));
    img[0] = MPoly::var(nvars, iw);
    img[1] = MPoly::var(nvars, ix);
    img[2] = MPoly(nvars);
    img[3] = MPoly::var(nvars, iz);
    return img;
}

}  // namespace cubic_detail

// D1 as a ternary cubic in (W, X, Z).
inline MPoly boundary_cubic(const CubicSurfaceModel& m) { return m.F.substitute(cubic_detail::point_images_plane(3, 0, 1, 2)); }

// F restricted to the line X = Z = 0 differentiated by X and by Z: binary quadratics in (W, Y),
// returned dehomogenized at Y = 1.
inline std::pair<RatPolynomial, RatPolynomial> tangent_pencil_on_line(const CubicSurfaceModel& m) {
    std::vector<MPoly> img{MPoly::var(1, 0), MPoly(1), MPoly::constant(1, SRational(1)), MPoly(1)};
    return {m.F.derivative(1).substitute(img).to_univariate(0), m.F.derivative(3).substitute(img).to_univariate(0)};
}

// The residual conic R(W, X, Y) with F(W, X, Y, 0) = X * R.
inline std::optional<MPoly> residual_in_H(const CubicSurfaceModel& m) {
    std::vector<MPoly> img{MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2), MPoly(3)};
    const MPoly FH = m.F.substitute(img);
    if (FH.is_zero()) return std::nullopt;
    return divide_exact(FH, MPoly::var(3, 1));
}

struct PlaneFiber {
    Integer xq, zp;  // plane X = xq k, Z = zp k
    MPoly phi;       // conic in (W, k), chart Y = 1
    std::string slope() const {
        if (sgn(xq) == 0) return "inf";
        return SRational(zp, xq).str();
    }
};

inline PlaneFiber fiber_in_plane(const CubicSurfaceModel& m, Integer xq, Integer zp) {
    const Integer g = int_gcd(xq, zp);
    if (sgn(g) == 0) throw Error("plane direction is zero");
    xq /= g;
    zp /= g;
    if (sgn(xq) < 0 || (sgn(xq) == 0 && sgn(zp) < 0)) {
        xq = -xq;
        zp = -zp;
    }
    const MPoly k = MPoly::var(2, 1);
    std::vector<MPoly> img{MPoly::var(2, 0), SRational(xq) * k, MPoly::constant(2, SRational(1)), SRational(zp) * k};
    const MPoly full = m.F.substitute(img);
    auto q = divide_exact(full, k);
    if (!q) throw Error("internal: plane section does not contain the line");
    return {xq, zp, *q};
}

inline std::optional<AffineConic> conic_of(const MPoly& phi) {
    auto c = [&](int a, int b) { return phi.coeff(Monomial{a, b}); };
    if (phi.total_degree() > 2) throw Error("internal: fiber is not a conic");
    try {
        return AffineConic(c(2, 0), c(1, 1), c(0, 2), c(1, 0), c(0, 1), c(0, 0));
    } catch (const Error&) {
        return std::nullopt;
    }
}

// The bundle over the line: P(s) = (s, 0, 1, 0) and its tangent plane beta(s) X ... through the lattice
// X = beta(s) k, Z = -alpha(s) k, with alpha = F_X(P(s)), beta = F_Z(P(s)).
inline ConicBundleModel project_from_line(const CubicSurfaceModel& m) {
    auto [alpha, beta] = tangent_pencil_on_line(m);
    RatPolynomial g = poly_gcd(alpha, beta);
    if (g.is_zero()) throw Error("surface is singular along the whole line");
    alpha = divmod(alpha, g).first;
    beta = divmod(beta, g).first;
    {
        // one common rescaling turns both into integer polynomials without common content
        Integer l = 1;
        for (const auto& c : alpha.coeffs()) l = int_lcm(l, c.den());
        for (const auto& c : beta.coeffs()) l = int_lcm(l, c.den());
        Integer gg = 0;
        for (const auto& c : alpha.coeffs()) gg = int_gcd(gg, c.num() * (l / c.den()));
        for (const auto& c : beta.coeffs()) gg = int_gcd(gg, c.num() * (l / c.den()));
        const SRational sc(l, gg);
        alpha = RatPolynomial::constant(sc) * alpha;
        beta = RatPolynomial::constant(sc) * beta;
    }
    // phi(W, k, s) = F(W, beta(s) k, 1, -alpha(s) k) / k
    const MPoly K = MPoly::var(3, 1);
    const MPoly a3 = MPoly::from_univariate(alpha, 3, 2), b3 = MPoly::from_univariate(beta, 3, 2);
    std::vector<MPoly> img{MPoly::var(3, 0), b3 * K, MPoly::constant(3, SRational(1)), -(a3 * K)};
    auto q = divide_exact(m.F.substitute(img), K);
    if (!q) throw Error("internal: bundle substitution failed");
    ConicBundleModel B;
    const int monos[6][2] = {{2, 0}, {1, 1}, {0, 2}, {1, 0}, {0, 1}, {0, 0}};
    Integer l = 1;
    std::array<RatPolynomial, 6> rc;
    for (int i = 0; i < 6; ++i) {
        std::vector<SRational> co;
        for (const auto& [mono, c] : q->terms()) {
            if (mono[0] != monos[i][0] || mono[1] != monos[i][1]) continue;
            if (co.size() <= static_cast<std::size_t>(mono[2])) co.resize(static_cast<std::size_t>(mono[2]) + 1, SRational(0));
            co[static_cast<std::size_t>(mono[2])] = c;
        }
        rc[i] = RatPolynomial(co);
        for (const auto& c : rc[i].coeffs()) l = int_lcm(l, c.den());
    }
    for (int i = 0; i < 6; ++i) {
        std::vector<Integer> ic;
        for (const auto& c : rc[i].coeffs()) ic.push_back(c.num() * (l / c.den()));
        B.fiber_conic[static_cast<std::size_t>(i)] = IntPolynomial(ic);
    }
    B.section_x = RatPolynomial::x();
    B.section_y = RatPolynomial{};
    B.marked_place = m.v;
    B.marked_point_q = "s=inf";
    return B;
}

// ---------------------------------------------------------------------------
// Conditions

enum class Status { Holds, Fails, Undetermined };

inline std::string status_str(Status s) {
    switch (s) {
        case Status::Holds:
            return "Holds";
        case Status::Fails:
            return "Fails";
        default:
            return "Undetermined";
    }
}

struct Condition {
    Status status = Status::Undetermined;
    std::string detail;
};

struct AA2dWitness {
    SRational a, c, b;
    SRational disc() const { return c * c - SRational(4) * a * b; }
};

inline const std::vector<std::string>& condition_names() {
    static const std::vector<std::string> n{"GA1", "GA2", "GA3", "GA4a", "GA4b", "GA4c",
                                            "AA1", "AA2a", "AA2b", "AA2c", "AA2d", "AA2e"};
    return n;
}

struct ConditionReport {
    std::map<std::string, Condition> conditions;
    bool surface_smooth = false;
    bool flex = false;
    Place v = Place::infinite();
    std::optional<AA2dWitness> aa2d;
    std::optional<std::pair<SRational, SRational>> local_pair;  // (a/e, b/e)
    std::vector<SRational> aa1_witness;

    Status status(const std::string& name) const {
        auto it = conditions.find(name);
        return it == conditions.end() ? Status::Undetermined : it->second.status;
    }
    bool holds(const std::string& name) const { return status(name) == Status::Holds; }
    bool applicable() const {
        const bool base = holds("GA1") && holds("GA2") && holds("GA3") && holds("AA1");
        const bool ga4 = holds("GA4a") || holds("GA4b") || holds("GA4c");
        const bool aa2 = holds("AA2a") || holds("AA2b") || holds("AA2c") || holds("AA2d") || holds("AA2e");
        return base && ga4 && aa2;
    }
    std::vector<std::string> failing() const {
        std::vector<std::string> out;
        for (const auto& n : {"GA1", "GA2", "GA3", "AA1"}) {
            if (!holds(n)) out.push_back(n);
        }
        if (!(holds("GA4a") || holds("GA4b") || holds("GA4c"))) out.push_back("GA4a|GA4b|GA4c");
        if (!(holds("AA2a") || holds("AA2b") || holds("AA2c") || holds("AA2d") || holds("AA2e")))
            out.push_back("AA2a|AA2b|AA2c|AA2d|AA2e");
        return out;
    }
};

namespace cubic_detail {

inline bool is_square_at(const SRational& q, const Place& v) {
    if (q.is_zero()) return true;
    return is_square_in_qv(q, v);
}

// Odd-multiplicity part of a binary form given dehomogenized, with the parity at infinity.
inline std::pair<RatPolynomial, bool> branch_locus(const RatPolynomial& p, int formal_degree) {
    const int inf = formal_degree - p.degree();
    RatPolynomial odd = p.degree() > 0 ? monic(odd_multiplicity_part(p)) : RatPolynomial{1};
    return {odd, inf % 2 == 1};
}

inline std::size_t distinct_roots(const RatPolynomial& p, int formal_degree) {
    std::size_t n = 0;
    if (p.degree() > 0) {
        RatPolynomial sf = divmod(p, poly_gcd(p, p.derivative())).first;
        n += static_cast<std::size_t>(sf.degree());
    }
    if (formal_degree - p.degree() > 0) ++n;
    return n;
}

inline MPoly dehomogenize(const MPoly& f, std::size_t var) {
    std::vector<MPoly> img;
    for (std::size_t i = 0; i < f.nvars(); ++i) img.push_back(i == var ? MPoly::constant(f.nvars(), SRational(1)) : MPoly::var(f.nvars(), i));
    return f.substitute(img);
}

}  // namespace cubic_detail

inline bool is_irreducible_surface(const MPoly& F) { return linear_factors(F).empty(); }

inline ConditionReport check_GA(const CubicSurfaceModel& m) {
    using namespace cubic_detail;
    ConditionReport r;
    r.v = m.v;
    const MPoly g = boundary_cubic(m);
    const std::vector<SRational> q1p{SRational(1), SRational(0), SRational(0)};

    // GA1
    std::vector<std::pair<MPoly, int>> lf;
    if (g.is_zero()) {
        r.conditions["GA1"] = {Status::Fails, "boundary plane lies on the surface"};
    } else {
        lf = linear_factors(g);
        bool reduced = true;
        for (const auto& [l, mult] : lf) reduced = reduced && mult == 1;
        const bool smooth_q1 = !m.q1_singular && !(g.derivative(1).eval(q1p).is_zero() && g.derivative(2).eval(q1p).is_zero());
        if (!reduced)
            r.conditions["GA1"] = {Status::Fails, "D1 has a repeated component"};
        else if (!smooth_q1)
            r.conditions["GA1"] = {Status::Fails, "D1 is singular at q1"};
        else
            r.conditions["GA1"] = {Status::Holds, "D1 reduced, smooth at q1"};
    }

    // GA2 and GA4c: singular points along L and elsewhere
    const auto [alpha, beta] = tangent_pencil_on_line(m);
    const RatPolynomial gab = poly_gcd(alpha, beta);
    std::size_t on_line = 0;
    std::string line_detail = "smooth along L1";
    bool bad_point = false;
    if (alpha.is_zero() && beta.is_zero()) {
        on_line = 2;
        line_detail = "singular along all of L1";
    } else {
        // common zeros of the binary quadratics, including Y = 0
        const int inf_a = alpha.is_zero() ? 2 : 2 - alpha.degree();
        const int inf_b = beta.is_zero() ? 2 : 2 - beta.degree();
        const int inf = std::min(inf_a, inf_b);
        on_line = distinct_roots(gab.is_zero() ? RatPolynomial{1} : gab, (gab.is_zero() ? 0 : gab.degree()) + inf);
        if (on_line == 1) {
            std::vector<SRational> P;
            if (inf > 0) {
                P = {SRational(1), SRational(0), SRational(0), SRational(0)};
            } else {
                const auto roots = rational_roots(gab);
                P = {roots.at(0), SRational(0), SRational(1), SRational(0)};
            }
            RatMatrix Hs(4, RatVector(4));
            bool nonzero = false;
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    Hs[i][j] = m.F.derivative(i).derivative(j).eval(P);
                    nonzero = nonzero || !Hs[i][j].is_zero();
                }
            }
            std::string ps = "[" + P[0].str() + ":" + P[1].str() + ":" + P[2].str() + ":" + P[3].str() + "]";
            line_detail = "one singular point on L1 at " + ps;
            if (!nonzero) {
                bad_point = true;
                line_detail += " of multiplicity 3";
            }
        } else if (on_line > 1) {
            line_detail = std::to_string(on_line) + " singular points on L1";
        }
    }
    r.conditions["GA4c"] = on_line >= 1 ? Condition{Status::Holds, line_detail} : Condition{Status::Fails, line_detail};

    std::vector<MPoly> grad;
    for (std::size_t i = 0; i < 4; ++i) grad.push_back(m.F.derivative(i));
    bool off_line_smooth = true;
    for (std::size_t var : {1u, 3u}) {
        std::vector<MPoly> chart;
        for (const MPoly& d : grad) chart.push_back(dehomogenize(d, var));
        if (!groebner::is_inconsistent(chart)) off_line_smooth = false;
    }
    r.surface_smooth = off_line_smooth && on_line == 0;
    if (!off_line_smooth)
        r.conditions["GA2"] = {Status::Undetermined, "surface is singular away from L1"};
    else if (on_line > 1)
        r.conditions["GA2"] = {Status::Fails, line_detail};
    else if (bad_point)
        r.conditions["GA2"] = {Status::Fails, line_detail};
    else
        r.conditions["GA2"] = {Status::Holds, on_line == 0 ? "surface smooth" : line_detail + ", smooth elsewhere"};

    // GA3
    if (g.is_zero()) {
        r.conditions["GA3"] = {Status::Undetermined, "no boundary curve"};
    } else {
        std::string why;
        for (const auto& [l, mult] : lf) {
            const MPoly rest = *divide_exact(g, l);
            if (rest.eval(q1p).is_zero()) why = "D1 = line " + l.str({"W", "X", "Z"}) + " and a conic through q1";
        }
        r.conditions["GA3"] = why.empty() ? Condition{Status::Holds, lf.empty() ? "D1 irreducible" : "no line+conic through q1"}
                                          : Condition{Status::Fails, why};
    }

    // GA4b
    if (g.is_zero()) {
        r.conditions["GA4b"] = {Status::Fails, "no boundary curve"};
    } else {
        const bool smooth = !groebner::has_projective_zero({g.derivative(0), g.derivative(1), g.derivative(2)});
        r.conditions["GA4b"] = smooth ? Condition{Status::Holds, "D1 is a smooth plane cubic"}
                                      : Condition{Status::Fails, "D1 is singular"};
    }

    // GA4a: branch loci of C -> P1 and L -> P1 over the pencil of planes Z = t X
    if (g.is_zero()) {
        r.conditions["GA4a"] = {Status::Undetermined, "no boundary curve"};
    } else {
        // g(W, X, t X) / X as a quadratic in (W, X)
        const MPoly T = MPoly::var(3, 2);
        std::vector<MPoly> img{MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 1) * T};
        auto q = divide_exact(g.substitute(img), MPoly::var(3, 1));
        auto coeff_in_t = [&](const MPoly& f, int a, int b) {
            std::vector<SRational> co;
            for (const auto& [mono, c] : f.terms()) {
                if (mono[0] != a || mono[1] != b) continue;
                if (co.size() <= static_cast<std::size_t>(mono[2])) co.resize(static_cast<std::size_t>(mono[2]) + 1, SRational(0));
                co[static_cast<std::size_t>(mono[2])] = c;
            }
            return RatPolynomial(co);
        };
        if (!q) {
            r.conditions["GA4a"] = {Status::Undetermined, "q1 not on D1"};
        } else {
            const RatPolynomial A = coeff_in_t(*q, 2, 0), B = coeff_in_t(*q, 1, 1), C = coeff_in_t(*q, 0, 2);
            const RatPolynomial discC = B * B - RatPolynomial::constant(SRational(4)) * A * C;
            RatPolynomial a2 = divmod(alpha, gab.is_zero() ? RatPolynomial{1} : gab).first;
            RatPolynomial b2 = divmod(beta, gab.is_zero() ? RatPolynomial{1} : gab).first;
            const int dl = 2 - (gab.is_zero() ? 0 : gab.degree());
            if (discC.is_zero()) {
                r.conditions["GA4a"] = {Status::Undetermined, "C -> P1 is not separable"};
            } else {
                const auto bc = branch_locus(discC, 4);
                std::pair<RatPolynomial, bool> bl{RatPolynomial{1}, false};
                if (dl == 2) {
                    // points of L over t: alpha + t beta = 0, discriminant in t
                    // alpha + t beta = u2 s^2 + u1 s + u0 with ui linear in t
                    RatPolynomial u[3];
                    for (std::size_t i = 0; i < 3; ++i) u[i] = RatPolynomial(std::vector<SRational>{a2.coeff(i), b2.coeff(i)});
                    const RatPolynomial discL = u[1] * u[1] - RatPolynomial::constant(SRational(4)) * u[2] * u[0];
                    if (!discL.is_zero()) bl = branch_locus(discL, 2);
                }
                const bool same = bc.first == bl.first && bc.second == bl.second;
                r.conditions["GA4a"] = same ? Condition{Status::Fails, "branch loci coincide"}
                                            : Condition{Status::Holds, "branch loci differ"};
            }
        }
    }
    return r;
}

inline ConditionReport check_AA(const CubicSurfaceModel& m, const PlaceSet& S, const Place& v) {
    using namespace cubic_detail;
    ConditionReport r;
    r.v = v;
    const PlaceSet Su = S.united(m.S);
    const MPoly g = boundary_cubic(m);
    const std::vector<SRational> q1p{SRational(1), SRational(0), SRational(0)};

    // AA1: P(0) on the line, off the boundary
    {
        const auto P = m.to_original({SRational(0), SRational(0), SRational(1), SRational(0)});
        bool ok = true;
        for (const auto& c : P) ok = ok && is_s_integer(c, Su);
        r.aa1_witness = P;
        std::string ps;
        for (const auto& c : P) ps += (ps.empty() ? "" : ",") + c.str();
        r.conditions["AA1"] = ok ? Condition{Status::Holds, "witness (" + ps + ")"} : Condition{Status::Fails, "witness not S-integral"};
    }

    const auto lf = g.is_zero() ? std::vector<std::pair<MPoly, int>>{} : linear_factors(g);
    const bool irreducible = !g.is_zero() && lf.empty();
    const bool q1_smooth = !g.is_zero() && !(g.derivative(1).eval(q1p).is_zero() && g.derivative(2).eval(q1p).is_zero());
    r.flex = q1_smooth && is_flex(g, q1p);

    // AA2a
    if (!irreducible)
        r.conditions["AA2a"] = {Status::Fails, "D1 is reducible"};
    else if (!q1_smooth)
        r.conditions["AA2a"] = {Status::Fails, "q1 is singular on D1"};
    else
        r.conditions["AA2a"] = r.flex ? Condition{Status::Fails, "q1 is a flex of D1"} : Condition{Status::Holds, "q1 is not a flex"};

    // AA2b
    {
        const ConditionReport ga = check_GA(m);
        r.conditions["AA2b"] = ga.conditions.at("GA4c");
        r.surface_smooth = ga.surface_smooth;
    }

    // AA2c / AA2d  (H = {Z = 0})
    const auto R = residual_in_H(m);
    if (!irreducible || !r.flex) {
        const std::string why = !irreducible ? "D1 is reducible" : "q1 is not a flex";
        r.conditions["AA2c"] = {Status::Fails, why};
        r.conditions["AA2d"] = {Status::Fails, why};
    } else if (!R) {
        r.conditions["AA2c"] = {Status::Undetermined, "H is contained in the surface"};
        r.conditions["AA2d"] = {Status::Undetermined, "H is contained in the surface"};
    } else {
        RatMatrix Mx(3, RatVector(3));
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) Mx[i][j] = R->derivative(i).derivative(j).eval({SRational(0), SRational(0), SRational(0)});
        }
        const bool smooth = !determinant(Mx).is_zero();
        if (smooth) {
            r.conditions["AA2c"] = {Status::Holds, "H meets the surface in L1 and a smooth conic"};
            r.conditions["AA2d"] = {Status::Fails, "residual conic is smooth"};
        } else {
            r.conditions["AA2c"] = {Status::Fails, "residual conic is singular"};
            if (R->degree_in(0) > 0) {
                r.conditions["AA2d"] = {Status::Undetermined, "residual lines do not pass through q1"};
            } else {
                AA2dWitness w{R->coeff(Monomial{0, 2, 0}), R->coeff(Monomial{0, 1, 1}), R->coeff(Monomial{0, 0, 2})};
                r.aa2d = w;
                const SRational ab = w.a * w.b;
                const bool sq = is_square_at(ab, v);
                std::string d = "R = " + R->str({"W", "X", "Y"}) + ", ab = " + ab.str() + ", c^2-4ab = " + w.disc().str();
                r.conditions["AA2d"] = sq ? Condition{Status::Holds, d + ", ab square at " + v.str()}
                                          : Condition{Status::Fails, d + ", ab not a square at " + v.str()};
                if (auto pc = m.normal_form_coefficients(); pc && !pc->e.is_zero())
                    r.local_pair = std::make_pair(pc->a / pc->e, pc->b / pc->e);
            }
        }
    }

    // AA2e: D1 = line + irreducible conic meeting in two points over Q_v
    if (lf.size() == 1 && lf[0].second == 1) {
        const MPoly& l = lf[0].first;
        const MPoly C = *divide_exact(g, l);
        if (!linear_factors(C).empty()) {
            r.conditions["AA2e"] = {Status::Fails, "conic component is reducible"};
        } else {
            IntMatrix row{IntVector(3)};
            for (std::size_t i = 0; i < 3; ++i) {
                Monomial mo(3, 0);
                mo[i] = 1;
                const SRational c = l.coeff(mo);
                row[0][i] = c.num();  // l is primitive with integer coefficients
            }
            const IntMatrix ker = integer_kernel(row, 3);
            std::vector<MPoly> img;
            for (std::size_t i = 0; i < 3; ++i)
                img.push_back(SRational(ker[0][i]) * MPoly::var(2, 0) + SRational(ker[1][i]) * MPoly::var(2, 1));
            const MPoly bq = C.substitute(img);
            const SRational a = bq.coeff(Monomial{2, 0}), b = bq.coeff(Monomial{1, 1}), c = bq.coeff(Monomial{0, 2});
            const SRational disc = b * b - SRational(4) * a * c;
            if (bq.is_zero() || disc.is_zero())
                r.conditions["AA2e"] = {Status::Fails, "line and conic are tangent"};
            else if (is_square_at(disc, v))
                r.conditions["AA2e"] = {Status::Holds, "intersection discriminant " + disc.str() + " is a square at " + v.str()};
            else
                r.conditions["AA2e"] = {Status::Fails, "intersection discriminant " + disc.str() + " is not a square at " + v.str()};
        }
    } else {
        r.conditions["AA2e"] = {Status::Fails, lf.empty() ? "D1 is irreducible" : "D1 is not a line plus a conic"};
    }
    return r;
}

inline ConditionReport check_conditions(const CubicSurfaceModel& m) {
    ConditionReport r = check_GA(m);
    const ConditionReport a = check_AA(m, m.S, m.v);
    for (const auto& [k, c] : a.conditions) {
        if (k.rfind("AA", 0) == 0) r.conditions[k] = c;
    }
    r.flex = a.flex;
    r.aa2d = a.aa2d;
    r.local_pair = a.local_pair;
    r.aa1_witness = a.aa1_witness;
    r.v = m.v;
    return r;
}

// ---------------------------------------------------------------------------
// Generation

struct CubicFiberReport {
    FiberReport report;
    std::string origin;  // "L1" or "seed"
    std::optional<SRational> s;
    std::string slope;   // Z/X of the fiber plane, "inf" for X = 0
    std::vector<std::vector<SRational>> points_original;  // homogeneous, scaled so the boundary form is 1
};

struct CubicGeneration {
    std::vector<CubicFiberReport> fibers;
    std::vector<std::vector<SRational>> points;  // all emitted points, in order, without repetition
    PlaceSet S;                                  // after any enlargement
    std::size_t distinct_fibers() const {
        std::set<std::string> k;
        for (const auto& f : fibers) {
            if (!f.report.points.empty()) k.insert(f.slope);
        }
        return k.size();
    }
};

struct CubicOptions {
    unsigned threads = 1;
    OrbitLimits limits;
    bool use_model_seeds = true;
};

namespace cubic_detail {

inline CubicFiberReport run_plane_fiber(const CubicSurfaceModel& m, const PlaneFiber& pf, const ConicPoint& seed,
                                        const SRational& label, const PlaceSet& S, std::size_t n, const OrbitLimits& lim) {
    CubicFiberReport out;
    out.slope = pf.slope();
    const auto conic = conic_of(pf.phi);
    if (!conic) {
        out.report.t = label;
        out.report.status = "skipped";
        out.report.reason = "degenerate fiber: residual conic in plane slope " + out.slope + " is singular";
        return out;
    }
    if (!conic->contains(seed)) throw Error("internal: seed " + seed.str() + " is off its fiber");
    out.report = process_fiber(label, *conic, seed, S, m.v, n, lim);
    for (const ConicPoint& p : out.report.points) {
        const std::vector<SRational> nrm{p.x, SRational(pf.xq) * p.y, SRational(1), SRational(pf.zp) * p.y};
        const auto P = m.to_original(nrm);
        if (!m.F_original.eval(P).is_zero()) throw Error("internal: generated point is off the surface");
        for (const auto& c : P) {
            if (!is_s_integer(c, S)) throw Error("internal: generated point is not S-integral");
        }
        out.points_original.push_back(P);
        out.report.lifted.push_back(P);
    }
    return out;
}

}  // namespace cubic_detail

// Fiber through an S-integral point of the surface off the line and the boundary.
inline std::optional<std::pair<PlaneFiber, ConicPoint>> fiber_through_point(const CubicSurfaceModel& m,
                                                                            const std::array<SRational, 4>& P) {
    const std::vector<SRational> Pv(P.begin(), P.end());
    if (!m.F_original.eval(Pv).is_zero()) throw Error("seed point is not on the surface");
    auto N = m.to_normalized(Pv);
    if (N[2].is_zero()) throw Error("seed point lies on the boundary");
    for (auto& c : N) c = c / N[2];
    if (N[1].is_zero() && N[3].is_zero()) return std::nullopt;  // on the line
    const std::array<SRational, 4> XZ{N[1], N[3], SRational(0), SRational(0)};
    const auto v = cubic_detail::primitive_vector(XZ);
    PlaneFiber pf = fiber_in_plane(m, v[0], v[1]);
    const SRational k = sgn(pf.xq) != 0 ? N[1] / SRational(pf.xq) : N[3] / SRational(pf.zp);
    return std::make_pair(pf, ConicPoint{N[0], k});
}

inline CubicGeneration generate_cubic_points(const CubicSurfaceModel& m, const PlaceSet& S_in, const Integer& B,
                                             std::size_t n, const CubicOptions& opt = {}) {
    const ConditionReport rep = check_conditions(m);
    if (!rep.applicable()) {
        std::string f;
        for (const auto& s : rep.failing()) f += (f.empty() ? "" : ", ") + s;
        throw ConditionFailure("theorem not applicable: " + f);
    }
    CubicGeneration G;
    G.S = S_in.united(m.S);
    if (!G.S.contains(m.v)) throw Error("marked place " + m.v.str() + " is not in S");
    const auto [alpha, beta] = tangent_pencil_on_line(m);
    const auto ss = s_integers_of_height(G.S, B);
    G.fibers = ordered_parallel_map(ss, opt.threads, [&](const SRational& s) {
        const SRational a = alpha.eval<SRational>(s), b = beta.eval<SRational>(s);
        CubicFiberReport out;
        out.origin = "L1";
        out.s = s;
        if (a.is_zero() && b.is_zero()) {
            out.report.t = s;
            out.report.status = "skipped";
            out.report.reason = "surface is singular at this point of L1";
            out.slope = "-";
            return out;
        }
        const auto v = cubic_detail::primitive_vector({b, -a, SRational(0), SRational(0)});
        const PlaneFiber pf = fiber_in_plane(m, v[0], v[1]);
        out = cubic_detail::run_plane_fiber(m, pf, ConicPoint{s, SRational(0)}, s, G.S, n, opt.limits);
        out.origin = "L1";
        out.s = s;
        return out;
    });
    if (opt.use_model_seeds) {
        for (const auto& P : m.seeds) {
            auto fp = fiber_through_point(m, P);
            CubicFiberReport out;
            out.origin = "seed";
            if (!fp) {
                out.report.status = "skipped";
                out.report.reason = "seed lies on L1";
                out.slope = "-";
            } else {
                if (!is_s_integer(fp->second.x, G.S) || !is_s_integer(fp->second.y, G.S)) {
                    out.report.status = "skipped";
                    out.report.reason = "seed is not S-integral in the fiber chart";
                    out.slope = fp->first.slope();
                } else {
                    out = cubic_detail::run_plane_fiber(m, fp->first, fp->second, SRational(0), G.S, n, opt.limits);
                    out.origin = "seed";
                }
            }
            G.fibers.push_back(std::move(out));
        }
    }
    std::set<std::vector<SRational>> seen;
    for (const auto& f : G.fibers) {
        for (const auto& p : f.points_original) {
            if (seen.insert(p).second) G.points.push_back(p);
        }
    }
    return G;
}

}  // namespace sintpts

#endif
