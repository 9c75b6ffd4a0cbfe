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

#ifndef SINTPTS_ARITH_POLYNOMIAL_HPP
#define SINTPTS_ARITH_POLYNOMIAL_HPP

#include "sintpts/arith/rational.hpp"

#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sintpts {

// Dense univariate polynomial, coefficients ascending; the zero polynomial is empty.
template <class Coeff>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Coeff> c) : c_(std::move(c)) { trim(); }
    Polynomial(std::initializer_list<long> c) {
        for (long v : c) c_.emplace_back(v);
        trim();
    }
    static Polynomial constant(const Coeff& a) { return Polynomial(std::vector<Coeff>{a}); }
    static Polynomial monomial(const Coeff& a, std::size_t k) {
        std::vector<Coeff> c(k + 1, Coeff(0));
        c[k] = a;
        return Polynomial(std::move(c));
    }
    static Polynomial x() { return monomial(Coeff(1), 1); }

    const std::vector<Coeff>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }
    Coeff lead() const { return c_.empty() ? Coeff(0) : c_.back(); }
    bool is_constant() const { return c_.size() <= 1; }

    template <class T>
    T eval(const T& x) const {
        T r(0);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + T(c_[i]);
        return r;
    }
    Coeff operator()(const Coeff& x) const { return eval<Coeff>(x); }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (Coeff& a : r.c_) a = -a;
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Coeff> r(a.c_.size() + b.c_.size() - 1, Coeff(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == Coeff(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(r));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend Polynomial operator*(const Coeff& s, Polynomial a) {
        for (Coeff& v : a.c_) v = s * v;
        a.trim();
        return a;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(Coeff(1)), b = *this;
        while (e > 0) {
            if (e & 1u) r *= b;
            b *= b;
            e >>= 1u;
        }
        return r;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<Coeff> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Coeff(static_cast<long>(i)) * c_[i];
        return Polynomial(std::move(r));
    }

    // p(q(t)).
    Polynomial compose(const Polynomial& q) const {
        Polynomial r;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * q + constant(c_[i]);
        return r;
    }

    // "[c0, c1, ...]".
    std::string list_str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i > 0) s += ", ";
            s += to_text(c_[i]);
        }
        return s + "]";
    }

    // Human-readable form in the variable `var`, highest degree first.
    std::string str(const std::string& var = "t") const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == Coeff(0)) continue;
            std::string a = to_text(c_[i]);
            bool neg = a[0] == '-';
            if (neg) a = a.substr(1);
            if (s.empty())
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            const bool unit = a == "1";
            if (i == 0 || !unit) s += a;
            if (i >= 1) s += (i == 0 || unit ? "" : "*") + var;
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

  private:
    static std::string to_text(const Coeff& a) {
        if constexpr (std::is_same_v<Coeff, Integer>)
            return a.get_str();
        else
            return a.str();
    }
    void trim() {
        while (!c_.empty() && c_.back() == Coeff(0)) c_.pop_back();
    }
    std::vector<Coeff> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<SRational>;

// The ring operations named in the public interface.
inline IntPolynomial poly_add(const IntPolynomial& a, const IntPolynomial& b) { return a + b; }
inline IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) { return a * b; }
inline IntPolynomial poly_scale(const Integer& s, const IntPolynomial& a) { return s * a; }
inline SRational poly_eval(const IntPolynomial& a, const SRational& t) { return a.eval<SRational>(t); }
inline Integer poly_eval(const IntPolynomial& a, const Integer& t) { return a.eval<Integer>(t); }

inline RatPolynomial to_rat(const IntPolynomial& p) {
    std::vector<SRational> c;
    for (const Integer& a : p.coeffs()) c.emplace_back(a);
    return RatPolynomial(std::move(c));
}

inline Integer content(const IntPolynomial& p) {
    Integer g = 0;
    for (const Integer& a : p.coeffs()) g = int_gcd(g, a);
    return g;
}

// Primitive integer polynomial with positive leading coefficient, proportional to p.
inline IntPolynomial primitive_part(const RatPolynomial& p) {
    if (p.is_zero()) return IntPolynomial();
    Integer l = 1;
    for (const SRational& a : p.coeffs()) l = int_lcm(l, a.den());
    std::vector<Integer> c;
    for (const SRational& a : p.coeffs()) c.push_back(a.num() * (l / a.den()));
    IntPolynomial q(std::move(c));
    Integer g = content(q);
    if (sgn(q.lead()) < 0) g = -g;
    std::vector<Integer> d;
    for (const Integer& a : q.coeffs()) d.push_back(a / g);
    return IntPolynomial(std::move(d));
}

inline IntPolynomial primitive_part(const IntPolynomial& p) { return primitive_part(to_rat(p)); }

inline RatPolynomial monic(const RatPolynomial& p) {
    if (p.is_zero()) return p;
    return p.lead().inverse() * p;
}

inline std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    std::vector<SRational> r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {RatPolynomial(), a};
    std::vector<SRational> q(static_cast<std::size_t>(a.degree() - db + 1), SRational(0));
    const SRational inv = b.lead().inverse();
    for (int i = a.degree(); i >= db; --i) {
        const SRational f = r[static_cast<std::size_t>(i)] * inv;
        q[static_cast<std::size_t>(i - db)] = f;
        if (f.is_zero()) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return {RatPolynomial(std::move(q)), RatPolynomial(std::move(r))};
}

inline RatPolynomial poly_gcd(RatPolynomial a, RatPolynomial b) {
    while (!b.is_zero()) {
        RatPolynomial r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline bool is_squarefree(const RatPolynomial& p) {
    if (p.is_zero()) return false;
    return poly_gcd(p, p.derivative()).degree() == 0;
}

// Yun's algorithm: monic squarefree factors a_i with p = lc * prod a_i^i.
inline std::vector<std::pair<RatPolynomial, int>> squarefree_decomposition(const RatPolynomial& p) {
    std::vector<std::pair<RatPolynomial, int>> out;
    if (p.degree() <= 0) return out;
    const RatPolynomial f = monic(p);
    RatPolynomial a = poly_gcd(f, f.derivative());
    RatPolynomial b = divmod(f, a).first;
    RatPolynomial c = divmod(f.derivative(), a).first;
    RatPolynomial d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        RatPolynomial g = poly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

// Product of the squarefree factors of odd multiplicity (monic).
inline RatPolynomial odd_multiplicity_part(const RatPolynomial& p) {
    RatPolynomial r = RatPolynomial::constant(SRational(1));
    for (const auto& [f, m] : squarefree_decomposition(p)) {
        if (m % 2 == 1) r *= f;
    }
    return r;
}

inline SRational resultant(const RatPolynomial& f, const RatPolynomial& g) {
    if (f.is_zero() || g.is_zero()) return SRational(0);
    const int m = f.degree(), n = g.degree();
    if (n == 0) return g.lead().pow(m);
    if (m == 0) return f.lead().pow(n);
    if (m < n) {
        const SRational r = resultant(g, f);
        return ((m * n) % 2 == 0) ? r : -r;
    }
    const RatPolynomial r = divmod(f, g).second;
    if (r.is_zero()) return SRational(0);
    // res(f,g) = (-1)^{mn} lc(g)^{m - deg r} res(g, r)
    SRational s = g.lead().pow(m - r.degree()) * resultant(g, r);
    return ((m * n) % 2 == 0) ? s : -s;
}

inline SRational discriminant(const RatPolynomial& f) {
    const int n = f.degree();
    if (n < 1) throw Error("discriminant of a constant polynomial");
    if (n == 1) return SRational(1);
    SRational r = resultant(f, f.derivative()) / f.lead();
    return ((n * (n - 1) / 2) % 2 == 0) ? r : -r;
}

// Distinct rational roots, ascending.
inline std::vector<SRational> rational_roots(const RatPolynomial& f) {
    std::vector<SRational> roots;
    if (f.degree() < 1) return roots;
    IntPolynomial p = primitive_part(f);
    std::size_t shift = 0;
    while (shift < p.coeffs().size() && sgn(p.coeffs()[shift]) == 0) ++shift;
    if (shift > 0) {
        roots.emplace_back(0);
        p = IntPolynomial(std::vector<Integer>(p.coeffs().begin() + static_cast<long>(shift), p.coeffs().end()));
    }
    if (p.degree() >= 1) {
        const auto nums = divisors(p.coeffs()[0]);
        const auto dens = divisors(p.lead());
        for (const Integer& d : dens) {
            for (const Integer& n : nums) {
                if (int_gcd(n, d) != 1) continue;
                for (int s : {1, -1}) {
                    SRational r(Integer(s) * n, d);
                    if (p.eval<SRational>(r).is_zero()) roots.push_back(r);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// Sturm sequence of a nonconstant polynomial.
inline std::vector<RatPolynomial> sturm_sequence(const RatPolynomial& f) {
    std::vector<RatPolynomial> seq{f, f.derivative()};
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        RatPolynomial r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

namespace detail {

inline int sign_changes(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

inline int variations_at(const std::vector<RatPolynomial>& seq, const SRational& x) {
    std::vector<int> s;
    for (const RatPolynomial& p : seq) s.push_back(p.eval<SRational>(x).sign());
    return sign_changes(s);
}

inline int variations_at_infinity(const std::vector<RatPolynomial>& seq, int direction) {
    std::vector<int> s;
    for (const RatPolynomial& p : seq) {
        if (p.is_zero()) {
            s.push_back(0);
            continue;
        }
        int sign = p.lead().sign();
        if (direction < 0 && p.degree() % 2 == 1) sign = -sign;
        s.push_back(sign);
    }
    return sign_changes(s);
}

}  // namespace detail

// Number of distinct real roots of f in (a, b].
inline int count_real_roots(const RatPolynomial& f, const SRational& a, const SRational& b) {
    if (f.degree() < 1) return 0;
    const auto seq = sturm_sequence(f);
    return detail::variations_at(seq, a) - detail::variations_at(seq, b);
}

inline int count_real_roots(const RatPolynomial& f) {
    if (f.degree() < 1) return 0;
    const auto seq = sturm_sequence(f);
    return detail::variations_at_infinity(seq, -1) - detail::variations_at_infinity(seq, 1);
}

inline int count_real_roots_above(const RatPolynomial& f, const SRational& a) {
    if (f.degree() < 1) return 0;
    const auto seq = sturm_sequence(f);
    return detail::variations_at(seq, a) - detail::variations_at_infinity(seq, 1);
}

// Cauchy bound: every complex root has |z| < 1 + max |c_i / c_n|.
inline SRational cauchy_root_bound(const RatPolynomial& f) {
    SRational m(0);
    for (int i = 0; i < f.degree(); ++i) {
        const SRational r = (f.coeffs()[static_cast<std::size_t>(i)] / f.lead()).abs();
        if (r > m) m = r;
    }
    return m + SRational(1);
}

}  // namespace sintpts

#endif
