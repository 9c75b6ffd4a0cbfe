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

#ifndef SINTPTS_ARITH_MPOLY_HPP
#define SINTPTS_ARITH_MPOLY_HPP

#include "sintpts/arith/polynomial.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sintpts {

using Monomial = std::vector<int>;

// Sparse polynomial in a fixed number of variables over Q.
class MPoly {
  public:
    MPoly() = default;
    explicit MPoly(std::size_t nvars) : n_(nvars) {}

    static MPoly constant(std::size_t nvars, const SRational& a) {
        MPoly p(nvars);
        if (!a.is_zero()) p.t_[Monomial(nvars, 0)] = a;
        return p;
    }
    static MPoly var(std::size_t nvars, std::size_t i) {
        MPoly p(nvars);
        Monomial m(nvars, 0);
        m[i] = 1;
        p.t_[m] = SRational(1);
        return p;
    }
    static MPoly term(const SRational& a, Monomial m) {
        MPoly p(m.size());
        if (!a.is_zero()) p.t_[std::move(m)] = a;
        return p;
    }
    // Linear form sum c_i x_i.
    static MPoly linear(const std::vector<SRational>& c) {
        MPoly p(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) p += MPoly::term(c[i], unit(c.size(), i));
        return p;
    }

    std::size_t nvars() const { return n_; }
    const std::map<Monomial, SRational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    SRational coeff(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? SRational(0) : it->second;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : t_) d = std::max(d, degree_of(m));
        return d;
    }
    bool is_homogeneous() const {
        int d = -1;
        for (const auto& [m, c] : t_) {
            if (d >= 0 && degree_of(m) != d) return false;
            d = degree_of(m);
        }
        return true;
    }
    int degree_in(std::size_t i) const {
        int d = -1;
        for (const auto& [m, c] : t_) d = std::max(d, m[i]);
        return d;
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    MPoly& operator+=(const MPoly& o) {
        check(o);
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        check(o);
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check(b);
        MPoly r(a.n_);
        for (const auto& [ma, ca] : a.t_) {
            for (const auto& [mb, cb] : b.t_) {
                Monomial m(a.n_);
                for (std::size_t i = 0; i < a.n_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend MPoly operator*(const SRational& s, MPoly a) {
        if (s.is_zero()) return MPoly(a.n_);
        for (auto& [m, c] : a.t_) c *= s;
        return a;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

    MPoly pow(unsigned e) const {
        MPoly r = constant(n_, SRational(1)), b = *this;
        while (e > 0) {
            if (e & 1u) r *= b;
            b *= b;
            e >>= 1u;
        }
        return r;
    }

    SRational eval(const std::vector<SRational>& x) const {
        if (x.size() != n_) throw Error("MPoly::eval: wrong number of values");
        SRational s(0);
        for (const auto& [m, c] : t_) {
            SRational v = c;
            for (std::size_t i = 0; i < n_; ++i) {
                if (m[i] > 0) v *= x[i].pow(m[i]);
            }
            s += v;
        }
        return s;
    }

    // Replace x_i by images[i]; all images share one variable count.
    MPoly substitute(const std::vector<MPoly>& images) const {
        if (images.size() != n_) throw Error("MPoly::substitute: wrong number of images");
        const std::size_t m = images.empty() ? 0 : images[0].n_;
        std::vector<std::vector<MPoly>> powers(n_);
        MPoly r(m);
        for (const auto& [mono, c] : t_) {
            MPoly v = constant(m, c);
            for (std::size_t i = 0; i < n_; ++i) {
                if (mono[i] == 0) continue;
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(constant(m, SRational(1)));
                while (static_cast<int>(pw.size()) <= mono[i]) pw.push_back(pw.back() * images[i]);
                v *= pw[static_cast<std::size_t>(mono[i])];
            }
            r += v;
        }
        return r;
    }

    MPoly derivative(std::size_t i) const {
        MPoly r(n_);
        for (const auto& [m, c] : t_) {
            if (m[i] == 0) continue;
            Monomial d = m;
            d[i] -= 1;
            r.add_term(d, c * SRational(m[i]));
        }
        return r;
    }

    // Coefficients of powers of x_i, each still in n_ variables with x_i absent.
    std::vector<MPoly> coefficients_in(std::size_t i) const {
        std::vector<MPoly> out(static_cast<std::size_t>(std::max(0, degree_in(i)) + 1), MPoly(n_));
        for (const auto& [m, c] : t_) {
            Monomial r = m;
            r[i] = 0;
            out[static_cast<std::size_t>(m[i])].add_term(r, c);
        }
        return out;
    }

    // The univariate polynomial when only x_i occurs.
    RatPolynomial to_univariate(std::size_t i) const {
        std::vector<SRational> c(static_cast<std::size_t>(std::max(0, degree_in(i)) + 1), SRational(0));
        for (const auto& [m, a] : t_) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (j != i && m[j] != 0) throw Error("MPoly::to_univariate: other variables present");
            }
            c[static_cast<std::size_t>(m[i])] = a;
        }
        return RatPolynomial(std::move(c));
    }

    static MPoly from_univariate(const RatPolynomial& p, std::size_t nvars, std::size_t i) {
        MPoly r(nvars);
        for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
            Monomial m(nvars, 0);
            m[i] = static_cast<int>(k);
            r.add_term(m, p.coeffs()[k]);
        }
        return r;
    }

    // Scaled to coprime integer coefficients with a positive lexicographically-largest term.
    MPoly primitive() const {
        if (t_.empty()) return *this;
        Integer l = 1, g = 0;
        for (const auto& [m, c] : t_) l = int_lcm(l, c.den());
        for (const auto& [m, c] : t_) g = int_gcd(g, c.num() * (l / c.den()));
        SRational s(l, g);
        if (t_.rbegin()->second.sign() < 0) s = -s;
        return s * *this;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            std::string a = it->second.str();
            const bool neg = a[0] == '-';
            if (neg) a = a.substr(1);
            s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            std::string mono;
            for (std::size_t i = 0; i < n_; ++i) {
                if (it->first[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names[i];
                if (it->first[i] > 1) mono += "^" + std::to_string(it->first[i]);
            }
            if (mono.empty())
                s += a;
            else if (a == "1")
                s += mono;
            else
                s += a + "*" + mono;
        }
        return s;
    }

    static int degree_of(const Monomial& m) {
        int d = 0;
        for (int e : m) d += e;
        return d;
    }
    static Monomial unit(std::size_t nvars, std::size_t i) {
        Monomial m(nvars, 0);
        m[i] = 1;
        return m;
    }

    void add_term(const Monomial& m, const SRational& c) {
        if (c.is_zero()) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }

  private:
    void check(const MPoly& o) const {
        if (o.n_ != n_) throw Error("MPoly: variable count mismatch");
    }
    std::size_t n_ = 0;
    std::map<Monomial, SRational> t_;
};

// All monomials of total degree d in n variables, lexicographically descending.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
    std::vector<Monomial> out;
    Monomial m(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == n) {
            m[i] = left;
            out.push_back(m);
            return;
        }
        for (int e = left; e >= 0; --e) {
            m[i] = e;
            rec(i + 1, left - e);
        }
    };
    if (n > 0) rec(0, d);
    return out;
}

// Exact quotient f / g, or nothing when g does not divide f.
inline std::optional<MPoly> divide_exact(const MPoly& f, const MPoly& g) {
    if (g.is_zero()) throw Error("divide_exact by zero");
    MPoly r = f, q(f.nvars());
    const auto& [lg, cg] = *g.terms().rbegin();
    while (!r.is_zero()) {
        const auto& [lr, cr] = *r.terms().rbegin();
        Monomial m(f.nvars());
        for (std::size_t i = 0; i < m.size(); ++i) {
            m[i] = lr[i] - lg[i];
            if (m[i] < 0) return std::nullopt;
        }
        MPoly t = MPoly::term(cr / cg, m);
        q += t;
        r -= t * g;
    }
    return q;
}

}  // namespace sintpts

#endif
