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

#ifndef SINTPTS_ARITH_RATIONAL_HPP
#define SINTPTS_ARITH_RATIONAL_HPP

#include "sintpts/arith/integer.hpp"

#include <compare>
#include <ostream>
#include <string>

namespace sintpts {

// Exact rational kept in lowest terms with a positive denominator.
class SRational {
  public:
    SRational() = default;
    SRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    SRational(int v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    SRational(const Integer& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    template <class Op>
    SRational(const __gmp_expr<mpz_t, Op>& e) : q_(Integer(e)) {}  // NOLINT(google-explicit-constructor)
    template <class N, class D>
    SRational(const N& num, const D& den) : SRational(Integer(num), Integer(den), 0) {}
    SRational(const Integer& num, const Integer& den) : SRational(num, den, 0) {}

  private:
    SRational(const Integer& num, const Integer& den, int) {
        if (sgn(den) == 0) throw Error("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

  public:
    explicit SRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    SRational operator-() const { return SRational(mpq_class(-q_)); }
    SRational& operator+=(const SRational& o) {
        q_ += o.q_;
        return *this;
    }
    SRational& operator-=(const SRational& o) {
        q_ -= o.q_;
        return *this;
    }
    SRational& operator*=(const SRational& o) {
        q_ *= o.q_;
        return *this;
    }
    SRational& operator/=(const SRational& o) {
        if (o.is_zero()) throw Error("division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend SRational operator+(SRational a, const SRational& b) { return a += b; }
    friend SRational operator-(SRational a, const SRational& b) { return a -= b; }
    friend SRational operator*(SRational a, const SRational& b) { return a *= b; }
    friend SRational operator/(SRational a, const SRational& b) { return a /= b; }

    friend bool operator==(const SRational& a, const SRational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const SRational& a, const SRational& b) {
        const int c = cmp(a.q_, b.q_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    SRational abs() const { return SRational(mpq_class(::abs(q_))); }
    SRational inverse() const {
        if (is_zero()) throw Error("inverse of zero");
        return SRational(den(), num());
    }
    SRational pow(long e) const {
        SRational base = e < 0 ? inverse() : *this;
        unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
        Integer n = int_pow(base.num(), k);
        Integer d = int_pow(base.den(), k);
        return SRational(n, d);
    }

    // "n" for integers, "n/d" otherwise.
    std::string str() const {
        if (is_integer()) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }

    static SRational parse(const std::string& text) {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return SRational(parse_integer(text));
        Integer n = parse_integer(text.substr(0, slash));
        Integer d = parse_integer(text.substr(slash + 1));
        if (sgn(d) == 0) throw InputError("zero denominator in '" + text + "'");
        return SRational(n, d);
    }

  private:
    mpq_class q_;
};

inline std::ostream& operator<<(std::ostream& os, const SRational& q) { return os << q.str(); }

inline bool is_rational_square(const SRational& q, SRational* root = nullptr) {
    if (q.sign() < 0) return false;
    Integer a, b;
    if (!is_perfect_square(q.num(), &a) || !is_perfect_square(q.den(), &b)) return false;
    if (root != nullptr) *root = SRational(a, b);
    return true;
}

// Squarefree integer in the square class of a nonzero rational.
inline Integer squarefree_class(const SRational& q) {
    if (q.is_zero()) throw Error("square class of zero");
    return squarefree_part(q.num() * q.den());
}

}  // namespace sintpts

#endif
