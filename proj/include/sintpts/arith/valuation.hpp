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

#ifndef SINTPTS_ARITH_VALUATION_HPP
#define SINTPTS_ARITH_VALUATION_HPP

#include "sintpts/arith/place.hpp"

namespace sintpts {

class SplitAlgebraError : public Error {
  public:
    explicit SplitAlgebraError(const std::string& what) : Error(what) {}
};

// |q|_v as an exact rational; |0|_v = 0.
inline SRational abs_v(const SRational& q, const Place& v) {
    if (v.is_infinite()) return q.abs();
    if (q.is_zero()) return SRational(0);
    const int k = ord_p(q, v.prime());
    const Integer pk = int_pow(v.prime(), static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? SRational(Integer(1), pk) : SRational(pk);
}

inline bool is_square_in_r(const SRational& q) { return q.sign() >= 0; }

inline bool is_square_in_qp(const SRational& q, const Integer& p) {
    if (q.is_zero()) throw Error("is_square_in_qp: zero is excluded");
    if (ord_p(q, p) % 2 != 0) return false;
    // n/d and n*d share a square class, and d is a unit at p after removing p.
    const Integer u = remove_factor(q.num(), p) * remove_factor(q.den(), p);
    if (p == 2) return mod_floor(u, 8) == 1;
    return mpz_legendre(mod_floor(u, p).get_mpz_t(), p.get_mpz_t()) == 1;
}

inline bool is_square_in_qv(const SRational& q, const Place& v) {
    if (v.is_infinite()) return is_square_in_r(q);
    return is_square_in_qp(q, v.prime());
}

inline bool splits_completely(const SRational& d, const Place& v) {
    if (d.is_zero()) throw Error("splits_completely: d = 0");
    if (is_rational_square(d)) throw SplitAlgebraError("split algebra: " + d.str() + " is a rational square");
    if (v.is_infinite()) return d.sign() > 0;
    return is_square_in_qp(d, v.prime());
}

}  // namespace sintpts

#endif
