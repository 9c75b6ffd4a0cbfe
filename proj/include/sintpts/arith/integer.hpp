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

#ifndef SINTPTS_ARITH_INTEGER_HPP
#define SINTPTS_ARITH_INTEGER_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sintpts {

using Integer = mpz_class;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InputError : public Error {
  public:
    explicit InputError(const std::string& what) : Error(what) {}
};

inline Integer int_abs(const Integer& a) {
    Integer r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Integer int_gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer int_lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer int_pow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// floor(sqrt(a)) for a >= 0.
inline Integer isqrt(const Integer& a) {
    if (sgn(a) < 0) throw Error("isqrt of a negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Integer& a, Integer* root = nullptr) {
    if (sgn(a) < 0) return false;
    if (mpz_perfect_square_p(a.get_mpz_t()) == 0) return false;
    if (root != nullptr) *root = isqrt(a);
    return true;
}

// Extended gcd: returns g = gcd(a,b) >= 0 with a*x + b*y = g.
inline Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
    Integer g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Non-negative residue of a modulo m > 0.
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::optional<Integer> mod_inverse(const Integer& a, const Integer& m);

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1u) r = mulmod64(r, b, m);
        b = mulmod64(b, b, m);
        e >>= 1u;
    }
    return r;
}

}  // namespace detail

// Deterministic Miller-Rabin; the first twelve prime bases are exact below 3.3e24.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    static const std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : small) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    for (std::uint64_t a : small) {
        std::uint64_t x = detail::powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline bool fits_u64(const Integer& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const Integer& n) {
    if (!fits_u64(n)) throw Error("integer does not fit in 64 bits");
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, -1, sizeof(r), 0, 0, n.get_mpz_t());
    return r;
}

inline Integer from_u64(std::uint64_t v) {
    Integer r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

// Exact below 2^64; above that GMP's probabilistic test with 40 rounds.
inline bool is_prime(const Integer& n) {
    if (sgn(n) <= 0) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// ord_p(n) for n != 0.
inline int ord_p(const Integer& n, const Integer& p) {
    if (sgn(n) == 0) throw Error("ord_p of zero");
    Integer m = n;
    int k = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()) != 0) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++k;
    }
    return k;
}

// Removes every factor p from n, returning the cofactor.
inline Integer remove_factor(const Integer& n, const Integer& p) {
    if (sgn(n) == 0) return n;
    Integer r;
    mpz_remove(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    return r;
}

namespace detail {

inline Integer pollard_brent(const Integer& n) {
    if (mpz_even_p(n.get_mpz_t()) != 0) return 2;
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1;
        const unsigned long m = 64;
        auto f = [&](const Integer& v) { return mod_floor(v * v + c, n); };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mod_floor(q * int_abs(x - y), n);
                }
                g = int_gcd(q, n);
                k += m;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = int_gcd(int_abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(const Integer& n, std::vector<Integer>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Integer d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

// Prime factorisation of |n| (n != 0), primes ascending with multiplicities.
inline std::vector<std::pair<Integer, int>> factorize(const Integer& n) {
    if (sgn(n) == 0) throw Error("factorize of zero");
    Integer m = int_abs(n);
    std::vector<Integer> primes;
    for (unsigned long p = 2; p < 10000 && m > 1; ++p) {
        if (p * p > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
            primes.emplace_back(p);
            m /= p;
        }
    }
    if (m > 1) detail::factor_into(m, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Integer, int>> result;
    for (const Integer& p : primes) {
        if (!result.empty() && result.back().first == p)
            ++result.back().second;
        else
            result.emplace_back(p, 1);
    }
    return result;
}

// Positive divisors of |n| in ascending order.
inline std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = ds.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Squarefree part of n with the sign of n preserved.
inline Integer squarefree_part(const Integer& n) {
    if (sgn(n) == 0) throw Error("squarefree part of zero");
    Integer r = sgn(n) < 0 ? Integer(-1) : Integer(1);
    for (const auto& [p, e] : factorize(n)) {
        if (e % 2 == 1) r *= p;
    }
    return r;
}

inline std::optional<Integer> mod_inverse(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return mod_floor(r, m);
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline Integer parse_integer(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    if (s.empty()) throw InputError("empty integer literal");
    std::size_t start = (s[0] == '-') ? 1 : 0;
    if (start == s.size()) throw InputError("malformed integer literal '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw InputError("malformed integer literal '" + text + "'");
    }
    return Integer(s, 10);
}

}  // namespace sintpts

#endif
