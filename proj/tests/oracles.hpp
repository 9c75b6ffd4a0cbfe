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

#ifndef SINTPTS_TESTS_ORACLES_HPP
#define SINTPTS_TESTS_ORACLES_HPP

// Brute-force reference implementations shared by the unit tests and the acceptance runner.
// None of these call into the library's number-theoretic routines.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline int ord(std::int64_t n, std::int64_t p) {
    int k = 0;
    if (n < 0) n = -n;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

inline std::int64_t strip(std::int64_t n, std::int64_t p) {
    while (n % p == 0) n /= p;
    return n;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Residues x^2 mod m for x in [0, m).
inline std::vector<bool> square_residues(std::int64_t m) {
    std::vector<bool> sq(static_cast<std::size_t>(m), false);
    for (std::int64_t x = 0; x < m; ++x) sq[static_cast<std::size_t>((x * x) % m)] = true;
    return sq;
}

// a/b is a square in Q_p: even valuation and the unit part a'b' is a square mod p^4.
inline bool qp_square(std::int64_t a, std::int64_t b, std::int64_t p) {
    const int v = ord(a, p) - ord(b, p);
    if (v % 2 != 0) return false;
    const std::int64_t m = ipow(p, 4);
    static thread_local std::vector<std::pair<std::int64_t, std::vector<bool>>> cache;
    const std::vector<bool>* sq = nullptr;
    for (const auto& [mm, s] : cache) {
        if (mm == m) sq = &s;
    }
    if (sq == nullptr) {
        cache.emplace_back(m, square_residues(m));
        sq = &cache.back().second;
    }
    const std::int64_t u = mod(mod(strip(a, p), m) * mod(strip(b, p), m), m);
    return (*sq)[static_cast<std::size_t>(u)];
}

// sqrt(d) lies in Q_p for a squarefree integer d: count roots of x^2 = d mod p^k.
inline bool splits_by_roots(std::int64_t d, std::int64_t p) {
    const std::int64_t m = ipow(p, p == 2 ? 5 : 3);
    std::int64_t count = 0;
    for (std::int64_t x = 0; x < m; ++x) {
        if (mod(x * x - d, m) == 0) ++count;
    }
    return count > 0;
}

inline std::int64_t squarefree(std::int64_t n) {
    std::int64_t s = n < 0 ? -1 : 1;
    n = n < 0 ? -n : n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e % 2 == 1) s *= p;
    }
    return s * n;
}

inline std::optional<std::uint64_t> exact_sqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r == n) return r;
    return std::nullopt;
}

// Least v in [1, cap] with D v^2 + 1 a square.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> pell_scan(std::uint64_t D, std::uint64_t cap) {
    for (std::uint64_t v = 1; v <= cap; ++v) {
        if (auto u = exact_sqrt(D * v * v + 1)) return std::make_pair(*u, v);
    }
    return std::nullopt;
}

// Chakravala method for x^2 - D y^2 = 1; an algorithm independent of continued fractions.
inline std::pair<mpz_class, mpz_class> chakravala(long D) {
    mpz_class a = 1, b = 0, k = 1;
    mpz_class m = 1;
    {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), mpz_class(D).get_mpz_t());
        a = r;
        if (a * a == D) return {0, 0};
        k = a * a - D;
        b = 1;
        m = a;
    }
    while (k != 1) {
        mpz_class ak = abs(k);
        // choose m = m0 (mod |k|) with a + b m = 0 (mod |k|), minimising |m^2 - D|
        mpz_class best = 0, bestval = -1;
        mpz_class rootD;
        mpz_sqrt(rootD.get_mpz_t(), mpz_class(D).get_mpz_t());
        for (mpz_class cand = rootD - ak - 1; cand <= rootD + ak + 1; ++cand) {
            if (cand <= 0) continue;
            mpz_class t = a + b * cand;
            if (t % ak != 0) continue;
            mpz_class val = abs(cand * cand - D);
            if (bestval < 0 || val < bestval) {
                bestval = val;
                best = cand;
            }
        }
        m = best;
        mpz_class na = (a * m + D * b) / ak;
        mpz_class nb = (a + b * m) / ak;
        mpz_class nk = (m * m - D) / k;
        a = abs(na);
        b = abs(nb);
        k = nk;
    }
    return {a, b};
}

// Sorted Markov triples with max coordinate <= bound.
inline std::set<std::tuple<long, long, long>> markov_census(long bound) {
    std::set<std::tuple<long, long, long>> out;
    for (long x = 1; x <= bound; ++x) {
        for (long y = x; y <= bound; ++y) {
            // z^2 - 3xy z + x^2 + y^2 = 0
            const long b = 3 * x * y;
            const long disc = b * b - 4 * (x * x + y * y);
            if (disc < 0) continue;
            auto r = exact_sqrt(static_cast<std::uint64_t>(disc));
            if (!r) continue;
            for (long z : {(b - static_cast<long>(*r)) / 2, (b + static_cast<long>(*r)) / 2}) {
                if (z >= y && z <= bound && x * x + y * y + z * z == 3 * x * y * z) out.emplace(x, y, z);
            }
        }
    }
    return out;
}

// Integer solutions of x^3 + y^3 + z^3 = 1 with all |coords| <= bound.
inline std::set<std::tuple<long, long, long>> fermat_census(long bound) {
    std::set<std::tuple<long, long, long>> out;
    for (long x = -bound; x <= bound; ++x) {
        for (long y = -bound; y <= bound; ++y) {
            const long r = 1 - x * x * x - y * y * y;
            long z = static_cast<long>(std::llround(std::cbrt(static_cast<double>(r))));
            for (long c = z - 1; c <= z + 1; ++c) {
                if (c * c * c == r && c >= -bound && c <= bound) out.emplace(x, y, c);
            }
        }
    }
    return out;
}

}  // namespace oracle

#endif
