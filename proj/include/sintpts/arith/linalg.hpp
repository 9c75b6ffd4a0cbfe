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

#ifndef SINTPTS_ARITH_LINALG_HPP
#define SINTPTS_ARITH_LINALG_HPP

#include "sintpts/arith/rational.hpp"

#include <vector>

namespace sintpts {

using RatVector = std::vector<SRational>;
using RatMatrix = std::vector<RatVector>;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

inline RatMatrix identity_matrix(std::size_t n) {
    RatMatrix m(n, RatVector(n, SRational(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = SRational(1);
    return m;
}

inline RatMatrix to_rat(const IntMatrix& a) {
    RatMatrix m;
    for (const auto& row : a) {
        RatVector r;
        for (const Integer& v : row) r.emplace_back(v);
        m.push_back(std::move(r));
    }
    return m;
}

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RatMatrix c(n, RatVector(m, SRational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    }
    return c;
}

inline RatVector mat_vec(const RatMatrix& a, const RatVector& x) {
    RatVector y(a.size(), SRational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    }
    return y;
}

inline SRational determinant(RatMatrix a) {
    const std::size_t n = a.size();
    SRational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return SRational(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        const SRational inv = a[c][c].inverse();
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c].is_zero()) continue;
            const SRational f = a[r][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

inline RatMatrix inverse(RatMatrix a) {
    const std::size_t n = a.size();
    RatMatrix inv = identity_matrix(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw Error("inverse of a singular matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        const SRational s = a[c][c].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= s;
            inv[c][j] *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            const SRational f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

inline std::size_t rank(RatMatrix a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c].is_zero()) continue;
            const SRational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

// Unimodular column reduction A*U = [H | 0]; returns (U, number of pivots).
inline std::pair<IntMatrix, std::size_t> column_reduce(IntMatrix a) {
    const std::size_t m = a.size(), n = m == 0 ? 0 : a[0].size();
    IntMatrix u(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto combine = [&](std::size_t c1, std::size_t c2, const Integer& p, const Integer& q, const Integer& r,
                       const Integer& s) {
        // (col c1, col c2) <- (p*c1 + q*c2, r*c1 + s*c2)
        for (IntMatrix* mat : {&a, &u}) {
            for (auto& row : *mat) {
                const Integer x = row[c1], y = row[c2];
                row[c1] = p * x + q * y;
                row[c2] = r * x + s * y;
            }
        }
    };
    std::size_t piv = 0;
    for (std::size_t i = 0; i < m && piv < n; ++i) {
        for (std::size_t j = piv + 1; j < n; ++j) {
            if (sgn(a[i][j]) == 0) continue;
            const Integer x = a[i][piv], y = a[i][j];
            Integer s, t;
            const Integer g = ext_gcd(x, y, s, t);
            combine(piv, j, s, t, -y / g, x / g);
        }
        if (sgn(a[i][piv]) != 0) ++piv;
    }
    return {u, piv};
}

// A Z-basis of the integer kernel {x : A x = 0}, as vectors.
inline IntMatrix integer_kernel(const IntMatrix& a, std::size_t ncols) {
    IntMatrix padded = a;
    if (padded.empty()) padded.push_back(IntVector(ncols, Integer(0)));
    auto [u, piv] = column_reduce(padded);
    IntMatrix basis;
    for (std::size_t j = piv; j < ncols; ++j) {
        IntVector v(ncols);
        for (std::size_t i = 0; i < ncols; ++i) v[i] = u[i][j];
        basis.push_back(v);
    }
    return basis;
}

// Given r independent integer rows, returns (index of their lattice in its saturation,
// n - r rows completing them to a basis of Z^n when the index is 1).
inline std::pair<Integer, IntMatrix> unimodular_completion(const IntMatrix& rows, std::size_t n) {
    auto [u, piv] = column_reduce(rows);
    if (piv != rows.size()) throw Error("unimodular_completion: rows are dependent");
    RatMatrix ru = to_rat(u);
    RatMatrix prod = mat_mul(to_rat(rows), ru);
    Integer index = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) index *= int_abs(prod[i][i].num());
    RatMatrix uinv = inverse(ru);
    IntMatrix comp;
    for (std::size_t i = rows.size(); i < n; ++i) {
        IntVector row;
        for (const SRational& v : uinv[i]) row.push_back(v.num());
        comp.push_back(row);
    }
    return {index, comp};
}

}  // namespace sintpts

#endif
