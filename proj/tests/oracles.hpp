#pragma once

// Independent brute-force oracles for the test suites. Everything here is
// deliberately written against the textbook formulas with dense matrices and
// the module slot FIRST, so it shares no code or conventions with the
// production path it checks.

#include "cyclotome/algebra.hpp"

#include <cstdint>
#include <vector>

namespace oracle {

using cyclotome::Algebra;
using cyclotome::PrimeField;

using DenseMat = std::vector<std::vector<uint32_t>>; // row-major

inline int64_t dense_rank(DenseMat m, PrimeField f) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    int64_t rank = 0;
    size_t pr = 0;
    for (size_t c = 0; c < cols && pr < rows; ++c) {
        size_t piv = pr;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[pr], m[piv]);
        uint32_t inv = f.inv(m[pr][c]);
        for (size_t cc = c; cc < cols; ++cc) m[pr][cc] = f.mul(m[pr][cc], inv);
        for (size_t r = 0; r < rows; ++r) {
            if (r == pr || m[r][c] == 0) continue;
            uint32_t s = m[r][c];
            for (size_t cc = c; cc < cols; ++cc) m[r][cc] = f.sub(m[r][cc], f.mul(s, m[pr][cc]));
        }
        ++pr;
        ++rank;
    }
    return rank;
}

// Hochschild complex with the module slot first: C_n = M (x) A^(x)n,
// b(m (x) a_1 ... a_n) = ma_1 (x) a_2 ... + sum (-1)^i m (x) .. a_i a_(i+1) ..
//                        + (-1)^n a_n m (x) a_1 ... a_(n-1).
// Index encoding: BIG-endian digits (a_n least significant, m most), which
// is the reverse of the production convention.
inline DenseMat dense_hochschild_b(const Algebra& a, int n) {
    int64_t dim = 1;
    for (int k = 0; k <= n + 1; ++k) dim *= a.dim;
    int64_t dst = dim / a.dim;
    DenseMat out(size_t(dst), std::vector<uint32_t>(size_t(dim), 0));
    PrimeField f = a.field;
    std::vector<int> d(size_t(n + 2)); // d[0] = m, d[1..n+1] = a_1..a_(n+1)
    for (int64_t s = 0; s < dim; ++s) {
        int64_t x = s;
        for (int k = n + 1; k >= 0; --k) {
            d[size_t(k)] = int(x % a.dim);
            x /= a.dim;
        }
        auto emit = [&](const std::vector<std::pair<int, uint32_t>>& slots_done, int64_t enc, uint32_t coef) {
            (void)slots_done;
            out[size_t(enc)][size_t(s)] = f.add(out[size_t(enc)][size_t(s)], coef);
        };
        auto encode = [&](const std::vector<int>& digits) {
            int64_t e = 0;
            for (int k = 0; k < int(digits.size()); ++k) e = e * a.dim + digits[size_t(k)];
            return e;
        };
        for (int i = 0; i <= n + 1; ++i) {
            uint32_t sgn = i % 2 ? f.neg(1) : 1;
            if (i == 0) {
                for (auto& t : a.mult[d[0]][d[1]]) {
                    std::vector<int> e{int(t.row)};
                    for (int k = 2; k <= n + 1; ++k) e.push_back(d[size_t(k)]);
                    emit({}, encode(e), f.mul(sgn, t.val));
                }
            } else if (i <= n) {
                for (auto& t : a.mult[d[size_t(i)]][d[size_t(i + 1)]]) {
                    std::vector<int> e{d[0]};
                    for (int k = 1; k <= n + 1; ++k) {
                        if (k == i)
                            e.push_back(int(t.row));
                        else if (k != i + 1)
                            e.push_back(d[size_t(k)]);
                    }
                    emit({}, encode(e), f.mul(sgn, t.val));
                }
            } else {
                for (auto& t : a.mult[d[size_t(n + 1)]][d[0]]) {
                    std::vector<int> e{int(t.row)};
                    for (int k = 1; k <= n; ++k) e.push_back(d[size_t(k)]);
                    emit({}, encode(e), f.mul(sgn, t.val));
                }
            }
        }
    }
    return out;
}

inline std::vector<int64_t> dense_hh_dims(const Algebra& a, int n_max) {
    std::vector<int64_t> ranks(size_t(n_max), 0);
    for (int n = 0; n < n_max; ++n) ranks[size_t(n)] = dense_rank(dense_hochschild_b(a, n), a.field);
    std::vector<int64_t> out;
    int64_t dim = 1;
    for (int n = 0; n < n_max; ++n) {
        out.push_back(dim * a.dim - (n ? ranks[size_t(n - 1)] : 0) - ranks[size_t(n)]);
        dim *= a.dim;
    }
    return out;
}

} // namespace oracle
