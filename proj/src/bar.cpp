#include "cyclotome/bar.hpp"

#include "cyclotome/pool.hpp"

#include <functional>

namespace cyclotome {

// Generic generator: for each source basis tensor, a face replaces a set of
// positions by products. merge_pairs lists (lo, hi, out_slot): the product
// digit[lo]*digit[hi] goes to out_slot; keep maps untouched source slots to
// output slots.
namespace {

struct FaceSpec {
    std::vector<std::pair<int, int>> keep;                 // (src_slot, dst_slot)
    std::vector<std::array<int, 3>> merge;                 // (src_lo, src_hi, dst_slot)
};

SparseMat face_from_spec(const Algebra& a, int src_len, int dst_len, const FaceSpec& spec) {
    int64_t src_dim = checked_power(a.dim, src_len, size_budget());
    int64_t dst_dim = checked_power(a.dim, dst_len, size_budget());
    SparseMat out(a.field, idx_t(dst_dim), idx_t(src_dim));
    std::vector<idx_t> d(src_len), base(dst_len, 0);
    std::vector<int64_t> weight(dst_len); // mixed-radix place values
    {
        int64_t w = 1;
        for (int k = 0; k < dst_len; ++k, w *= a.dim) weight[k] = w;
    }
    for (int64_t s = 0; s < src_dim; ++s) {
        decode_mixed(s, a.dim, src_len, d);
        int64_t fixed = 0;
        for (auto& [from, to] : spec.keep) fixed += weight[to] * d[size_t(from)];
        // expand the product of the merged pairs
        SparseVec col{{0, 1}};
        bool dead = false;
        for (auto& [loS, hiS, toS] : spec.merge) {
            const SparseVec& prod = a.mult[d[size_t(loS)]][d[size_t(hiS)]];
            if (prod.empty()) {
                dead = true;
                break;
            }
            SparseVec next;
            for (auto& acc : col)
                for (auto& t : prod)
                    next.push_back({idx_t(acc.row + weight[toS] * t.row), a.field.mul(acc.val, t.val)});
            col = std::move(next);
        }
        if (dead) continue;
        for (auto& e : col) e.row += idx_t(fixed);
        std::sort(col.begin(), col.end(), [](const Ent& x, const Ent& y) { return x.row < y.row; });
        out.col[s] = std::move(col);
    }
    return out;
}

} // namespace

SparseMat face_matrix(const Algebra& a, int N, int i) {
    if (N < 2 || i < 0 || i > N - 1) throw UsageError("face_matrix: bad index");
    FaceSpec spec;
    if (i <= N - 2) {
        for (int k = 0; k < i; ++k) spec.keep.push_back({k, k});
        spec.merge.push_back({i, i + 1, i});
        for (int k = i + 2; k < N; ++k) spec.keep.push_back({k, k - 1});
    } else { // wrap: e_(N-1) e_0 into slot 0
        spec.merge.push_back({N - 1, 0, 0});
        for (int k = 1; k <= N - 2; ++k) spec.keep.push_back({k, k});
    }
    return face_from_spec(a, N, N - 1, spec);
}

SparseMat tau_matrix(const Algebra& a, int N, bool with_sign) {
    int64_t dim = checked_power(a.dim, N, size_budget());
    SparseMat out(a.field, idx_t(dim), idx_t(dim));
    uint32_t sgn = (with_sign && (N - 1) % 2) ? a.field.neg(1) : 1;
    std::vector<idx_t> d(N), e(N);
    for (int64_t s = 0; s < dim; ++s) {
        decode_mixed(s, a.dim, N, d);
        for (int k = 0; k < N; ++k) e[size_t((k + 1) % N)] = d[size_t(k)];
        out.col[s].push_back({idx_t(encode_mixed(e, a.dim)), sgn});
    }
    return out;
}

static SparseMat alternating_face_sum(const Algebra& a, int N, int upto,
                                      const std::function<SparseMat(int)>& face) {
    int64_t src_dim = checked_power(a.dim, N, size_budget());
    int64_t dst_dim = checked_power(a.dim, N - 1, size_budget());
    SparseMat acc(a.field, idx_t(dst_dim), idx_t(src_dim));
    for (int i = 0; i <= upto; ++i) {
        SparseMat f = face(i);
        for (idx_t c = 0; c < acc.cols; ++c)
            acc.col[c] = vec_axpy(a.field, acc.col[c], i % 2 ? a.field.neg(1) : 1, f.col[c]);
    }
    return acc;
}

SparseMat b_matrix_cyclic(const Algebra& a, int N) {
    return alternating_face_sum(a, N, N - 1, [&](int i) { return face_matrix(a, N, i); });
}

SparseMat bprime_matrix_cyclic(const Algebra& a, int N) {
    return alternating_face_sum(a, N, N - 2, [&](int i) { return face_matrix(a, N, i); });
}

SparseMat p_face_matrix(const Algebra& a, int p, int n, int i) {
    if (p < 1) throw UsageError("p_face_matrix: p >= 1");
    if (n < 2 || i < 0 || i > n - 1) throw UsageError("p_face_matrix: bad index");
    int N = p * n, M = p * (n - 1);
    FaceSpec spec;
    if (i <= n - 2) {
        // merge (an+i, an+i+1) -> slot a(n-1)+i in every block
        for (int blk = 0; blk < p; ++blk) {
            for (int c = 0; c < i; ++c) spec.keep.push_back({blk * n + c, blk * (n - 1) + c});
            spec.merge.push_back({blk * n + i, blk * n + i + 1, blk * (n - 1) + i});
            for (int c = i + 2; c < n; ++c) spec.keep.push_back({blk * n + c, blk * (n - 1) + c - 1});
        }
    } else {
        // wrap face: pairs (an-1 mod pn, an) -> slot a(n-1)
        for (int blk = 0; blk < p; ++blk) {
            spec.merge.push_back({(blk * n - 1 + N) % N, blk * n, blk * (n - 1)});
            for (int c = 1; c <= n - 2; ++c) spec.keep.push_back({blk * n + c, blk * (n - 1) + c});
        }
    }
    (void)M;
    return face_from_spec(a, N, p * (n - 1), spec);
}

// sign rule (-1)^(n-1) by the Lambda_p level, not the tensor length; the
// two agree for p odd and in characteristic 2, and only the level rule
// satisfies the face/tau relations for even p over odd characteristic
SparseMat p_tau_matrix(const Algebra& a, int p, int n, bool with_sign) {
    SparseMat t = tau_matrix(a, p * n, false);
    if (with_sign && (n - 1) % 2) t = mat_scale(t, -1);
    return t;
}

std::pair<SparseMat, SparseMat> p_differentials(const Algebra& a, int p, int n) {
    // build both sums in one pass over the faces
    int64_t src_dim = checked_power(a.dim, p * n, size_budget());
    int64_t dst_dim = checked_power(a.dim, p * (n - 1), size_budget());
    SparseMat bp(a.field, idx_t(dst_dim), idx_t(src_dim));
    SparseMat bpp(a.field, idx_t(dst_dim), idx_t(src_dim));
    for (int i = 0; i <= n - 1; ++i) {
        SparseMat f = p_face_matrix(a, p, n, i);
        uint32_t s = i % 2 ? a.field.neg(1) : 1;
        for (idx_t c = 0; c < bp.cols; ++c) {
            bp.col[c] = vec_axpy(a.field, bp.col[c], s, f.col[c]);
            if (i <= n - 2) bpp.col[c] = vec_axpy(a.field, bpp.col[c], s, f.col[c]);
        }
    }
    return {std::move(bp), std::move(bpp)};
}

// The product arc must be anchored at the base point for M b_p = b M to
// hold on the nose: multiply positions 0..pn-n into slot 0 and keep the
// last n-1 positions. (Anchoring the arc at slot n-1 instead commutes with
// every face except the wrap one.)
SparseMat comparison_level(const Algebra& a, int p, int n) {
    int N = p * n;
    int64_t src_dim = checked_power(a.dim, N, size_budget());
    int64_t dst_dim = checked_power(a.dim, n, size_budget());
    SparseMat out(a.field, idx_t(dst_dim), idx_t(src_dim));
    std::vector<idx_t> d(N);
    std::vector<int64_t> weight(n);
    {
        int64_t w = 1;
        for (int k = 0; k < n; ++k, w *= a.dim) weight[k] = w;
    }
    for (int64_t s = 0; s < src_dim; ++s) {
        decode_mixed(s, a.dim, N, d);
        int64_t fixed = 0;
        for (int c = 1; c < n; ++c) fixed += weight[c] * d[size_t(N - n + c)];
        SparseVec acc{{d[0], 1}};
        for (int k = 1; k <= N - n && !acc.empty(); ++k) acc = a.mul(acc, SparseVec{{d[size_t(k)], 1}});
        SparseVec col;
        for (auto& e : acc) col.push_back({idx_t(fixed + e.row), e.val});
        std::sort(col.begin(), col.end(), [](const Ent& x, const Ent& y) { return x.row < y.row; });
        out.col[s] = std::move(col);
    }
    return out;
}

ChainMap comparison_map_M(const Algebra& a, int p, int n_max) {
    ChainComplex src, dst;
    src.field = dst.field = a.field;
    src.lo = dst.lo = 0; // degree k <-> level [k+1]
    for (int lvl = 1; lvl <= n_max; ++lvl) {
        src.dims.push_back(idx_t(checked_power(a.dim, p * lvl, size_budget())));
        dst.dims.push_back(idx_t(checked_power(a.dim, lvl, size_budget())));
    }
    src.diff.resize(size_t(n_max));
    dst.diff.resize(size_t(n_max));
    for (int lvl = 2; lvl <= n_max; ++lvl) {
        src.diff[size_t(lvl - 1)] = p_differentials(a, p, lvl).first;
        dst.diff[size_t(lvl - 1)] = b_matrix_cyclic(a, lvl);
    }
    ChainMap M;
    M.src = std::move(src);
    M.dst = std::move(dst);
    M.shift = 0;
    for (int lvl = 1; lvl <= n_max; ++lvl) M.f.push_back(comparison_level(a, p, lvl));
    // M b_p = b M, exactly, at every built level
    for (int k = 1; k < n_max; ++k) {
        SparseMat lhs = mat_mul(M.f[size_t(k - 1)], M.src.diff[size_t(k)]);
        SparseMat rhs = mat_mul(M.dst.diff[size_t(k)], M.f[size_t(k)]);
        if (lhs != rhs)
            throw ChainMapViolation("comparison_map_M: M b_p != b M at level " + std::to_string(k + 1));
    }
    return M;
}

int64_t bar_dim(const Algebra& a, const Bimodule& m, int n) {
    int64_t d = checked_power(a.dim, n, size_budget());
    if (m.dim != 0 && d > size_budget() / m.dim)
        throw SizeBudgetExceeded("bar level " + std::to_string(n));
    return d * m.dim;
}

SparseMat bprime_matrix(const Algebra& a, const Bimodule& m, int n) {
    int64_t src_dim = bar_dim(a, m, n + 1);
    int64_t dst_dim = bar_dim(a, m, n);
    int64_t apow_dst = checked_power(a.dim, n, size_budget());
    SparseMat out(a.field, idx_t(dst_dim), idx_t(src_dim));
    std::vector<idx_t> d(n + 1);
    std::vector<int64_t> weight(n + 1);
    {
        int64_t w = 1;
        for (int k = 0; k <= n; ++k, w *= a.dim) weight[k] = w;
    }
    for (int64_t s = 0; s < src_dim; ++s) {
        int64_t mi = s / weight[n] / a.dim; // module digit: most significant
        int64_t arest = s % (weight[n] * a.dim);
        decode_mixed(arest, a.dim, n + 1, d);
        SparseVec col;
        for (int i = 0; i <= n; ++i) {
            uint32_t sgn = i % 2 ? a.field.neg(1) : 1;
            if (i <= n - 1) {
                // merge a_i a_(i+1)
                int64_t fixed = 0;
                for (int k = 0; k < i; ++k) fixed += weight[k] * d[size_t(k)];
                for (int k = i + 2; k <= n; ++k) fixed += weight[k - 1] * d[size_t(k)];
                fixed += mi * apow_dst;
                for (auto& t : a.mult[d[size_t(i)]][d[size_t(i + 1)]])
                    col.push_back({idx_t(fixed + weight[i] * t.row), a.field.mul(sgn, t.val)});
            } else {
                // a_n acts on the module from the left
                int64_t fixed = 0;
                for (int k = 0; k < n; ++k) fixed += weight[k] * d[size_t(k)];
                for (auto& t : m.left[d[size_t(n)]].col[size_t(mi)])
                    col.push_back({idx_t(fixed + int64_t(t.row) * apow_dst), a.field.mul(sgn, t.val)});
            }
        }
        std::sort(col.begin(), col.end(), [](const Ent& x, const Ent& y) { return x.row < y.row; });
        // merge duplicates
        SparseVec merged;
        for (auto& e : col) {
            if (!merged.empty() && merged.back().row == e.row) {
                uint32_t v = a.field.add(merged.back().val, e.val);
                if (v)
                    merged.back().val = v;
                else
                    merged.pop_back();
            } else {
                merged.push_back(e);
            }
        }
        out.col[s] = std::move(merged);
    }
    return out;
}

SparseMat hochschild_b_matrix(const Algebra& a, const Bimodule& m, int n) {
    SparseMat out = bprime_matrix(a, m, n);
    int64_t src_dim = bar_dim(a, m, n + 1);
    int64_t apow_dst = checked_power(a.dim, n, size_budget());
    std::vector<idx_t> d(n + 1);
    std::vector<int64_t> weight(n + 1);
    {
        int64_t w = 1;
        for (int k = 0; k <= n; ++k, w *= a.dim) weight[k] = w;
    }
    // the wrap term enters with -1 at every level (rotating the tensors to
    // the module-first ordering shows these are the simplicial signs)
    uint32_t sgn = a.field.neg(1);
    for (int64_t s = 0; s < src_dim; ++s) {
        int64_t mi = s / weight[n] / a.dim;
        int64_t arest = s % (weight[n] * a.dim);
        decode_mixed(arest, a.dim, n + 1, d);
        // t: a_0 (x) ... (x) a_n (x) m -> a_1 (x) ... (x) a_n (x) m a_0
        int64_t fixed = 0;
        for (int k = 1; k <= n; ++k) fixed += weight[k - 1] * d[size_t(k)];
        SparseVec extra;
        for (auto& t : m.right[d[0]].col[size_t(mi)])
            extra.push_back({idx_t(fixed + int64_t(t.row) * apow_dst), a.field.mul(sgn, t.val)});
        std::sort(extra.begin(), extra.end(), [](const Ent& x, const Ent& y) { return x.row < y.row; });
        out.col[s] = vec_add(a.field, out.col[s], extra);
    }
    return out;
}

std::vector<int64_t> hh_dims(const Algebra& a, const Bimodule& m, int n_max) {
    std::vector<int64_t> ranks(size_t(n_max), 0);
    parallel_for(size_t(n_max), [&](size_t n) { ranks[n] = rank(hochschild_b_matrix(a, m, int(n))); });
    std::vector<int64_t> out;
    for (int n = 0; n < n_max; ++n) {
        int64_t dim_n = bar_dim(a, m, n);
        // d_n out of C_n is ranks[n-1]; into is ranks[n]
        int64_t rk_out = n == 0 ? 0 : ranks[size_t(n - 1)];
        out.push_back(dim_n - rk_out - ranks[size_t(n)]);
    }
    return out;
}

std::vector<int64_t> hh_dims(const Algebra& a, int n_max) {
    return hh_dims(a, diagonal_bimodule(a), n_max);
}

} // namespace cyclotome
