#include "cyclotome/sparse.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cyclotome {

void SparseMat::normalize() {
    for (auto& c : col) {
        if (c.empty()) continue;
        std::sort(c.begin(), c.end(), [](const Ent& a, const Ent& b) { return a.row < b.row; });
        SparseVec out;
        out.reserve(c.size());
        for (auto& e : c) {
            if (!out.empty() && out.back().row == e.row) {
                uint32_t v = field.add(out.back().val, e.val);
                if (v == 0)
                    out.pop_back();
                else
                    out.back().val = v;
            } else if (e.val != 0) {
                out.push_back(e);
            }
        }
        c = std::move(out);
    }
}

SparseVec vec_axpy(const PrimeField& f, const SparseVec& a, uint32_t s, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].row < b[j].row) {
            out.push_back(a[i++]);
        } else if (a[i].row > b[j].row) {
            uint32_t v = f.mul(s, b[j].val);
            if (v) out.push_back({b[j].row, v});
            ++j;
        } else {
            uint32_t v = f.add(a[i].val, f.mul(s, b[j].val));
            if (v) out.push_back({a[i].row, v});
            ++i, ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) {
        uint32_t v = f.mul(s, b[j].val);
        if (v) out.push_back({b[j].row, v});
    }
    return out;
}

SparseVec vec_add(const PrimeField& f, const SparseVec& a, const SparseVec& b) { return vec_axpy(f, a, 1, b); }

SparseVec vec_scale(const PrimeField& f, const SparseVec& a, uint32_t s) {
    SparseVec out;
    s = f.reduce(s);
    if (s == 0) return out;
    out.reserve(a.size());
    for (auto& e : a) {
        uint32_t v = f.mul(e.val, s);
        if (v) out.push_back({e.row, v});
    }
    return out;
}

SparseMat mat_add(const SparseMat& a, const SparseMat& b) {
    if (a.field != b.field || a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("mat_add: shape/field mismatch");
    SparseMat out(a.field, a.rows, a.cols);
    for (idx_t c = 0; c < a.cols; ++c) out.col[c] = vec_add(a.field, a.col[c], b.col[c]);
    return out;
}

SparseMat mat_sub(const SparseMat& a, const SparseMat& b) { return mat_add(a, mat_scale(b, -1)); }

SparseMat mat_scale(const SparseMat& a, int64_t s) {
    SparseMat out(a.field, a.rows, a.cols);
    uint32_t w = a.field.reduce(s);
    for (idx_t c = 0; c < a.cols; ++c) out.col[c] = vec_scale(a.field, a.col[c], w);
    return out;
}

SparseVec mat_apply(const SparseMat& a, const SparseVec& v) {
    SparseVec acc;
    for (auto& e : v) {
        if (e.row >= a.cols) throw std::invalid_argument("mat_apply: index out of range");
        acc = vec_axpy(a.field, acc, e.val, a.col[e.row]);
    }
    return acc;
}

SparseMat mat_mul(const SparseMat& a, const SparseMat& b) {
    if (a.field != b.field || a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    SparseMat out(a.field, a.rows, b.cols);
    for (idx_t c = 0; c < b.cols; ++c) out.col[c] = mat_apply(a, b.col[c]);
    return out;
}

SparseMat mat_transpose(const SparseMat& a) {
    SparseMat out(a.field, a.cols, a.rows);
    std::vector<size_t> cnt(a.rows, 0);
    for (idx_t c = 0; c < a.cols; ++c)
        for (auto& e : a.col[c]) cnt[e.row]++;
    for (idx_t r = 0; r < a.rows; ++r) out.col[r].reserve(cnt[r]);
    for (idx_t c = 0; c < a.cols; ++c)
        for (auto& e : a.col[c]) out.col[e.row].push_back({c, e.val});
    return out;
}

SparseMat mat_pow(const SparseMat& a, uint64_t e) {
    if (a.rows != a.cols) throw std::invalid_argument("mat_pow: not square");
    SparseMat r = SparseMat::identity(a.field, a.rows);
    SparseMat base = a;
    while (e) {
        if (e & 1) r = mat_mul(base, r);
        base = mat_mul(base, base);
        e >>= 1;
    }
    return r;
}

void mat_insert_block(SparseMat& dst, const SparseMat& src, idx_t row_off, idx_t col_off, int64_t scale) {
    uint32_t s = dst.field.reduce(scale);
    if (s == 0) return;
    for (idx_t c = 0; c < src.cols; ++c)
        for (auto& e : src.col[c]) {
            uint32_t v = dst.field.mul(e.val, s);
            if (v) dst.col[col_off + c].push_back({row_off + e.row, v});
        }
}

void write_triples(std::ostream& os, const SparseMat& m) {
    os << m.field.p << ' ' << m.rows << ' ' << m.cols << '\n';
    // row-major: collect and sort
    std::vector<std::pair<std::pair<idx_t, idx_t>, uint32_t>> all;
    all.reserve(m.nnz());
    for (idx_t c = 0; c < m.cols; ++c)
        for (auto& e : m.col[c]) all.push_back({{e.row, c}, e.val});
    std::sort(all.begin(), all.end());
    for (auto& t : all) os << t.first.first << ' ' << t.first.second << ' ' << t.second << '\n';
}

SparseMat read_triples(std::istream& is) {
    uint32_t p;
    idx_t rows, cols;
    if (!(is >> p >> rows >> cols)) throw std::runtime_error("read_triples: bad header");
    SparseMat m(PrimeField(p), rows, cols);
    idx_t r, c;
    int64_t v;
    while (is >> r >> c >> v) {
        if (r >= rows || c >= cols) throw std::runtime_error("read_triples: index out of range");
        m.add_entry(r, c, v);
    }
    m.normalize();
    return m;
}

} // namespace cyclotome
