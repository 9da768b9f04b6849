#pragma once

#include "cyclotome/fp.hpp"

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace cyclotome {

using idx_t = uint32_t;

// One nonzero coordinate of a sparse column vector.
struct Ent {
    idx_t row;
    uint32_t val; // nonzero, in [1, p)
    bool operator==(const Ent& o) const { return row == o.row && val == o.val; }
};

using SparseVec = std::vector<Ent>; // sorted by row, no zeros, no duplicates

// Column-major sparse matrix over a prime field. Entries are kept sorted
// within each column; stored zeros are forbidden. Zero rows/cols are legal.
struct SparseMat {
    PrimeField field;
    idx_t rows = 0;
    idx_t cols = 0;
    std::vector<SparseVec> col;

    SparseMat() = default;
    SparseMat(PrimeField f, idx_t r, idx_t c) : field(f), rows(r), cols(c), col(c) {}

    static SparseMat identity(PrimeField f, idx_t n) {
        SparseMat m(f, n, n);
        for (idx_t i = 0; i < n; ++i) m.col[i].push_back({i, 1});
        return m;
    }
    static SparseMat zero(PrimeField f, idx_t r, idx_t c) { return SparseMat(f, r, c); }

    void add_entry(idx_t r, idx_t c, int64_t v) {
        uint32_t w = field.reduce(v);
        if (w != 0) col[c].push_back({r, w});
    }
    // sort columns and merge duplicate coordinates
    void normalize();

    size_t nnz() const {
        size_t n = 0;
        for (auto& c : col) n += c.size();
        return n;
    }
    uint32_t at(idx_t r, idx_t c) const {
        for (auto& e : col[c])
            if (e.row == r) return e.val;
        return 0;
    }
    bool is_zero() const {
        for (auto& c : col)
            if (!c.empty()) return false;
        return true;
    }
    bool operator==(const SparseMat& o) const {
        if (field != o.field || rows != o.rows || cols != o.cols) return false;
        for (idx_t c = 0; c < cols; ++c) {
            if (col[c].size() != o.col[c].size()) return false;
            for (size_t k = 0; k < col[c].size(); ++k)
                if (col[c][k].row != o.col[c][k].row || col[c][k].val != o.col[c][k].val) return false;
        }
        return true;
    }
    bool operator!=(const SparseMat& o) const { return !(*this == o); }
};

SparseVec vec_add(const PrimeField& f, const SparseVec& a, const SparseVec& b);
SparseVec vec_scale(const PrimeField& f, const SparseVec& a, uint32_t s);
// a + s*b
SparseVec vec_axpy(const PrimeField& f, const SparseVec& a, uint32_t s, const SparseVec& b);

SparseMat mat_add(const SparseMat& a, const SparseMat& b);
SparseMat mat_sub(const SparseMat& a, const SparseMat& b);
SparseMat mat_scale(const SparseMat& a, int64_t s);
SparseMat mat_mul(const SparseMat& a, const SparseMat& b);
SparseMat mat_transpose(const SparseMat& a);
SparseVec mat_apply(const SparseMat& a, const SparseVec& v);
// power of a square matrix
SparseMat mat_pow(const SparseMat& a, uint64_t e);
// block-diagonal stack: if rows/cols offsets given
void mat_insert_block(SparseMat& dst, const SparseMat& src, idx_t row_off, idx_t col_off, int64_t scale = 1);

// Interchange format: header "p rows cols" then one "r c v" line per entry,
// row-major deterministic order.
void write_triples(std::ostream& os, const SparseMat& m);
SparseMat read_triples(std::istream& is);

} // namespace cyclotome
