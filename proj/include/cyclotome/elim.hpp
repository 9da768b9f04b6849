#pragma once

#include "cyclotome/sparse.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace cyclotome {

// Sparse Gaussian elimination in column-echelon form with the max-leading
// pivot rule: the pivot position of a column is its largest remaining row
// index. Columns are processed left to right, so
//   - the pivot rows are the leading positions of the column span, and
//   - each dependent ("free") column c carries a kernel vector whose leading
//     coordinate is c itself.
// Both facts together let homology bases be read off as pivot-set
// differences without materializing full kernel bases; see linalg.cpp.
//
// The scheme never mixes connected components of the nonzero pattern, which
// keeps bar-type matrices cheap: weight/product classes eliminate
// independently with no cross fill-in.
class Elim {
  public:
    Elim(PrimeField f, idx_t rows);
    explicit Elim(const SparseMat& m);

    // Streaming interface: columns must arrive in increasing column order.
    void add_column(const SparseVec& v);

    PrimeField field() const { return field_; }
    idx_t rows() const { return rows_; }
    idx_t cols_seen() const { return ncols_; }
    int64_t rank() const { return int64_t(pivots_.size()); }
    const std::vector<idx_t>& free_cols() const { return free_cols_; }
    uint32_t free_col_seq(idx_t c) const; // #pivots existing when c arrived
    std::vector<idx_t> pivot_rows() const;
    bool is_pivot_row(idx_t r) const { return r < piv_at_.size() && piv_at_[r] >= 0; }
    int32_t pivot_seq_at_row(idx_t r) const { return r < piv_at_.size() ? piv_at_[r] : -1; }

    // Reduce v against pivots with seq < seq_limit by repeated leading
    // elimination; remainder's leading coordinate is not an eligible pivot
    // row. coeffs, if given, records (pivot seq, coefficient) pairs.
    SparseVec reduce(const SparseVec& v, std::vector<std::pair<uint32_t, uint32_t>>* coeffs = nullptr,
                     uint32_t seq_limit = UINT32_MAX) const;

    bool in_span(const SparseVec& v) const { return reduce(v).empty(); }

    struct PivotInfo {
        const SparseVec& column; // normalized, leading coefficient 1
        idx_t original_col;
        uint32_t norm; // leading value before normalization
    };
    PivotInfo pivot(uint32_t seq) const {
        const Pivot& p = pivots_[seq];
        return {p.column, p.original_col, p.norm};
    }
    size_t pivot_store_nnz() const;

  private:
    struct Pivot {
        SparseVec column;
        idx_t original_col;
        uint32_t norm;
    };

    PrimeField field_;
    idx_t rows_ = 0;
    idx_t ncols_ = 0;
    std::vector<int32_t> piv_at_; // row -> pivot seq or -1
    std::vector<Pivot> pivots_;
    std::vector<idx_t> free_cols_;
    std::vector<uint32_t> free_col_seq_;

    mutable std::vector<uint32_t> acc_val_;
    mutable std::vector<uint32_t> acc_mark_;
    mutable uint32_t epoch_ = 0;
};

// Solver layered on an Elim plus access to the original columns. Expands
// pivot expressions over original columns on demand (memoized), giving exact
// kernel vectors and particular solutions without a transform matrix.
class ElimSolver {
  public:
    ElimSolver(const Elim& elim, std::function<SparseVec(idx_t)> column_of)
        : elim_(elim), column_of_(std::move(column_of)) {}

    // Kernel vector for free column c: unit at c minus earlier columns;
    // leading coordinate is c itself.
    SparseVec kernel_vector(idx_t c);

    // Solve  M x = b  (x over original columns); nullopt if b not in span.
    std::optional<SparseVec> solve(const SparseVec& b);

  private:
    const Elim& elim_;
    std::function<SparseVec(idx_t)> column_of_;
    std::map<uint32_t, SparseVec> expr_memo_; // pivot seq -> expression over original columns

    const SparseVec& expr(uint32_t seq);
    SparseVec combine(const std::vector<std::pair<uint32_t, uint32_t>>& coeffs);
};

int64_t rank(const SparseMat& m);

} // namespace cyclotome
