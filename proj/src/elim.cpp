#include "cyclotome/elim.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>

namespace cyclotome {

Elim::Elim(PrimeField f, idx_t rows) : field_(f), rows_(rows), piv_at_(rows, -1) {
    acc_val_.assign(rows, 0);
    acc_mark_.assign(rows, 0);
}

Elim::Elim(const SparseMat& m) : Elim(m.field, m.rows) {
    for (idx_t c = 0; c < m.cols; ++c) add_column(m.col[c]);
}

void Elim::add_column(const SparseVec& v) {
    idx_t c = ncols_++;
    SparseVec rem = reduce(v);
    if (rem.empty()) {
        free_cols_.push_back(c);
        free_col_seq_.push_back(uint32_t(pivots_.size()));
        return;
    }
    idx_t lead = rem.back().row;
    uint32_t norm = rem.back().val;
    if (norm != 1) {
        uint32_t s = field_.inv(norm);
        for (auto& e : rem) e.val = field_.mul(e.val, s);
    }
    piv_at_[lead] = int32_t(pivots_.size());
    pivots_.push_back(Pivot{std::move(rem), c, norm});
}

uint32_t Elim::free_col_seq(idx_t c) const {
    auto it = std::lower_bound(free_cols_.begin(), free_cols_.end(), c);
    if (it == free_cols_.end() || *it != c) throw std::invalid_argument("free_col_seq: not a free column");
    return free_col_seq_[size_t(it - free_cols_.begin())];
}

std::vector<idx_t> Elim::pivot_rows() const {
    std::vector<idx_t> out;
    out.reserve(pivots_.size());
    for (idx_t r = 0; r < rows_; ++r)
        if (piv_at_[r] >= 0) out.push_back(r);
    return out;
}

SparseVec Elim::reduce(const SparseVec& v, std::vector<std::pair<uint32_t, uint32_t>>* coeffs,
                       uint32_t seq_limit) const {
    if (v.empty()) return {};
    ++epoch_;
    if (epoch_ == 0) {
        std::fill(acc_mark_.begin(), acc_mark_.end(), 0);
        epoch_ = 1;
    }
    std::priority_queue<idx_t> heap;
    auto scatter = [&](idx_t r, uint32_t val, uint32_t scale) {
        uint32_t add = field_.mul(val, scale);
        if (add == 0) return;
        if (acc_mark_[r] != epoch_) {
            acc_mark_[r] = epoch_;
            acc_val_[r] = add;
            heap.push(r);
        } else {
            acc_val_[r] = field_.add(acc_val_[r], add);
        }
    };
    for (auto& e : v) scatter(e.row, e.val, 1);

    SparseVec rem; // collected in decreasing row order, reversed at the end
    while (!heap.empty()) {
        idx_t r = heap.top();
        heap.pop();
        if (acc_mark_[r] != epoch_) continue; // stale heap entry
        acc_mark_[r] = 0;
        uint32_t val = acc_val_[r];
        if (val == 0) continue;
        int32_t pi = piv_at_[r];
        if (pi >= 0 && uint32_t(pi) < seq_limit) {
            if (coeffs) coeffs->push_back({uint32_t(pi), val});
            const SparseVec& pc = pivots_[pi].column;
            uint32_t s = field_.neg(val);
            for (size_t k = 0; k + 1 < pc.size(); ++k) scatter(pc[k].row, pc[k].val, s);
        } else {
            rem.push_back({r, val});
        }
    }
    std::reverse(rem.begin(), rem.end());
    return rem;
}

size_t Elim::pivot_store_nnz() const {
    size_t n = 0;
    for (auto& p : pivots_) n += p.column.size();
    return n;
}

const SparseVec& ElimSolver::expr(uint32_t seq) {
    auto it = expr_memo_.find(seq);
    if (it != expr_memo_.end()) return it->second;
    Elim::PivotInfo info = elim_.pivot(seq);
    std::vector<std::pair<uint32_t, uint32_t>> coeffs;
    SparseVec rem = elim_.reduce(column_of_(info.original_col), &coeffs, seq);
    // the replay must recreate this pivot exactly
    assert(!rem.empty() && rem.back().val == info.norm);
    PrimeField f = elim_.field();
    SparseVec e = combine(coeffs); // sum lambda_j expr(j)
    // expr = (unit(original_col) - e) / norm
    SparseVec unit{{info.original_col, 1}};
    SparseVec num = vec_axpy(f, unit, f.neg(1), e);
    if (info.norm != 1) num = vec_scale(f, num, f.inv(info.norm));
    return expr_memo_.emplace(seq, std::move(num)).first->second;
}

SparseVec ElimSolver::combine(const std::vector<std::pair<uint32_t, uint32_t>>& coeffs) {
    PrimeField f = elim_.field();
    SparseVec acc;
    for (auto& [seq, val] : coeffs) acc = vec_axpy(f, acc, val, expr(seq));
    return acc;
}

SparseVec ElimSolver::kernel_vector(idx_t c) {
    uint32_t limit = elim_.free_col_seq(c);
    std::vector<std::pair<uint32_t, uint32_t>> coeffs;
    SparseVec rem = elim_.reduce(column_of_(c), &coeffs, limit);
    if (!rem.empty()) throw std::logic_error("kernel_vector: replay did not reduce to zero");
    PrimeField f = elim_.field();
    SparseVec unit{{c, 1}};
    return vec_axpy(f, unit, f.neg(1), combine(coeffs));
}

std::optional<SparseVec> ElimSolver::solve(const SparseVec& b) {
    std::vector<std::pair<uint32_t, uint32_t>> coeffs;
    SparseVec rem = elim_.reduce(b, &coeffs);
    if (!rem.empty()) return std::nullopt;
    return combine(coeffs);
}

int64_t rank(const SparseMat& m) {
    Elim e(m);
    return e.rank();
}

} // namespace cyclotome
