#include "cyclotome/linalg.hpp"

#include <algorithm>

namespace cyclotome {

// Full back-reduction of columns with distinct leadings into canonical RCEF.
static SparseMat rcef(PrimeField f, idx_t ambient, std::vector<SparseVec> cols) {
    std::sort(cols.begin(), cols.end(),
              [](const SparseVec& a, const SparseVec& b) { return a.back().row < b.back().row; });
    // normalize leadings and clear other columns' leading rows
    for (auto& c : cols) {
        uint32_t lv = c.back().val;
        if (lv != 1) c = vec_scale(f, c, f.inv(lv));
    }
    for (size_t i = 0; i < cols.size(); ++i) {
        // reduce column i against all fully-reduced earlier columns
        for (size_t j = 0; j < i; ++j) {
            idx_t pr = cols[j].back().row;
            uint32_t v = 0;
            for (auto& e : cols[i])
                if (e.row == pr) {
                    v = e.val;
                    break;
                }
            if (v) cols[i] = vec_axpy(f, cols[i], f.neg(v), cols[j]);
        }
    }
    SparseMat m(f, ambient, idx_t(cols.size()));
    m.col = std::move(cols);
    return m;
}

Subspace subspace_from_columns(PrimeField f, idx_t ambient, const std::vector<SparseVec>& cols) {
    Elim e(f, ambient);
    for (auto& c : cols) e.add_column(c);
    std::vector<SparseVec> basis;
    basis.reserve(size_t(e.rank()));
    for (idx_t r = 0; r < ambient; ++r) {
        int32_t s = e.pivot_seq_at_row(r);
        if (s >= 0) basis.push_back(e.pivot(uint32_t(s)).column);
    }
    return Subspace{ambient, rcef(f, ambient, std::move(basis))};
}

Subspace kernel_basis(const SparseMat& m) {
    Elim e(m);
    ElimSolver solver(e, [&m](idx_t c) { return m.col[c]; });
    std::vector<SparseVec> vecs;
    vecs.reserve(e.free_cols().size());
    for (idx_t c : e.free_cols()) vecs.push_back(solver.kernel_vector(c));
    return Subspace{m.cols, rcef(m.field, m.cols, std::move(vecs))};
}

Subspace image_basis(const SparseMat& m) {
    std::vector<SparseVec> cols(m.col.begin(), m.col.end());
    return subspace_from_columns(m.field, m.rows, cols);
}

bool subspace_contains(const Subspace& s, const SparseVec& v) {
    PrimeField f = s.field();
    SparseVec w = v;
    for (auto it = s.basis.col.rbegin(); it != s.basis.col.rend(); ++it) {
        if (w.empty()) return true;
        idx_t pr = it->back().row;
        if (w.back().row < pr) continue;
        uint32_t val = 0;
        for (auto& e : w)
            if (e.row == pr) {
                val = e.val;
                break;
            }
        if (val) w = vec_axpy(f, w, f.neg(val), *it);
    }
    return w.empty();
}

Subspace quotient_basis(const Subspace& sub, const Subspace& sup) {
    if (sub.ambient != sup.ambient) throw NotContained("ambient dimension mismatch");
    for (auto& c : sub.basis.col)
        if (!subspace_contains(sup, c)) throw NotContained("sub is not inside sup");
    // sub <= sup in matched RCEF, so pivot rows of sub are pivot rows of sup;
    // the remaining sup columns represent a basis of sup/sub.
    std::vector<idx_t> sub_piv = sub.pivots();
    std::vector<SparseVec> reps;
    for (auto& c : sup.basis.col)
        if (!std::binary_search(sub_piv.begin(), sub_piv.end(), c.back().row)) reps.push_back(c);
    SparseMat m(sup.field(), sup.ambient, idx_t(reps.size()));
    m.col = std::move(reps);
    return Subspace{sup.ambient, std::move(m)};
}

// Express w in quotient coordinates: reduce against sub's echelon and the
// representatives (all with distinct leadings); w must lie in sup.
SparseVec quotient_coords_in(const Subspace& sub, const Subspace& reps, SparseVec w, const char* what) {
    PrimeField f = reps.field();
    std::vector<Ent> coords;
    while (!w.empty()) {
        idx_t lead = w.back().row;
        uint32_t val = w.back().val;
        bool hit = false;
        for (idx_t i = 0; i < reps.basis.cols; ++i)
            if (reps.basis.col[i].back().row == lead) {
                coords.push_back({i, val});
                w = vec_axpy(f, w, f.neg(val), reps.basis.col[i]);
                hit = true;
                break;
            }
        if (hit) continue;
        for (auto& c : sub.basis.col)
            if (c.back().row == lead) {
                w = vec_axpy(f, w, f.neg(val), c);
                hit = true;
                break;
            }
        if (!hit) throw NotChainCompatible(std::string(what) + ": vector escapes the target subspace");
    }
    std::sort(coords.begin(), coords.end(), [](const Ent& a, const Ent& b) { return a.row < b.row; });
    return coords;
}

SparseMat induced_map(const SparseMat& f, const Subspace& src_ker, const Subspace& src_im,
                      const Subspace& dst_ker, const Subspace& dst_im) {
    for (auto& c : src_ker.basis.col)
        if (!subspace_contains(dst_ker, mat_apply(f, c)))
            throw NotChainCompatible("f does not map src_ker into dst_ker");
    for (auto& c : src_im.basis.col)
        if (!subspace_contains(dst_im, mat_apply(f, c)))
            throw NotChainCompatible("f does not map src_im into dst_im");
    Subspace src_q = quotient_basis(src_im, src_ker);
    Subspace dst_q = quotient_basis(dst_im, dst_ker);
    SparseMat out(f.field, dst_q.dim(), src_q.dim());
    for (idx_t j = 0; j < src_q.dim(); ++j) {
        SparseVec w = mat_apply(f, src_q.basis.col[j]);
        out.col[j] = quotient_coords_in(dst_im, dst_q, std::move(w), "induced_map");
    }
    return out;
}

HomologyAt::HomologyAt(SparseMat d_out, SparseMat d_in)
    : field_(d_out.field), space_dim_(d_out.cols), d_out_(std::move(d_out)), d_in_(std::move(d_in)) {
    if (d_in_.rows != space_dim_) throw OutOfRange("HomologyAt: d_in rows must match d_out cols");
    elim_out_ = std::make_unique<Elim>(d_out_);
    elim_in_ = std::make_unique<Elim>(d_in_);
    class_index_at_.assign(space_dim_, -1);
    ElimSolver solver(*elim_out_, [this](idx_t c) { return d_out_.col[c]; });
    for (idx_t c : elim_out_->free_cols()) {
        if (elim_in_->is_pivot_row(c)) continue; // boundary direction
        class_index_at_[c] = int32_t(class_pivots_.size());
        class_pivots_.push_back(c);
        class_reps_.push_back(solver.kernel_vector(c));
    }
}

SparseVec HomologyAt::class_coords(SparseVec w) const {
    std::vector<Ent> coords;
    while (!w.empty()) {
        idx_t lead = w.back().row;
        uint32_t val = w.back().val;
        int32_t ci = class_index_at_[lead];
        if (ci >= 0) {
            coords.push_back({idx_t(ci), val});
            w = vec_axpy(field_, w, field_.neg(val), class_reps_[ci]);
            continue;
        }
        int32_t seq = elim_in_->pivot_seq_at_row(lead);
        if (seq >= 0) {
            w = vec_axpy(field_, w, field_.neg(val), elim_in_->pivot(uint32_t(seq)).column);
            continue;
        }
        throw NotChainCompatible("class_coords: vector is not a cycle");
    }
    std::sort(coords.begin(), coords.end(), [](const Ent& a, const Ent& b) { return a.row < b.row; });
    return coords;
}

} // namespace cyclotome
