#pragma once

#include "cyclotome/elim.hpp"
#include "cyclotome/errors.hpp"

#include <memory>
#include <vector>

namespace cyclotome {

// A subspace of F_p^ambient in reduced column-echelon form: basis columns
// have strictly increasing leading (= maximal) rows, leading coefficient 1,
// and zeros at every other column's leading row. The form is canonical, so
// subspace equality is plain matrix equality.
struct Subspace {
    idx_t ambient = 0;
    SparseMat basis;

    PrimeField field() const { return basis.field; }
    idx_t dim() const { return basis.cols; }
    std::vector<idx_t> pivots() const {
        std::vector<idx_t> out;
        out.reserve(basis.cols);
        for (auto& c : basis.col) out.push_back(c.back().row);
        return out;
    }
    bool operator==(const Subspace& o) const { return ambient == o.ambient && basis == o.basis; }
};

Subspace subspace_from_columns(PrimeField f, idx_t ambient, const std::vector<SparseVec>& cols);

Subspace kernel_basis(const SparseMat& m);
Subspace image_basis(const SparseMat& m);
bool subspace_contains(const Subspace& s, const SparseVec& v);
// representatives of sup/sub; throws NotContained if sub is not inside sup
Subspace quotient_basis(const Subspace& sub, const Subspace& sup);

// Matrix of the map induced by f on (src_ker/src_im) -> (dst_ker/dst_im) in
// the quotient_basis coordinates. Throws NotChainCompatible if f does not
// respect the given subspaces.
SparseMat induced_map(const SparseMat& f, const Subspace& src_ker, const Subspace& src_im,
                      const Subspace& dst_ker, const Subspace& dst_im);

// Express w in the quotient coordinates given by reps modulo sub; throws
// NotChainCompatible when w escapes span(sub) + span(reps).
SparseVec quotient_coords_in(const Subspace& sub, const Subspace& reps, SparseVec w, const char* what);

// Homology carrier at one spot of a complex: H = ker(d_out) / im(d_in),
// built from two eliminations without materializing full kernel bases.
// Class representatives are kernel vectors of d_out whose leading coordinate
// is a free column of d_out but not a leading row of im(d_in).
class HomologyAt {
  public:
    // d_out : C -> C'' (columns indexed by C), d_in : C' -> C (rows indexed
    // by C). Either may be an empty matrix with the right C-dimension.
    HomologyAt(SparseMat d_out, SparseMat d_in);

    idx_t space_dim() const { return space_dim_; }
    int64_t dim() const { return int64_t(class_pivots_.size()); }
    const std::vector<idx_t>& class_pivots() const { return class_pivots_; }
    const SparseVec& class_rep(size_t i) const { return class_reps_[i]; }

    // Express a cycle in class coordinates (entries indexed 0..dim-1).
    // Throws NotChainCompatible if w is not a cycle of d_out.
    SparseVec class_coords(SparseVec w) const;

  private:
    PrimeField field_;
    idx_t space_dim_;
    SparseMat d_out_, d_in_;
    std::unique_ptr<Elim> elim_out_, elim_in_;
    std::vector<idx_t> class_pivots_;
    std::vector<SparseVec> class_reps_;
    std::vector<int32_t> class_index_at_; // leading coord -> class index or -1
};

} // namespace cyclotome
