#pragma once

#include "cyclotome/linalg.hpp"

#include <vector>

namespace cyclotome {

// Homologically indexed chain complex supported on [lo, hi]; the spaces are
// zero outside. d(k) maps degree k to k-1.
struct ChainComplex {
    PrimeField field;
    int lo = 0;
    std::vector<idx_t> dims;     // dims[n - lo]
    std::vector<SparseMat> diff; // diff[k] : degree lo+k -> lo+k-1, k >= 1; diff[0] unused

    int hi() const { return lo + int(dims.size()) - 1; }
    bool in_range(int n) const { return n >= lo && n <= hi(); }
    idx_t dim_at(int n) const { return in_range(n) ? dims[size_t(n - lo)] : 0; }
    // d_n : C_n -> C_(n-1); zero matrix outside the support
    SparseMat d(int n) const;
    void validate() const; // d o d = 0
};

// Per-degree matrices of a chain map; commutes with differentials.
struct ChainMap {
    ChainComplex src, dst;
    int shift = 0; // maps degree n of src to degree n + shift of dst
    std::vector<SparseMat> f; // f[n - src.lo]

    SparseMat at(int n) const;
    void validate() const; // f d = d f (throws ChainMapViolation)
};

// First-quadrant-style window of a bicomplex. Column i counts from the right
// edge of the displayed diagrams (i = 0 rightmost), row j from the top. The
// horizontal differential h(i,j) maps (i,j) -> (i-1,j), the vertical v(i,j)
// maps (i,j) -> (i,j-1), and the total degree of (i,j) is i + j.
//
// convention commute_with_sign: h and v commute and totalization twists v
// by (-1)^i. anticommute: h v + v h = 0 and totalization adds them as is.
//
// corr, when present, enters the total differential unchanged as a map
// (i,j) -> (i+1, j-2); builders bake any sign into it. With a correction the
// per-cell square-zero laws are allowed to fail (filtered complexes); the
// total differential is still verified to square to zero.
struct Bicomplex {
    enum class Convention { commute_with_sign, anticommute };

    PrimeField field;
    int ncols = 0, nrows = 0;
    Convention conv = Convention::commute_with_sign;
    std::vector<std::vector<idx_t>> dims;   // dims[i][j]
    std::vector<std::vector<SparseMat>> h;  // h[i][j], i >= 1
    std::vector<std::vector<SparseMat>> v;  // v[i][j], j >= 1
    std::vector<std::vector<SparseMat>> corr; // empty if unused

    bool has_corr() const { return !corr.empty(); }
    void validate() const; // square-zero + (anti)commutation, or total d^2 = 0
};

// Offsets of the cells inside the total space of degree n, keyed by column.
struct TotalLayout {
    std::vector<std::pair<int, idx_t>> cells; // (column i, offset), increasing i
    idx_t total = 0;
};

TotalLayout total_layout(const Bicomplex& b, int n);
// Total complex over degrees [0, ncols+nrows-2]. Cells of equal total degree
// are laid out by increasing column index.
ChainComplex total_complex(const Bicomplex& b);

std::vector<int64_t> homology_dims(const ChainComplex& c, int from, int to);
SparseMat induced_on_homology(const ChainMap& f, int n);

// Dims of spectral-sequence pages E_0..E_pages of the column filtration.
// result[r][i][j] = dim E_r(i,j).
std::vector<std::vector<std::vector<int64_t>>> spectral_sequence_dims(const Bicomplex& b, int pages);

// Matrix of d_2 : E_2(i,j) -> E_2(i-2,j+1) in quotient bases, together with
// the two E_2 cell descriptions (numerator/denominator quotient data).
struct E2Cell {
    Subspace numerator;   // {x : vx = 0, hx in im v}
    Subspace denominator; // v(above) + h(ker v to the left-neighbor)
    Subspace reps;        // quotient basis
};
E2Cell e2_cell(const Bicomplex& b, int i, int j);
SparseMat ss_d2_matrix(const Bicomplex& b, int i, int j);

} // namespace cyclotome
