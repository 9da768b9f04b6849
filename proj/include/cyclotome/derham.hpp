#pragma once

#include "cyclotome/cyclic.hpp"

namespace cyclotome {

// Monomial-form basis of the weight-w slice of Omega^i over k[x_1..x_nvars]:
// pairs (exponent vector a, subset mask S) with |S| = i and |a| + i = w,
// ordered lexicographically (mask minor, exponents major).
struct DeRhamSliceBasis {
    int nvars = 1;
    int form_degree = 0;
    int64_t weight = 0;
    std::vector<std::pair<std::vector<int>, uint32_t>> basis;
};

DeRhamSliceBasis derham_basis(int nvars, int i, int64_t w);
int64_t derham_index(const DeRhamSliceBasis& b, const std::vector<int>& exponents, uint32_t mask);
// d : slice (i, w) -> slice (i+1, w)
SparseMat derham_d(PrimeField f, int nvars, int i, int64_t w);
// the same integer matrix, rank over the rationals (exact, Bareiss)
int64_t derham_rank_q(int nvars, int i, int64_t w);

struct DerhamReport {
    int nvars = 1;
    uint32_t characteristic = 0; // 0 = rationals
    int weight_cap = 0;
    // h[i][w] = dim H^i at weight w
    std::vector<std::vector<int64_t>> h;
};
DerhamReport derham_cohomology(int nvars, uint32_t characteristic, int weight_cap);

// Degeneration bookkeeping of the cyclic bicomplex of a finite-dimensional
// algebra: per total degree, sum of E_1 dims against dim H_n(total); equal
// sums = degeneration at the first page.
struct DegenerationReport {
    std::string algebra;
    uint64_t algebra_hash = 0;
    int max_degree = 0;
    std::vector<int64_t> e1_sums, h_dims;
    std::vector<bool> degenerate;
    std::vector<std::string> notes;
};
DegenerationReport hodge_degeneration_check(const Algebra& a, int max_degree);

// char-p commutative mode, one variable: on each weight slice of the cyclic
// bicomplex of F_p[x], the first possibly-nonzero page differential
// d_2 : E_2(2,0) -> E_2(0,1) is compared entrywise with the de Rham
// d : x^w -> w x^(w-1) dx under the HKR identifications.
struct CommutativeHodgeReport {
    uint32_t p = 2;
    int weight_cap = 0;
    std::vector<bool> d2_equals_derham; // per weight 1..weight_cap
    std::vector<std::string> notes;
};
CommutativeHodgeReport hodge_commutative_charp(uint32_t p, int weight_cap);

// char-0 commutative mode: exact rational bookkeeping of the weight slices
// of the cyclic bicomplex of Q[x] (E_1 sums vs total homology per degree).
DegenerationReport hodge_commutative_char0(int weight_cap, int max_degree);

// weight-w subcomplex of a bicomplex whose cell bases carry weights
Bicomplex weight_slice_bicomplex(const Bicomplex& b,
                                 const std::vector<std::vector<std::vector<int64_t>>>& cell_weights,
                                 int64_t w);

} // namespace cyclotome
