#pragma once

#include "cyclotome/algebra.hpp"
#include "cyclotome/complexes.hpp"

#include <utility>
#include <vector>

namespace cyclotome {

// Matrices are generated level-by-level directly from index arithmetic; no
// tensor-power algebra object is ever materialized. All tensor indices use
// the shared mixed-radix encoding (factor 0 least significant).

// --- cyclic model: diagonal coefficients, spaces A^(x)N, N >= 1 ---

// face i of A^(x)N -> A^(x)(N-1), i in 0..N-1. For i <= N-2 the adjacent
// pair (i, i+1) is multiplied; i = N-1 is the wrap face: e_(N-1) e_0 lands
// in slot 0.
SparseMat face_matrix(const Algebra& a, int N, int i);
// cyclic rotation (contents shift up one slot); signed multiplies by
// (-1)^(N-1)
SparseMat tau_matrix(const Algebra& a, int N, bool with_sign);
SparseMat b_matrix_cyclic(const Algebra& a, int N);      // sum_{i<=N-1} (-1)^i face_i
SparseMat bprime_matrix_cyclic(const Algebra& a, int N); // sum_{i<=N-2}

// --- p-fold cyclic model: level [n] of Lambda_p carries A^(x)pn ---

// face i of level [n] -> [n-1], i in 0..n-1: contracts the p equally spaced
// pairs (an+i, an+i+1); i = n-1 is the wrap face.
SparseMat p_face_matrix(const Algebra& a, int p, int n, int i);
// cyclic rotation by one of the pn factors; signed multiplies by (-1)^(pn-1)
SparseMat p_tau_matrix(const Algebra& a, int p, int n, bool with_sign);
// (b_p, b'_p) : level [n] -> [n-1], n >= 2
std::pair<SparseMat, SparseMat> p_differentials(const Algebra& a, int p, int n);

// comparison map at level [n]: A^(x)pn -> A^(x)n keeps the first n-1
// factors and multiplies the rest
SparseMat comparison_level(const Algebra& a, int p, int n);
// chain map M from the p-fold bar complex to the ordinary one, levels
// [1]..[n_max], with M b_p = b M verified level by level
ChainMap comparison_map_M(const Algebra& a, int p, int n_max);

// --- bimodule coefficients: C_n = A^(x)n (x) M, the M factor most
// significant in the index ---

int64_t bar_dim(const Algebra& a, const Bimodule& m, int n);
// b' : C_(n+1) -> C_n per the alternating contraction sum
SparseMat bprime_matrix(const Algebra& a, const Bimodule& m, int n);
// Hochschild boundary b = b' + (-1)^(n+1) t, t rotating a_0 into the module
// slot from the right
SparseMat hochschild_b_matrix(const Algebra& a, const Bimodule& m, int n);
// dim HH_n for n = 0..n_max-1
std::vector<int64_t> hh_dims(const Algebra& a, const Bimodule& m, int n_max);
std::vector<int64_t> hh_dims(const Algebra& a, int n_max); // diagonal coefficients

} // namespace cyclotome
