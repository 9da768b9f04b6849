#pragma once

#include "cyclotome/cyclic.hpp"

namespace cyclotome {

// A quasi-Frobenius map F: A^(1) -> A^(x)p with its validation evidence.
// Construction verifies, in this order: algebra map, Z/p-equivariance
// (sigma o F = F), injectivity, free cokernel, and the Tate-homology
// isomorphism in both parities.
struct QuasiFrobenius {
    int p = 2;
    Algebra source; // A^(1): relabeled copy of A
    Algebra target; // A^(x)p
    CyclicSymmetry sym;
    SparseMat matrix; // F
    std::pair<int64_t, int64_t> tate_source, tate_target;
    std::vector<std::string> evidence;
};

QuasiFrobenius qf_group(const std::vector<std::vector<int>>& table, int p, PrimeField field);
// Wrap an explicit candidate F for a general algebra; runs the same checks.
QuasiFrobenius qf_from_matrix(const Algebra& a, int p, const SparseMat& f);

// Graded quasi-Frobenius for the tensor algebra T(V): per-weight slices of
// the basis-diagonal representative v_i -> v_i^(x)p. Slice w maps V^(x)w
// into the weight-pw part of T(V)^(x)p.
struct FreeQfSlices {
    int dim_v = 1, p = 2, weight_cap = 1;
    PrimeField field;
    std::vector<SparseMat> f_slice;     // w = 1..weight_cap
    std::vector<SparseMat> sigma_slice; // Z/p action on the target slice
    std::vector<std::pair<int64_t, int64_t>> tate_target;
    std::vector<std::string> evidence;
};
FreeQfSlices qf_free(int dim_v, int p, PrimeField field, int weight_cap);

// Levelwise tensor powers F^(x)n : (A^(1))^(x)n -> A^(x)pn with the
// commutation against tau and every face verified as matrix identities.
std::vector<SparseMat> f_sharp_levels(const Algebra& a, const QuasiFrobenius& qf, int n_max);

struct CartierCertificate {
    std::string algebra;
    uint64_t algebra_hash = 0;
    uint32_t field_p = 0;
    int p = 2;
    int lo = 0, hi = -1; // certified degree window
    std::vector<SparseMat> phi;
    std::vector<bool> iso;
    std::vector<int64_t> src_dims, dst_dims;
    int stabilized_from = -1;
    int64_t hp_even = -1, hp_odd = -1;
    std::vector<std::string> notes;
    bool all_iso() const {
        for (bool b : iso)
            if (!b) return false;
        return !iso.empty();
    }
};

// The Cartier map Phi = HP(F_#) between the totalizations of the p-cyclic
// bicomplexes of pi^*A_#^(1) and i^*A_#, with iso certification on the
// stabilized window [bound, bound+2].
CartierCertificate cartier_phi(const Algebra& a, const QuasiFrobenius& qf, int hom_dim_bound, int n_max);

// Commutative inverse Cartier on polynomial slices: for each form degree i
// and weight w <= weight_cap, the matrix of C^(-1): Omega^i_(twist),w ->
// H^i_DR at weight pw, built from f dg -> f^p g^(p-1) dg, with slice-wise
// bijectivity certification.
CartierCertificate inverse_cartier_commutative(int nvars, int p, int weight_cap);

} // namespace cyclotome
