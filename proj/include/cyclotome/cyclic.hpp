#pragma once

#include "cyclotome/algebra.hpp"
#include "cyclotome/complexes.hpp"

#include <string>
#include <vector>

namespace cyclotome {

// One level E([n]) of a p-cyclic object: the signed cyclic operator tau
// (tau^(pn) = id) and the faces [n] -> [n-1] (none at n = 1). Face i for
// i <= n-2 comes from Delta; face n-1 is the wrap face m_0 o tau.
struct CyclicLevel {
    idx_t dim = 0;
    SparseMat tau;
    std::vector<SparseMat> faces;
};

// A p-cyclic object given by concrete matrices on levels [1]..[n_max].
struct CyclicObject {
    PrimeField field;
    int p = 1;
    std::string provenance;
    uint64_t algebra_hash = 0;
    std::vector<CyclicLevel> levels;

    int n_max() const { return int(levels.size()); }
    const CyclicLevel& level(int n) const { return levels.at(size_t(n - 1)); }
    idx_t dim_at(int n) const { return level(n).dim; }

    SparseMat b(int n) const;            // level [n] -> [n-1]
    SparseMat bprime(int n) const;       // level [n] -> [n-1]
    SparseMat sigma(int n) const;        // tau^n
    SparseMat norm_full(int n) const;    // id + tau + ... + tau^(pn-1)
    SparseMat norm_partial(int n) const; // id + tau + ... + tau^(n-1)
    SparseMat norm_sigma(int n) const;   // id + sigma + ... + sigma^(p-1)

    // simplicial/cyclic relations as matrix identities, tau^(pn) = id
    void validate() const;
};

// Builders. All levels are generated from index arithmetic (bar.hpp).
CyclicObject a_sharp(const Algebra& a, int n_max);                      // p = 1
CyclicObject i_star_a_sharp(const Algebra& a, int p, int n_max);        // E([n]) = A^(x)pn
CyclicObject pi_star_a_sharp_twist(const Algebra& a, int p, int n_max); // E([n]) = A^(x)n, sigma trivial
// Regeneration through the category: every tau and face produced by
// linearize_A_sharp on Lambda_p morphisms (the anti-drift cross-check).
CyclicObject cyclic_object_from_lambda(const Algebra& a, int p, int n_max);
// Levelwise cokernel of an injective map of p-cyclic objects.
CyclicObject coker_object(const CyclicObject& tgt, const std::vector<SparseMat>& f_levels,
                          const std::string& provenance);

// The cyclic bicomplex: column i carries b (i even) or b' (i odd), rows
// alternate (id - tau) into even columns and the full norm into odd ones.
// Row j holds level [j+1].
Bicomplex cyclic_bicomplex(const CyclicObject& e, int cols, int rows);

// dim HC_n for n = 0..n_max_deg (throws WindowTooSmall if the object was
// built too shallow: degree n needs levels up to n+2).
std::vector<int64_t> hc_dims(const CyclicObject& e, int n_max_deg);

// The two-column shift as a chain map of the totalized window, and its
// induced matrix HC_(n+2) -> HC_n.
ChainMap periodicity_u_chain_map(const CyclicObject& e, int max_degree);
SparseMat periodicity_u_matrix(const CyclicObject& e, int n);

// Connes exact-sequence bookkeeping at degree n:
//   HH_(n+2) -I-> HC_(n+2) -u-> HC_n -B-> HH_(n+1) -I-> HC_(n+1)
// verified through ranks of I and u (the rank of B is forced by exactness
// at the HH node and checked for consistency at the HC node).
struct ConnesCheck {
    int degree;
    int64_t hh_n2, hc_n2, hc_n, hh_n1;
    int64_t rank_i_n2, rank_u, rank_i_n1;
    bool exact;
};
ConnesCheck connes_exactness(const CyclicObject& e, int n);

struct HomologyReport {
    std::string kind; // HH | HC | HP | Tate
    std::string object;
    uint64_t algebra_hash = 0;
    uint32_t field_p = 0;
    int p_cyclic = 1;
    int lo = 0;
    std::vector<int64_t> dims;
    int window_cols = 0, window_rows = 0;
    int stabilized_from = -1; // HP: first degree of the certified window
    int64_t hp_even = -1, hp_odd = -1;
    std::vector<std::string> notes;
};

// HP via stabilization: u must be an isomorphism (certified by its matrix)
// for all n in [bound, bound+2]; throws NotStabilized naming the first
// failing degree.
HomologyReport hp_stabilized(const CyclicObject& e, int hom_dim_bound);

// --- the filtered complexes of the vanishing section ---

// hs-style corrected bicomplex for a single representation of Z/(m*n):
// tau_gen generates Z/(mn), sigma = tau^n generates Z/m. Columns carry
// id - sigma / norm_sigma, rows id - tau / partial norm, and the identity
// correction of bidegree (-1,2) on the odd columns counted 1-based from the
// right. Cells are filled for i + j <= max_total so the window is a genuine
// subcomplex; homology is trusted in degrees <= max_total - 1.
Bicomplex hs_group_bicomplex(PrimeField f, const SparseMat& tau_gen, int m, int n, int max_total);

// The same construction applied to a p-cyclic object E: rows of the cyclic
// bicomplex are replaced by the hs complex of Z/p inside Z/(pn). Cells are
// indexed by (sigma-column i, J) with J flattening (hs-row j, level [l]),
// J = j + l - 1, sub-cells ordered by increasing j.
Bicomplex hc_hs_bicomplex(const CyclicObject& e, int max_total);
// u: two sigma-columns right; u': two hs-rows up. Both as chain maps of the
// totalization of hc_hs_bicomplex(e, max_total).
ChainMap hs_u_chain_map(const CyclicObject& e, const Bicomplex& hs, int max_total);
ChainMap hs_uprime_chain_map(const CyclicObject& e, const Bicomplex& hs, int max_total);

struct UPrimeCertificate {
    std::string object;
    uint64_t algebra_hash = 0;
    std::vector<int> degrees;     // u' checked as H_d -> H_(d-2)
    std::vector<int64_t> h_dims;  // dim H_d
    std::vector<bool> is_zero;
    std::vector<SparseMat> matrices;
    bool all_zero() const {
        for (bool z : is_zero)
            if (!z) return false;
        return true;
    }
};
// Induced matrix of u' on HC in each degree 0..max_degree; when
// require_zero is set a nonzero matrix throws NonzeroUPrime with a witness.
UPrimeCertificate check_uprime_zero(const CyclicObject& e, int max_degree, bool require_zero);

// --- Tate homology of cyclic groups ---

// even = ker(d_-)/im(d_+), odd = ker(d_+)/im(d_-) of the 2-periodic
// standard complex; sigma_rep must satisfy sigma^m = id.
std::pair<int64_t, int64_t> tate_dims(int m, const SparseMat& sigma_rep);
// m = char k prime: Tate homology vanishes iff the module is free.
bool is_free_module(int m, const SparseMat& sigma_rep);

struct VanishingCertificate {
    std::string object;
    uint64_t algebra_hash = 0;
    int p = 1;
    int bound = 0;
    int levels_checked = 0;
    std::vector<int64_t> level_dims;
    bool hp_vanishes = false;
    std::string detail;
};
// Prop-style vanishing: every level free over k[Z/p] makes the Tate rows
// exact; with the caller-supplied finiteness bound the spectral sequence
// of the Tate bicomplex converges to 0, so HP_0 = HP_1 = 0.
VanishingCertificate hp_vanishing_check(const CyclicObject& e, int hom_dim_bound);

} // namespace cyclotome
