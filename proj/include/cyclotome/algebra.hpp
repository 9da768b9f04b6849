#pragma once

#include "cyclotome/errors.hpp"
#include "cyclotome/sparse.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyclotome {

// Global cap on tensor-level dimensions. Guards exponential blowup with a
// clean error instead of memory exhaustion.
int64_t size_budget();
void set_size_budget(int64_t b);

// Finite-dimensional associative unital algebra over F_p, presented by
// structure constants: mult[i][j] is the coefficient vector of e_i * e_j.
struct Algebra {
    PrimeField field;
    idx_t dim = 0;
    std::vector<std::string> labels;
    SparseVec unit;
    std::vector<std::vector<SparseVec>> mult;
    std::optional<std::vector<int64_t>> weights;

    SparseVec mul(const SparseVec& x, const SparseVec& y) const;
    SparseMat left_mult(idx_t i) const;  // matrix of e_i * (-)
    SparseMat right_mult(idx_t i) const; // matrix of (-) * e_i
    bool is_commutative() const;
    uint64_t hash() const; // content hash of the canonical serialization
    std::string to_json() const;
    static Algebra from_json(const std::string& text);
};

// Bimodule over an algebra: per-basis-element action matrices. Axioms are
// checked by the constructors that produce these.
struct Bimodule {
    idx_t dim = 0;
    std::vector<SparseMat> left;  // left[i] = action of e_i on the left
    std::vector<SparseMat> right; // right[i] = action of e_i on the right
};

// The cyclic permutation of tensor factors on A^{tensor p}, as an unsigned
// permutation matrix (an algebra automorphism of the tensor power).
struct CyclicSymmetry {
    idx_t order = 1;
    SparseMat perm;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport check_algebra(const Algebra& a);
ValidationReport check_bimodule(const Algebra& a, const Bimodule& m);

Algebra group_algebra(const std::vector<std::vector<int>>& table, PrimeField field,
                      const std::vector<std::string>& names = {});
Algebra matrix_algebra(int n, PrimeField field);
Algebra truncated_polynomial(int nvars, int cap, PrimeField field);
Algebra field_as_algebra(PrimeField field);

std::pair<Algebra, CyclicSymmetry> tensor_power(const Algebra& a, int p);
Bimodule diagonal_bimodule(const Algebra& a);
// Underlying space A^{tensor p}; left action is multiplication, right action
// is m, c -> m * sigma(c).
Bimodule twisted_diagonal_bimodule(const Algebra& a, int p);
Algebra frobenius_twist(const Algebra& a);

// Mixed-radix index helpers shared by every tensor-level construction:
// factor 0 is least significant.
int64_t checked_power(int64_t base, int exp, int64_t cap); // throws SizeBudgetExceeded
void decode_mixed(int64_t index, idx_t dim, int len, std::vector<idx_t>& digits);
int64_t encode_mixed(const std::vector<idx_t>& digits, idx_t dim);

// Group tables for the builtins.
std::vector<std::vector<int>> cyclic_group_table(int n);
std::vector<std::vector<int>> symmetric_group_table(int n); // n <= 4

} // namespace cyclotome
