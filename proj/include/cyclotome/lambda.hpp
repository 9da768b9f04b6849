#pragma once

#include "cyclotome/algebra.hpp"

#include <string>
#include <vector>

namespace cyclotome {

// A morphism of the p-fold cyclic category Lambda_p: a monotone map f of the
// integers with f(a+n) = f(a)+m, taken modulo translation by p*m, stored by
// its window values f(0..n-1) with 0 <= f(0) < p*m. Equality of normalized
// representatives is syntactic. p = 1 is Connes' cyclic category Lambda.
struct LambdaMorphism {
    int p = 1;
    int n = 1, m = 1;
    std::vector<int64_t> values;

    // evaluate the underlying map at any integer
    int64_t eval(int64_t a) const;
    void validate() const; // monotone + equivariant + normalized
    bool operator==(const LambdaMorphism& o) const {
        return p == o.p && n == o.n && m == o.m && values == o.values;
    }
    bool operator!=(const LambdaMorphism& o) const { return !(*this == o); }
    std::string str() const; // "p=2 [2]->[1] : 0,0"
};

LambdaMorphism lambda_identity(int p, int n);
LambdaMorphism lambda_tau(int p, int n);   // a -> a+1 on [n]
LambdaMorphism lambda_sigma(int p, int n); // a -> a+n (tau^n)
// face maps [n] -> [n-1]: i in 0..n-2 merges slots (i,i+1); i = n-1 is the
// wrap face mu_0 after tau
LambdaMorphism lambda_face(int p, int n, int i);
LambdaMorphism parse_lambda(const std::string& text);

LambdaMorphism compose(const LambdaMorphism& g, const LambdaMorphism& f);
LambdaMorphism lambda_pow(const LambdaMorphism& f, int64_t e); // endomorphism power

// normal form f = tau^j o f0 with f0(0) = 0; returns (j, f0)
std::pair<int64_t, LambdaMorphism> normal_form(const LambdaMorphism& f);

// exhaustive duplicate-free enumeration of Lambda_p([n],[m])
std::vector<LambdaMorphism> hom_enumerate(int p, int n, int m);

// i: Lambda_p -> Lambda, [n] -> [pn], f -> f
LambdaMorphism functor_i(const LambdaMorphism& f);
// pi: Lambda_p -> Lambda, identity on objects, f -> f mod sigma
LambdaMorphism functor_pi(const LambdaMorphism& f);

// The linearization A_# evaluated on (the image under i of) a morphism:
// a matrix A^{(x)pn} -> A^{(x)pm}. Factor j of the target receives the
// product of the source factors in f^{-1}(j), in increasing order; an empty
// preimage inserts the unit. All signs live here: f = tau^j o f0 carries
// (-1)^((pm-1) j), the cyclic-permutation sign rule applied at the target.
SparseMat linearize_A_sharp(const Algebra& a, const LambdaMorphism& f);

} // namespace cyclotome
