#include "doctest.h"

#include "cyclotome/elim.hpp"
#include "cyclotome/linalg.hpp"

#include <random>
#include <sstream>

using namespace cyclotome;

static SparseMat dense(PrimeField f, std::vector<std::vector<int64_t>> rows) {
    idx_t R = idx_t(rows.size());
    idx_t C = R ? idx_t(rows[0].size()) : 0;
    SparseMat m(f, R, C);
    for (idx_t r = 0; r < R; ++r)
        for (idx_t c = 0; c < C; ++c) m.add_entry(r, c, rows[r][c]);
    m.normalize();
    return m;
}

TEST_CASE("prime field arithmetic") {
    PrimeField f5(5);
    CHECK(f5.add(3, 4) == 2);
    CHECK(f5.mul(3, 4) == 2);
    CHECK(f5.inv(3) == 2);
    CHECK(f5.reduce(-1) == 4);
    CHECK_THROWS_AS(PrimeField(6), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
    CHECK(PrimeField::is_prime(2147483647u));
}

TEST_CASE("rank basics") {
    CHECK(rank(SparseMat::identity(PrimeField(5), 3)) == 3);
    CHECK(rank(dense(PrimeField(2), {{1, 1}, {1, 1}})) == 1);
    SparseMat empty(PrimeField(3), 0, 4);
    CHECK(rank(empty) == 0);
}

TEST_CASE("kernel basics") {
    SparseMat z(PrimeField(3), 1, 2); // zero map F_3^2 -> F_3
    CHECK(kernel_basis(z).dim() == 2);

    Subspace k = kernel_basis(dense(PrimeField(2), {{1, 1}, {1, 1}}));
    CHECK(k.dim() == 1);
    CHECK(k.basis.at(0, 0) == 1);
    CHECK(k.basis.at(1, 0) == 1);

    CHECK(kernel_basis(SparseMat::identity(PrimeField(7), 4)).dim() == 0);
}

TEST_CASE("image basics") {
    CHECK(image_basis(SparseMat::identity(PrimeField(2), 2)).dim() == 2);
    CHECK(image_basis(SparseMat(PrimeField(5), 3, 3)).dim() == 0);
    Subspace im = image_basis(dense(PrimeField(5), {{1}, {2}}));
    CHECK(im.dim() == 1);
    for (idx_t c = 0; c < 1; ++c) CHECK(subspace_contains(im, dense(PrimeField(5), {{1}, {2}}).col[0]));
}

TEST_CASE("quotient basis") {
    PrimeField f2(2);
    Subspace all = image_basis(SparseMat::identity(f2, 2));
    Subspace diag = image_basis(dense(f2, {{1}, {1}}));
    Subspace zero{2, SparseMat(f2, 2, 0)};

    CHECK(quotient_basis(all, all).dim() == 0);
    CHECK(quotient_basis(zero, all).dim() == 2);
    CHECK(quotient_basis(diag, all).dim() == 1);
    CHECK_THROWS_AS(quotient_basis(all, diag), NotContained);
}

TEST_CASE("induced map") {
    PrimeField f2(2);
    Subspace all = image_basis(SparseMat::identity(f2, 2));
    Subspace diag = image_basis(dense(f2, {{1}, {1}}));

    SparseMat id = SparseMat::identity(f2, 2);
    SparseMat m = induced_map(id, all, diag, all, diag);
    CHECK(m.rows == 1);
    CHECK(m.cols == 1);
    CHECK(m.at(0, 0) == 1);

    SparseMat zero(f2, 2, 2);
    SparseMat mz = induced_map(zero, all, diag, all, diag);
    CHECK(mz.is_zero());

    // swap on F_2^2, quotient by the diagonal: induced map is [1]
    SparseMat swap = dense(f2, {{0, 1}, {1, 0}});
    SparseMat ms = induced_map(swap, all, diag, all, diag);
    CHECK(ms.rows == 1);
    CHECK(ms.at(0, 0) == 1);
}

TEST_CASE("rank-nullity and membership on random matrices") {
    std::mt19937 rng(12345);
    for (uint32_t p : {2u, 3u, 5u}) {
        PrimeField f(p);
        for (int trial = 0; trial < 25; ++trial) {
            idx_t R = 1 + rng() % 8, C = 1 + rng() % 8;
            SparseMat m(f, R, C);
            for (idx_t r = 0; r < R; ++r)
                for (idx_t c = 0; c < C; ++c)
                    if (rng() % 3 == 0) m.add_entry(r, c, rng() % p);
            m.normalize();
            int64_t rk = rank(m);
            Subspace ker = kernel_basis(m);
            CHECK(rk + ker.dim() == C);
            Subspace im = image_basis(m);
            CHECK(im.dim() == rk);
            for (idx_t c = 0; c < C; ++c) CHECK(subspace_contains(im, m.col[c]));
            // kernel vectors are killed by m
            for (idx_t j = 0; j < ker.dim(); ++j) CHECK(mat_apply(m, ker.basis.col[j]).empty());
        }
    }
}

TEST_CASE("solver: particular solutions") {
    std::mt19937 rng(99);
    PrimeField f(7);
    SparseMat m(f, 5, 7);
    for (idx_t r = 0; r < 5; ++r)
        for (idx_t c = 0; c < 7; ++c)
            if (rng() % 2) m.add_entry(r, c, 1 + rng() % 6);
    m.normalize();
    Elim e(m);
    ElimSolver solver(e, [&](idx_t c) { return m.col[c]; });
    for (int t = 0; t < 10; ++t) {
        SparseVec x;
        for (idx_t c = 0; c < 7; ++c)
            if (rng() % 2) x.push_back({c, uint32_t(1 + rng() % 6)});
        SparseVec b = mat_apply(m, x);
        auto sol = solver.solve(b);
        REQUIRE(sol.has_value());
        CHECK(mat_apply(m, *sol) == b);
    }
}

TEST_CASE("triple format round trip") {
    PrimeField f(3);
    SparseMat m = dense(f, {{1, 0, 2}, {0, 0, 1}});
    std::stringstream ss;
    write_triples(ss, m);
    SparseMat back = read_triples(ss);
    CHECK(back == m);
}

TEST_CASE("homology carrier") {
    // 0 -> k^2 --d--> k^2 -> 0 with d = [[1,1],[1,1]] over F_2:
    // H at middle-left = ker d (dim 1), H at middle-right = k^2/im d (dim 1)
    PrimeField f(2);
    SparseMat d = dense(f, {{1, 1}, {1, 1}});
    SparseMat none_out(f, 0, 2); // zero map out of the right spot
    HomologyAt right(none_out, d);
    CHECK(right.dim() == 1);
    HomologyAt left(d, SparseMat(f, 2, 0));
    CHECK(left.dim() == 1);
    // class_coords of a class rep is a unit vector
    SparseVec rep = left.class_rep(0);
    SparseVec cc = left.class_coords(rep);
    REQUIRE(cc.size() == 1);
    CHECK(cc[0].val == 1);
}
