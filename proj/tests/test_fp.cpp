#include <doctest.h>

#include "qhom/fp.hpp"

using namespace qhom;

TEST_CASE("field arithmetic basics") {
    Fp F(101);
    CHECK(F.add(100, 2) == 1);
    CHECK(F.sub(0, 1) == 100);
    CHECK(F.mul(50, 50) == 2500 % 101);
    CHECK(F.reduce(-1) == 100);
    for (uint32_t a = 1; a < 101; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK_THROWS_AS(Fp(100), InvariantError);
}

TEST_CASE("rref, rank, kernel and solve agree on random matrices") {
    Fp F(101);
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        size_t r = 1 + rng.below(8), c = 1 + rng.below(8);
        FpMat A = random_matrix(F, r, c, rng);
        size_t rank = A.rank();
        FpMat K = A.kernel_basis();
        CHECK(rank + K.cols() == c);
        CHECK((A * K).is_zero());
        // Every kernel column is independent.
        CHECK(K.rank() == K.cols());
        // A * (solution of A x = A y) = A y.
        FpMat y = random_matrix(F, c, 1, rng);
        FpMat b = A * y;
        auto x = A.solve(b);
        REQUIRE(x.has_value());
        CHECK(A * *x == b);
    }
}

TEST_CASE("inverse of random invertible matrices") {
    Fp F(101);
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        size_t n = 1 + rng.below(7);
        FpMat A = random_invertible(F, n, rng);
        auto Ainv = A.inverse();
        REQUIRE(Ainv.has_value());
        CHECK(A * *Ainv == FpMat::identity(F, n));
        CHECK(*Ainv * A == FpMat::identity(F, n));
    }
}

TEST_CASE("subspace helpers") {
    Fp F(101);
    Rng rng(13);
    FpMat U = random_matrix(F, 6, 2, rng);
    FpMat V = random_matrix(F, 6, 3, rng);
    FpMat S = subspace::sum(U, V);
    CHECK(S.cols() <= 5);
    for (size_t j = 0; j < U.cols(); ++j) CHECK(subspace::contains(S, U.sub_block(0, j, 6, 1)));
    FpMat basis = subspace::column_reduce(U);
    FpMat comp = subspace::complement(basis, 6);
    CHECK(basis.cols() + comp.cols() == 6);
    CHECK(FpMat::hstack(basis, comp).rank() == 6);
}
