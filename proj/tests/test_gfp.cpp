#include <doctest.h>

#include "homext/gfp.hpp"
#include "homext/sampler.hpp"

using namespace homext;

TEST_CASE("field arithmetic") {
    PrimeField F(7);
    CHECK(F.add(5, 4) == 2);
    CHECK(F.sub(2, 5) == 4);
    CHECK(F.neg(0) == 0);
    CHECK(F.neg(3) == 4);
    CHECK(F.mul(3, 5) == 1);
    CHECK(F.inv(3) == 5);
    CHECK(F.pow(3, 6) == 1);
    CHECK(F.from_int(-1) == 6);
    CHECK(F.from_int(-15) == 6);
    CHECK_THROWS_AS(F.inv(0), Error);
    for (Scalar a = 1; a < 7; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
}

TEST_CASE("field construction rejects composites and large p") {
    CHECK(is_prime(2));
    CHECK(is_prime(65521));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(9));
    CHECK_THROWS(PrimeField(4));
    CHECK_THROWS(PrimeField(65537));
}

TEST_CASE("rref, kernel and solve") {
    PrimeField F(3);
    Mat M = Mat::from_rows(3, {{1, 2, 0}, {2, 1, 0}, {0, 0, 1}});
    // rows 1 and 2 are dependent mod 3
    CHECK(rank(F, M) == 2);
    auto K = kernel(F, M);
    REQUIRE(K.size() == 1);
    CHECK(is_zero(matvec(F, M, K[0])));
    CHECK(K[0] == Vec{1, 1, 0});

    auto x = solve(F, M, {1, 2, 2});
    REQUIRE(x);
    CHECK(matvec(F, M, *x) == Vec{1, 2, 2});
    CHECK((*x)[1] == 0);  // free variable set to zero
    CHECK_FALSE(solve(F, M, {1, 0, 0}));
}

TEST_CASE("inverse") {
    PrimeField F(5);
    Mat M = Mat::from_rows(3, {{1, 2, 3}, {0, 1, 4}, {5, 6, 0}});
    auto Mi = inverse(F, M);
    REQUIRE(Mi);
    CHECK(matmul(F, M, *Mi) == Mat::identity(3));
    CHECK_FALSE(inverse(F, Mat::from_rows(2, {{1, 2}, {2, 4}})));
}

TEST_CASE("matrix power and transpose") {
    PrimeField F(3);
    Mat A = Mat::from_rows(2, {{1, 1}, {0, 1}});
    CHECK(mat_pow(F, A, 3) == Mat::identity(2));
    CHECK(mat_pow(F, A, 0) == Mat::identity(2));
    CHECK(transpose(A) == Mat::from_rows(2, {{1, 0}, {1, 1}}));
}

TEST_CASE("PolyVec application agrees with evaluation at every k") {
    PrimeField F(5);
    Mat C = Mat::from_rows(2, {{1, 2}, {3, 4}});
    Mat L = Mat::from_rows(2, {{0, 1}, {1, 0}});
    std::vector<LinearOp> ops{{C, L}, {L, C}};
    Vec v{1, 3};
    PolyVec r = polyvec_apply(F, ops, PolyVec::constant(v, 2));
    CHECK(r.degree() <= 2);
    for (Scalar k = 0; k < 5; ++k) {
        Mat M0 = mat_add(F, C, mat_scale(F, k, L));
        Mat M1 = mat_add(F, L, mat_scale(F, k, C));
        CHECK(r.evaluate(F, k) == matvec(F, M1, matvec(F, M0, v)));
    }
}

TEST_CASE("PolyVec degree overflow") {
    PrimeField F(3);
    Mat I = Mat::identity(1);
    std::vector<LinearOp> ops{{I, I}, {I, I}};
    CHECK_THROWS_AS(polyvec_apply(F, ops, PolyVec::constant({1}, 1)), Error);
}

TEST_CASE("SplitMix64 positioning") {
    SplitMix64 a(42);
    for (int i = 0; i < 5; ++i) a.next();
    SplitMix64 b = SplitMix64::at(42, 5);
    CHECK(a.next() == b.next());
    SplitMix64 c = SplitMix64::for_sample(7, 3);
    SplitMix64 d = SplitMix64::at(7, 3 * kDrawsPerSample);
    CHECK(c.next() == d.next());
}

TEST_CASE("element enumeration") {
    PrimeField F(3);
    CHECK(space_size(3, 4) == 81);
    CHECK(space_size(2, 70) == UINT64_MAX);
    CHECK(element_at(F, 3, 0) == Vec{0, 0, 0});
    CHECK(element_at(F, 3, 1) == Vec{1, 0, 0});
    CHECK(element_at(F, 3, 5) == Vec{2, 1, 0});
}
