#include <random>

#include "catch_amalgamated.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace homotor;

TEST_CASE("rank of small matrices", "[exactlin]") {
    PrimeField f5(5), f7(7);
    CHECK(rank(th::dense({{1, 0}, {0, 1}}, f5), f5) == 2);
    CHECK(rank(ScalarMatrix(3, 4), f5) == 0);
    CHECK(rank(th::dense({{1, 2}, {2, 4}}, f7), f7) == 1);
}

TEST_CASE("rank depends on the characteristic", "[exactlin]") {
    PrimeField f2(2), f3(3);
    auto m2 = th::dense({{1, 1}, {1, -1}}, f2);
    auto m3 = th::dense({{1, 1}, {1, -1}}, f3);
    CHECK(rank(m2, f2) == 1);
    CHECK(rank(m3, f3) == 2);
}

TEST_CASE("field rejects composite characteristic", "[exactlin]") {
    CHECK_THROWS_AS(PrimeField(6), Error);
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(32003));
    PrimeField f(7);
    CHECK(f.mul(f.inv(3), 3) == 1);
    CHECK(f.reduce(-1) == 6);
}

TEST_CASE("triplets accumulate modulo p", "[exactlin]") {
    PrimeField f(5);
    auto m = ScalarMatrix::from_triplets(1, 1, {{0, 0, 3}, {0, 0, 2}}, f);
    CHECK(m.is_zero());
    CHECK_THROWS_AS(ScalarMatrix::from_triplets(1, 1, {{1, 0, 1}}, f), Error);
}

TEST_CASE("sparse and dense rank agree with an independent elimination", "[exactlin]") {
    PrimeField f(32003);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
        oracle::Matrix m(rows, std::vector<long>(cols, 0));
        std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> t;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (rng() % 4 == 0) {
                    long v = static_cast<long>(rng() % 5) - 2;
                    m[r][c] = v;
                    if (v) t.emplace_back(r, c, v);
                }
        auto s = ScalarMatrix::from_triplets(rows, cols, t, f);
        std::size_t expected = oracle::rank(m, 32003);
        CHECK(rank(s, f) == expected);
        CHECK(dense_rank(DenseMatrix::from_sparse(s), f) == expected);
        CHECK(detail::sparse_rank(s, f) == expected);
    }
}

TEST_CASE("kernel basis spans the null space", "[exactlin]") {
    PrimeField f(7);
    DenseMatrix a = DenseMatrix::from_sparse(th::dense({{1, 2, 3}, {2, 4, 6}}, f));
    DenseMatrix k = kernel_basis(a, f);
    CHECK(k.rows() == 2);
    DenseMatrix image = apply_rows(a, k, f);
    for (std::size_t r = 0; r < image.rows(); ++r)
        for (std::size_t c = 0; c < image.cols(); ++c) CHECK(image(r, c) == 0);
}

TEST_CASE("homology of small fiber complexes", "[exactlin]") {
    PrimeField f(32003);
    FiberComplex iso{0, {1, 1}, {ScalarMatrix(0, 1), th::dense({{1}}, f)}};
    for (const auto& [i, d] : homology_dims(iso, f)) CHECK(d == 0);

    FiberComplex zero{0, {2, 3, 1}, {ScalarMatrix(0, 2), ScalarMatrix(2, 3), ScalarMatrix(3, 1)}};
    auto h = homology_dims(zero, f);
    CHECK(h[0].second == 2);
    CHECK(h[1].second == 3);
    CHECK(h[2].second == 1);

    // Koszul complex of (x, y) at degree (1,1): k -> k^2 -> k with entries from x and y
    FiberComplex kos{0, {1, 2, 1}, {ScalarMatrix(0, 1), th::dense({{1, 1}}, f), th::dense({{-1}, {1}}, f)}};
    for (const auto& [i, d] : homology_dims(kos, f)) CHECK(d == 0);
}

TEST_CASE("fiber validation rejects d squared nonzero and bad shapes", "[exactlin]") {
    PrimeField f(32003);
    FiberComplex bad{0, {1, 1, 1}, {ScalarMatrix(0, 1), th::dense({{1}}, f), th::dense({{1}}, f)}};
    CHECK_THROWS_AS(homology_dims(bad, f), Error);
    FiberComplex shape{0, {1, 2}, {ScalarMatrix(0, 1), ScalarMatrix(1, 3)}};
    CHECK_THROWS_AS(homology_dims(shape, f), Error);
}
