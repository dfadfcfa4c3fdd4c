#include "support.hpp"

#include <gtest/gtest.h>

using namespace polycobar;

namespace {

// Fraction-free Gaussian elimination (Bareiss).
Integer bareiss_det(DenseMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

DenseMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range, int density) {
    std::uniform_int_distribution<int> val(-range, range), keep(0, 9);
    DenseMatrix m(r, std::vector<Integer>(c));
    for (auto& row : m)
        for (auto& x : row)
            if (keep(rng) < density) x = val(rng);
    return m;
}

} // namespace

TEST(Smith, Examples) {
    EXPECT_EQ(smith_normal_form(IntMatrix::from_dense({{2, 4}, {6, 8}})).invariant_factors, (std::vector<Integer>{2, 4}));
    EXPECT_EQ(smith_normal_form(IntMatrix::from_dense(identity_matrix(4))).invariant_factors,
              (std::vector<Integer>{1, 1, 1, 1}));
    EXPECT_TRUE(smith_normal_form(IntMatrix::from_dense(DenseMatrix(3, std::vector<Integer>(2)))).invariant_factors.empty());
    EXPECT_EQ(smith_normal_form(IntMatrix::from_dense({{2, 0}, {0, 3}})).invariant_factors, (std::vector<Integer>{1, 6}));
}

TEST(Smith, TransformsAreUnimodularAndDiagonalize) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 7);
        auto a = random_matrix(rng, dim(rng), dim(rng), 6, 6);
        auto m = IntMatrix::from_dense(a);
        auto r = smith_normal_form(m, true);
        ASSERT_TRUE(r.left && r.right);
        EXPECT_EQ(multiply(multiply(*r.left, a), *r.right), smith_diagonal(m.rows, m.cols, r.invariant_factors));
        EXPECT_EQ(abs(bareiss_det(*r.left)), 1);
        EXPECT_EQ(abs(bareiss_det(*r.right)), 1);
        for (std::size_t i = 0; i < r.invariant_factors.size(); ++i) {
            EXPECT_GT(r.invariant_factors[i], 0);
            if (i + 1 < r.invariant_factors.size()) {
                EXPECT_EQ(r.invariant_factors[i + 1] % r.invariant_factors[i], 0);
            }
        }
    }
}

TEST(Smith, SparseAndDensePathsAgree) {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 12);
        auto a = random_matrix(rng, dim(rng), dim(rng), 3, 3);
        auto m = IntMatrix::from_dense(a);
        EXPECT_EQ(smith_normal_form(m, false).invariant_factors, smith_normal_form(m, true).invariant_factors);
    }
}

TEST(Smith, RankMatchesDeterminantForSquare) {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = random_matrix(rng, 4, 4, 4, 7);
        auto r = smith_normal_form(IntMatrix::from_dense(a));
        Integer det = bareiss_det(a);
        if (det == 0) {
            EXPECT_LT(r.rank(), 4u);
        } else {
            ASSERT_EQ(r.rank(), 4u);
            Integer prod = 1;
            for (const auto& f : r.invariant_factors) prod *= f;
            EXPECT_EQ(prod, abs(det));
        }
    }
}

TEST(Smith, DuplicateEntriesAreSummed) {
    IntMatrix m{1, 1, {{0, 0, 2}, {0, 0, 3}}};
    EXPECT_EQ(smith_normal_form(m).invariant_factors, (std::vector<Integer>{5}));
}
