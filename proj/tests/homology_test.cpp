#include "support.hpp"

#include <gtest/gtest.h>

using namespace polycobar;
using polycobar::fixtures::gen;

namespace {

// Coefficients of Π 1/(1 - t^{e_i}) up to t^top.
std::vector<std::size_t> free_series(const std::vector<int>& exponents, int top) {
    std::vector<std::size_t> s(static_cast<std::size_t>(top + 1), 0);
    s[0] = 1;
    for (int e : exponents)
        for (int d = e; d <= top; ++d) s[static_cast<std::size_t>(d)] += s[static_cast<std::size_t>(d - e)];
    return s;
}

std::vector<std::size_t> ranks(const HomologySummary& h) {
    std::vector<std::size_t> r;
    for (const auto& d : h.degrees) r.push_back(d.free_rank);
    return r;
}

DgAlgebra free_algebra(std::vector<Generator> gens, std::optional<int> bound = std::nullopt) {
    return DgAlgebra("free", std::move(gens), {}, bound);
}

const DgAlgebra& edge22() {
    static const DgAlgebra a = cobar_spheres(full_simplex({1, 2}), {{1, 2}, {2, 2}});
    return a;
}

} // namespace

TEST(Basis, Examples) {
    const auto b = Generator::indexed(1, 1);
    EXPECT_EQ(basis_in_degree(free_algebra({b}), 3).words, std::vector<Word>{Word({b, b, b})});
    EXPECT_EQ(basis_in_degree(free_algebra({b, Generator::indexed(2, 1)}), 2).size(), 4u);
    EXPECT_EQ(basis_in_degree(edge22(), 3).size(), 9u);
    EXPECT_EQ(basis_in_degree(edge22(), 0).words, std::vector<Word>{Word()});
    EXPECT_THROW(basis_in_degree(ah_cpn(std::nullopt, 5), 6), Unsupported);
}

TEST(Basis, CountsMatchGeneratingFunction) {
    // Words over generators of degrees e_i: the coefficients of 1/(1 - Σ t^{e_i}).
    std::vector<int> degs{1, 2, 2, 3};
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < degs.size(); ++i) gens.push_back(Generator::indexed(static_cast<int>(i) + 1, degs[i]));
    auto a = free_algebra(gens);
    std::vector<std::size_t> words(9, 0);
    words[0] = 1;
    for (int d = 1; d <= 8; ++d)
        for (int e : degs)
            if (d >= e) words[d] += words[d - e];
    for (int d = 0; d <= 8; ++d) EXPECT_EQ(basis_in_degree(a, d).size(), words[d]);
}

TEST(BoundaryMatrix, ColumnOfB12) {
    auto basis2 = basis_in_degree(edge22(), 2).words;
    auto basis3 = basis_in_degree(edge22(), 3).words;
    auto m = boundary_matrix(edge22(), 3).to_dense();
    const auto b1 = Generator::simplex({1}, 1), b2 = Generator::simplex({2}, 1), b12 = Generator::simplex({1, 2}, 3);
    auto col = std::find(basis3.begin(), basis3.end(), Word(b12)) - basis3.begin();
    for (std::size_t r = 0; r < basis2.size(); ++r) {
        int expected = basis2[r] == Word({b1, b2}) || basis2[r] == Word({b2, b1}) ? 1 : 0;
        EXPECT_EQ(m[r][col], expected) << to_string(basis2[r]);
    }
}

TEST(BoundaryMatrix, ColumnsMatchApplyDiff) {
    const auto& a = edge22();
    for (int d = 1; d <= 5; ++d) {
        auto dom = basis_in_degree(a, d).words;
        auto cod = basis_in_degree(a, d - 1).words;
        auto m = boundary_matrix(a, d).to_dense();
        for (std::size_t j = 0; j < dom.size(); ++j) {
            auto dx = apply_diff(a, GradedElement(dom[j]));
            for (std::size_t i = 0; i < cod.size(); ++i) EXPECT_EQ(m[i][j], dx.coefficient(cod[i]));
        }
    }
}

TEST(BoundaryMatrix, ComposesToZero) {
    for (const auto& a : {edge22(), cobar_dj(boundary_simplex({1, 2, 3}), 7), ah_cpn(3)}) {
        for (int d = 1; d <= 5; ++d) {
            auto lower = boundary_matrix(a, d).to_dense();
            auto upper = boundary_matrix(a, d + 1).to_dense();
            if (lower.empty() || upper.empty()) continue;
            for (const auto& row : multiply(lower, upper))
                for (const auto& x : row) EXPECT_EQ(x, 0);
        }
    }
}

TEST(BoundaryMatrix, ZeroDifferentialGivesZeroMatrix) {
    auto m = boundary_matrix(free_algebra({Generator::indexed(1, 1), Generator::indexed(2, 2)}), 4);
    EXPECT_TRUE(m.entries.empty());
}

TEST(Homology, RankNullityIdentity) {
    const auto& a = edge22();
    auto h = homology(a, 6);
    for (int d = 0; d <= 6; ++d) {
        auto rank_d = smith_normal_form(boundary_matrix(a, d)).rank();
        auto rank_up = smith_normal_form(boundary_matrix(a, d + 1)).rank();
        auto size = basis_in_degree(a, d).size();
        auto kernel = size - rank_d;
        EXPECT_EQ(h.degrees[d].free_rank, kernel - rank_up);
        EXPECT_EQ(h.degrees[d].chain_rank, size);
    }
}

TEST(Homology, SingleSphere) {
    for (int n : {2, 3, 4}) {
        auto h = homology(cobar_spheres(point(1), {{1, n}}), 9);
        for (int d = 0; d <= 9; ++d) EXPECT_EQ(h.degrees[d].free_rank, d % (n - 1) == 0 ? 1u : 0u) << n << ' ' << d;
        EXPECT_FALSE(h.has_torsion());
    }
}

TEST(Homology, ProjectiveSpaces) {
    for (int n : {1, 2, 3}) {
        auto h = homology(ah_cpn(n), 9);
        for (int d = 0; d <= 9; ++d) {
            bool expected = d % (2 * n) == 0 || d % (2 * n) == 1;
            EXPECT_EQ(h.degrees[d].free_rank, expected ? 1u : 0u) << "n=" << n << " d=" << d;
        }
    }
    auto inf = homology(ah_cpn(std::nullopt, 8), 7);
    EXPECT_EQ(ranks(inf), (std::vector<std::size_t>{1, 1, 0, 0, 0, 0, 0, 0}));
}

TEST(Homology, KunnethForFullSimplex) {
    std::vector<SphereDims> cases{{{1, 2}, {2, 2}}, {{1, 2}, {2, 3}}, {{1, 3}, {2, 4}, {3, 2}}, {{1, 2}, {2, 2}, {3, 2}}};
    for (const auto& dims : cases) {
        std::vector<Vertex> vs;
        std::vector<int> exps;
        for (auto [v, n] : dims) {
            vs.push_back(v);
            exps.push_back(n - 1);
        }
        const int top = 6;
        EXPECT_EQ(ranks(homology(cobar_spheres(full_simplex(vs), dims), top)), free_series(exps, top));
    }
}

TEST(Homology, EdgeRanksGrowLinearly) {
    auto r = ranks(homology(edge22(), 6));
    for (std::size_t d = 0; d < r.size(); ++d) EXPECT_EQ(r[d], d + 1);
}

TEST(Homology, ZeroDifferentialReproducesWordCounts) {
    auto a = free_algebra({Generator::indexed(1, 1), Generator::indexed(2, 2)});
    auto h = homology(a, 7);
    for (int d = 0; d <= 7; ++d) EXPECT_EQ(h.degrees[d].free_rank, basis_in_degree(a, d).size());
}

TEST(Homology, DetectsTorsion) {
    const auto x = Generator::indexed(1, 1), y = Generator::indexed(2, 2);
    DgAlgebra a("torsion", {x, y}, {{y, 2 * gen(x)}}, std::nullopt);
    auto h = homology(a, 1);
    EXPECT_EQ(h.degrees[1].torsion, std::vector<Integer>{2});
    EXPECT_TRUE(h.has_torsion());
}

TEST(Homology, TruncationIsEnforced) {
    EXPECT_THROW(homology(cobar_dj(full_simplex({1, 2}), 5), 5), Unsupported);
    EXPECT_NO_THROW(homology(cobar_dj(full_simplex({1, 2}), 5), 4));
}

TEST(Homology, ParallelMatchesSerial) {
    auto a = cobar_dj(boundary_simplex({1, 2, 3}), 8);
    EXPECT_EQ(homology(a, 7, 1), homology(a, 7, 4));
}

TEST(ClassIsZero, Examples) {
    const auto b1 = Generator::simplex({1}, 1), b2 = Generator::simplex({2}, 1), b12 = Generator::simplex({1, 2}, 3);
    auto r = class_is_zero(edge22(), edge22().diff(b12));
    EXPECT_TRUE(r.is_boundary);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(apply_diff(edge22(), *r.witness), edge22().diff(b12));

    auto wedge = SimplicialComplex::from_facets({{1}, {2}});
    auto w = cobar_spheres(wedge, uniform_dims(wedge));
    EXPECT_FALSE(class_is_zero(w, bracket(gen(b1), gen(b2))).is_boundary);
    EXPECT_TRUE(class_is_zero(w, GradedElement{}).is_boundary);
}

TEST(ClassIsZero, RejectsNonCycles) {
    const auto b12 = Generator::simplex({1, 2}, 3);
    EXPECT_THROW(class_is_zero(edge22(), gen(b12)), NotDefined);
    EXPECT_THROW(class_is_zero(edge22(), gen(b12) + gen(Generator::simplex({1}, 1))), MalformedInput);
}

TEST(ClassIsZero, RandomBoundariesAreZero) {
    std::mt19937 rng(79);
    std::vector<DgAlgebra> algebras{edge22(), cobar_dj(boundary_simplex({1, 2, 3}), 7), ah_cpn(3),
                                    cobar_spheres(full_simplex({1, 2, 3}), {{1, 2}, {2, 3}, {3, 2}})};
    for (const auto& a : algebras)
        for (int trial = 0; trial < 8; ++trial) {
            std::uniform_int_distribution<int> deg(2, 5);
            auto x = fixtures::random_element(rng, a, deg(rng));
            auto z = apply_diff(a, x);
            auto r = class_is_zero(a, z);
            EXPECT_TRUE(r.is_boundary);
            ASSERT_TRUE(r.witness);
            EXPECT_EQ(apply_diff(a, *r.witness), z);
        }
}

TEST(ClassIsZero, InvariantUnderAddingBoundaries) {
    std::mt19937 rng(83);
    auto a = cobar_dj(SimplicialComplex::from_facets({1, 2, 3}, {{1, 2}, {3}}), 7);
    const auto x1 = Generator::multiset({1}, 1), x3 = Generator::multiset({3}, 1);
    auto z = bracket(gen(x1), gen(x3));
    bool base = class_is_zero(a, z).is_boundary;
    EXPECT_FALSE(base);
    for (int trial = 0; trial < 10; ++trial) {
        auto y = fixtures::random_element(rng, a, 3);
        EXPECT_EQ(class_is_zero(a, z + apply_diff(a, y)).is_boundary, base);
    }
}

TEST(Homology, DavisJanuszkiewiczOfSimplices) {
    // Ω DJ(Δ^{n-1}) ≃ T^n, and Ω DJ(∂Δ^{n-1}) ≃ T^n × Ω S^{2n-1}.
    auto torus = [](int n, int top) {
        std::vector<std::size_t> s(static_cast<std::size_t>(top + 1), 0);
        std::size_t c = 1;
        for (int d = 0; d <= std::min(n, top); ++d) {
            s[static_cast<std::size_t>(d)] = c;
            c = c * static_cast<std::size_t>(n - d) / static_cast<std::size_t>(d + 1);
        }
        return s;
    };
    for (int n : {2, 3}) {
        std::vector<Vertex> vs;
        for (int v = 1; v <= n; ++v) vs.push_back(v);
        const int top = 7;
        EXPECT_EQ(ranks(homology(cobar_dj(full_simplex(vs), top + 1), top)), torus(n, top));
        auto t = torus(n, top);
        std::vector<std::size_t> expected(t.size(), 0);
        for (int d = 0; d <= top; ++d)
            for (int k = 0; k * (2 * n - 2) <= d; ++k) expected[d] += t[static_cast<std::size_t>(d - k * (2 * n - 2))];
        EXPECT_EQ(ranks(homology(cobar_dj(boundary_simplex(vs), top + 1), top)), expected) << "n=" << n;
    }
}
