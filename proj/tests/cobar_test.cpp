#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace polycobar;
using polycobar::fixtures::gen;

namespace {

GradedElement dj(std::vector<Vertex> label) { return dj_differential(Multiset::from_label(label)); }

Generator chi(std::vector<Vertex> label) {
    return Generator::multiset(label, 2 * static_cast<int>(label.size()) - 1);
}

std::vector<SimplicialComplex> sweep_complexes() {
    std::vector<SimplicialComplex> out{full_simplex({1, 2, 3, 4}), iterated_example_complex(),
                                       boundary_simplex({1, 2, 3}), SimplicialComplex::from_facets({{1}, {2}})};
    std::mt19937 rng(101);
    for (int i = 0; i < 10; ++i) out.push_back(fixtures::random_complex(rng, 2 + i % 5));
    return out;
}

} // namespace

TEST(CobarDj, DisplayedDifferentials) {
    EXPECT_EQ(to_string(dj({1, 1})), "x{1}*x{1}");
    EXPECT_EQ(to_string(dj({1, 2})), "x{1}*x{2} + x{2}*x{1}");
    EXPECT_EQ(to_string(dj({1, 1, 2})), "x{1}*x{1,2} + x{1,1}*x{2} + x{1,2}*x{1} + x{2}*x{1,1}");
    EXPECT_TRUE(dj({3}).is_zero());
}

TEST(CobarDj, GeneratorsFollowSupportAndBound) {
    auto k = boundary_simplex({1, 2, 3});
    auto a = cobar_dj(k, 7);
    for (const auto& g : a.generators()) {
        EXPECT_LE(g.degree, 7);
        EXPECT_TRUE(k.contains(Multiset::from_label(g.label).support()));
        EXPECT_EQ(g.degree, 2 * static_cast<int>(g.label.size()) - 1);
    }
    EXPECT_FALSE(a.contains(chi({1, 2, 3})));
    EXPECT_TRUE(a.contains(chi({1, 1, 2, 2})));
    EXPECT_THROW(cobar_dj(k, 0), MalformedInput);
}

TEST(CobarDj, MultisetCountPerSupport) {
    auto binom = [](int n, int r) {
        long v = 1;
        for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
        return static_cast<std::size_t>(v);
    };
    auto a = cobar_dj(full_simplex({1, 2, 3}), 11);
    std::map<std::pair<Simplex, int>, std::size_t> count;
    for (const auto& g : a.generators())
        ++count[{Multiset::from_label(g.label).support(), static_cast<int>(g.label.size())}];
    for (const auto& [key, n] : count)
        EXPECT_EQ(n, binom(key.second - 1, static_cast<int>(key.first.size()) - 1));
}

TEST(CobarDj, DSquaredVanishes) {
    EXPECT_TRUE(check_d_squared(cobar_dj(boundary_simplex({1, 2, 3}), 9)).passed());
    EXPECT_TRUE(check_d_squared(cobar_dj(iterated_example_complex(), 9), 4).passed());
}

TEST(CpN, Examples) {
    auto a1 = ah_cpn(1);
    ASSERT_EQ(a1.generators().size(), 1u);
    EXPECT_TRUE(a1.diff_table().empty());
    auto a3 = ah_cpn(3);
    EXPECT_EQ(to_string(a3.diff(Generator::indexed(2, 3))), "a1*a1");
    EXPECT_EQ(to_string(a3.diff(Generator::indexed(3, 5))), "a1*a2 + a2*a1");
    EXPECT_THROW(ah_cpn(std::nullopt), MalformedInput);
    EXPECT_THROW(ah_cpn(0), MalformedInput);
    EXPECT_EQ(ah_cpn(std::nullopt, 9).generators().size(), 5u);
    EXPECT_EQ(ah_cpn(6, 5).generators().size(), 3u);
    EXPECT_TRUE(check_d_squared(ah_cpn(6)).passed());
}

TEST(CobarSpheres, DisplayedDifferentials) {
    auto edge = full_simplex({1, 2});
    auto a = cobar_spheres(edge, {{1, 5}, {2, 2}});
    const auto b1 = Generator::simplex({1}, 4), b2 = Generator::simplex({2}, 1), b12 = Generator::simplex({1, 2}, 6);
    EXPECT_EQ(a.diff(b12), -bracket(gen(b1), gen(b2)));
    EXPECT_EQ(to_string(a.diff(b12)), "-b{1}*b{2} + b{2}*b{1}");

    auto c = cobar_spheres(full_simplex({2, 3}), {{2, 2}, {3, 2}});
    const auto c2 = Generator::simplex({2}, 1), c3 = Generator::simplex({3}, 1);
    EXPECT_EQ(c.diff(Generator::simplex({2, 3}, 3)), bracket(gen(c2), gen(c3)));
}

TEST(CobarSpheres, GeneratorDegrees) {
    auto a = cobar_spheres(full_simplex({1, 2, 3}), {{1, 2}, {2, 3}, {3, 4}});
    EXPECT_EQ(a.generators().size(), 7u);
    EXPECT_TRUE(a.contains(Generator::simplex({1, 2, 3}, 8)));
    EXPECT_TRUE(a.contains(Generator::simplex({3}, 3)));
}

TEST(CobarSpheres, BadDimensions) {
    EXPECT_THROW(cobar_spheres(full_simplex({1, 2}), {{1, 2}}), MalformedInput);
    EXPECT_THROW(cobar_spheres(full_simplex({1, 2}), {{1, 2}, {2, 1}}), Unsupported);
}

TEST(CobarSpheres, PartitionAndBracketFormsAgree) {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> size(2, 5);
        Simplex j;
        for (int v = 1; v <= size(rng); ++v) j.push_back(v);
        auto dims = fixtures::random_dims(rng, full_simplex(j));
        EXPECT_EQ(spheres_partition_differential(j, dims), spheres_bracket_differential(j, dims));
    }
}

TEST(CobarSpheres, DSquaredSweep) {
    std::mt19937 rng(59);
    for (const auto& k : sweep_complexes()) {
        auto report = check_d_squared(cobar_spheres(k, fixtures::random_dims(rng, k)));
        EXPECT_TRUE(report.passed());
    }
}

TEST(Coalgebra, HomologyCoproductExamples) {
    for (auto [n1, n2] : {std::pair{2, 2}, {3, 2}, {3, 5}, {4, 3}}) {
        auto c = homology_coalgebra(full_simplex({1, 2}), {{1, n1}, {2, n2}});
        const auto a12 = Generator::simplex({1, 2}, n1 + n2);
        const auto& terms = c.coproduct.at(a12);
        ASSERT_EQ(terms.size(), 2u);
        for (const auto& t : terms) {
            if (t.left.label == std::vector<int>{1}) EXPECT_EQ(t.coefficient, 1);
            else EXPECT_EQ(t.coefficient, sign_of_power(n1 * n2));
        }
        EXPECT_FALSE(c.coproduct.count(Generator::simplex({1}, n1)));
    }
    auto c = homology_coalgebra(full_simplex({1, 2, 3}), uniform_dims(full_simplex({1, 2, 3})));
    const auto& terms = c.coproduct.at(Generator::simplex({1, 2, 3}, 6));
    EXPECT_EQ(terms.size(), 6u);
    for (const auto& t : terms) EXPECT_EQ(t.coefficient, 1);
}

TEST(Coalgebra, CoproductsAreCoassociative) {
    std::mt19937 rng(61);
    for (const auto& k : sweep_complexes()) {
        EXPECT_TRUE(check_coassociative(homology_coalgebra(k, fixtures::random_dims(rng, k))));
        EXPECT_TRUE(check_coassociative(face_coalgebra(k, 8)));
    }
}

TEST(Coalgebra, CobarOfHomologyCoalgebraIsCobarSpheres) {
    std::mt19937 rng(67);
    for (const auto& k : sweep_complexes()) {
        auto dims = fixtures::random_dims(rng, k);
        EXPECT_TRUE(cobar_of_coalgebra(homology_coalgebra(k, dims)).same_structure(cobar_spheres(k, dims)));
    }
}

TEST(Coalgebra, CobarOfFaceCoalgebraIsCobarDj) {
    for (const auto& k : sweep_complexes())
        for (int n : {3, 6, 7}) EXPECT_TRUE(cobar_of_coalgebra(face_coalgebra(k, n + 1)).same_structure(cobar_dj(k, n)));
}

TEST(Coalgebra, SingleSphereHasZeroDifferential) {
    auto a = cobar_of_coalgebra(homology_coalgebra(point(1), {{1, 5}}));
    ASSERT_EQ(a.generators().size(), 1u);
    EXPECT_EQ(a.generators()[0].degree, 4);
    EXPECT_TRUE(a.diff_table().empty());
}

TEST(Coalgebra, InternalDifferentialEntersWithMinusSign) {
    CoalgebraPresentation c;
    const auto x = Generator::indexed(1, 3), y = Generator::indexed(2, 2);
    c.basis = {x, y};
    c.internal_diff[x] = {{Integer(2), y}};
    auto a = cobar_of_coalgebra(c);
    EXPECT_EQ(to_string(a.diff(Generator::indexed(1, 2))), "-2*a2");
}

TEST(Coalgebra, LowDegreeIsRejected) {
    CoalgebraPresentation c;
    c.basis = {Generator::indexed(1, 1)};
    EXPECT_THROW(cobar_of_coalgebra(c), Unsupported);
}

TEST(ApplyDiff, LeibnizRule) {
    std::mt19937 rng(71);
    auto a = cobar_spheres(full_simplex({1, 2, 3}), {{1, 2}, {2, 3}, {3, 2}});
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> deg(1, 6);
        int p = deg(rng), q = deg(rng);
        auto x = fixtures::random_element(rng, a, p), y = fixtures::random_element(rng, a, q);
        GradedElement rhs = apply_diff(a, x) * y + sign_of_power(p) * (x * apply_diff(a, y));
        EXPECT_EQ(apply_diff(a, x * y), rhs);
    }
    EXPECT_TRUE(apply_diff(a, GradedElement::unit()).is_zero());
    EXPECT_THROW(apply_diff(a, gen(Generator::simplex({9}, 1))), MalformedInput);
}

TEST(Embedding, SpheresIntoDjIsAChainMap) {
    for (const auto& k : sweep_complexes()) {
        auto s = cobar_spheres(k, uniform_dims(k));
        auto d = cobar_dj(k, 2 * static_cast<int>(k.max_simplex_size()) - 1);
        for (const auto& g : s.generators()) {
            auto image = embed_spheres_into_dj(gen(g));
            EXPECT_TRUE(subalgebra_membership(d, d, image));
            EXPECT_EQ(embed_spheres_into_dj(s.diff(g)), apply_diff(d, image)) << to_string(g);
        }
    }
}

TEST(Subalgebra, Membership) {
    auto big = cobar_dj(full_simplex({1, 2, 3}), 5);
    auto small = cobar_dj(boundary_simplex({1, 2, 3}), 5);
    EXPECT_TRUE(subalgebra_membership(big, small, dj({1, 2, 3})));
    EXPECT_FALSE(subalgebra_membership(big, small, gen(chi({1, 2, 3}))));
    EXPECT_THROW(subalgebra_membership(small, big, gen(chi({1}))), MalformedInput);
}

TEST(DgAlgebra, ValidatesInput) {
    const auto a = Generator::indexed(1, 1), b = Generator::indexed(2, 3);
    EXPECT_THROW(DgAlgebra("x", {a, a}, {}, std::nullopt), MalformedInput);
    EXPECT_THROW(DgAlgebra("x", {a, Generator::indexed(1, 2)}, {}, std::nullopt), MalformedInput);
    EXPECT_THROW(DgAlgebra("x", {Generator::indexed(1, 0)}, {}, std::nullopt), MalformedInput);
    EXPECT_THROW(DgAlgebra("x", {a, b}, {{b, gen(a)}}, std::nullopt), MalformedInput);
    EXPECT_THROW(DgAlgebra("x", {b}, {{b, gen(a) * gen(a)}}, std::nullopt), MalformedInput);
    EXPECT_NO_THROW(DgAlgebra("x", {a, b}, {{b, gen(a) * gen(a)}}, std::nullopt));
}

TEST(DgaMap, IdentityIsAChainMap) {
    auto a = cobar_dj(boundary_simplex({1, 2, 3}), 7);
    DgaMap id{a, a, {}};
    for (const auto& g : a.generators()) id.images[g] = gen(g);
    EXPECT_TRUE(id.chain_map_failures().empty());
    id.images[chi({1, 2})] = 2 * gen(chi({1, 2}));
    auto bad = id.chain_map_failures();
    EXPECT_FALSE(bad.empty());
    EXPECT_NE(std::find(bad.begin(), bad.end(), chi({1, 2})), bad.end());
}
