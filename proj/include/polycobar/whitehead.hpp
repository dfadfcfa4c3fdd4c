#pragma once

#include "polycobar/algebra.hpp"
#include "polycobar/bracket.hpp"
#include "polycobar/cobar.hpp"
#include "polycobar/complexes.hpp"
#include "polycobar/error.hpp"
#include "polycobar/homology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polycobar {

/// Explicit cobar cycle representing the Hurewicz image of a Whitehead
/// product in Cobar Z<K> (≅ AH of the Davis-Januszkiewicz space).
struct WhiteheadChain {
    BracketExpr bracket;
    SimplicialComplex complex;
    DgAlgebra ambient;
    GradedElement chain;
    int degree = 0;
};

struct HurewiczReport {
    bool cycle = false;
    bool zero_class = false;
    std::optional<GradedElement> witness;
};

/// Image of the generator of AH(S^{N-1}) under the model of the attaching
/// map of the top cell of S^{n_1} × ... × S^{n_k}: the anchored-bracket form
/// of ∂b_J, computed in the full-simplex algebra. It lies in the ∂Δ(J) part.
inline GradedElement attaching_cycle(const Simplex& j_in, const SphereDims& dims) {
    Simplex j = detail::normalized(j_in, "attaching simplex");
    if (j.size() < 2) throw Unsupported("the attaching map needs at least two spheres");
    SphereDims local;
    for (Vertex v : j) {
        auto it = dims.find(v);
        if (it == dims.end()) throw MalformedInput("no sphere dimension for vertex " + std::to_string(v));
        local[v] = it->second;
    }
    GradedElement z = spheres_bracket_differential(j, local);
    const DgAlgebra full = cobar_spheres(full_simplex(j), local);
    const DgAlgebra fat_wedge = cobar_spheres(boundary_simplex(j), local);
    if (!subalgebra_membership(full, fat_wedge, z))
        throw InternalError("attaching cycle leaves the fat-wedge subalgebra");
    if (z != full.diff(detail::sphere_generator(j, local)))
        throw InternalError("bracket and partition forms of the differential disagree");
    return z;
}

/// Chain "∂χ_I" for the first-order bracket [μ_{i_1}, ..., μ_{i_n}] in K.
/// Defined exactly when ∂Δ(I) ⊂ K.
inline WhiteheadChain first_order_hurewicz_cycle(const std::vector<Vertex>& indices, const SimplicialComplex& k) {
    Simplex i = detail::normalized(indices, "bracket indices");
    if (i.size() < 2) throw Unsupported("a Whitehead bracket needs at least two classes");
    for (Vertex v : i)
        if (!k.contains(Simplex{v}))
            throw NotDefined("vertex " + std::to_string(v) + " is not in the complex");
    const SimplicialComplex boundary = boundary_simplex(i);
    Simplex missing;
    if (first_missing_simplex(k, boundary, missing))
        throw NotDefined("Whitehead product not defined: simplex " + to_string(missing) +
                         " of the boundary complex is not in K");

    std::vector<BracketExpr> leaves;
    for (Vertex v : indices) leaves.push_back(BracketExpr::make_leaf(v));

    WhiteheadChain w;
    w.bracket = BracketExpr::make_node(std::move(leaves));
    w.complex = k;
    w.degree = 2 * static_cast<int>(i.size()) - 2;
    w.ambient = cobar_dj(k, w.degree + 1);
    std::map<Vertex, int> counts;
    for (Vertex v : i) counts[v] = 1;
    w.chain = dj_differential(Multiset(counts));
    for (const auto& [word, c] : w.chain.terms())
        for (const auto& f : word.factors())
            if (!w.ambient.contains(f)) throw InternalError("first-order chain leaves Cobar Z<K>");
    return w;
}

/// K = ∂Δ(∂Δ(1,2,3), 4, 5).
inline SimplicialComplex iterated_example_complex() {
    return complexes_of_bracket(parse_bracket("[[m1,m2,m3],m4,m5]")).boundary;
}

/// Model of g: T(S^5, S^2, S^2) → (S^2)^K for K = ∂Δ(∂Δ(1,2,3),4,5), induced by
/// the attaching map S^5 → T(S^2,S^2,S^2) and the identities on S^2.
/// Images that involve the missing cells c_123, c_1234, c_1235 are computed in
/// the full-simplex algebra and then land in the K-algebra.
inline DgaMap ah_map_g_images() {
    const SimplicialComplex k = iterated_example_complex();
    const SphereDims source_dims{{1, 5}, {2, 2}, {3, 2}};
    DgaMap g;
    g.source = cobar_spheres(boundary_simplex({1, 2, 3}), source_dims);
    g.target = cobar_spheres(k, uniform_dims(k));

    const DgAlgebra full = cobar_spheres(full_simplex({1, 2, 3, 4, 5}), uniform_dims(full_simplex({1, 2, 3, 4, 5})));
    auto c = [&](Simplex s) { return GradedElement(detail::sphere_generator(s, uniform_dims(full_simplex({1, 2, 3, 4, 5})))); };
    auto d = [&](Simplex s) { return apply_diff(full, c(std::move(s))); };
    auto b = [&](Simplex s) { return detail::sphere_generator(s, source_dims); };

    g.images[b({1})] = d({1, 2, 3});
    g.images[b({2})] = c({4});
    g.images[b({3})] = c({5});
    g.images[b({1, 2})] = d({1, 2, 3, 4}) - bracket(c({1, 2, 3}), c({4}));
    g.images[b({1, 3})] = d({1, 2, 3, 5}) - bracket(c({1, 2, 3}), c({5}));
    g.images[b({2, 3})] = c({4, 5});

    for (const auto& [gen, img] : g.images)
        if (!subalgebra_membership(full, g.target, img))
            throw InternalError("image of " + to_string(gen) + " is not in the K-algebra");
    return g;
}

/// a ↦ "∂b_123" ↦ AH(g) ↦ AH(i): the image of the generator of AH(S^8).
inline GradedElement iterated_example_composite() {
    const GradedElement omega = attaching_cycle({1, 2, 3}, SphereDims{{1, 5}, {2, 2}, {3, 2}});
    return embed_spheres_into_dj(ah_map_g_images().apply(omega));
}

/// -∂([χ_123, χ_45] + [χ_1234, χ_5] + [χ_1235, χ_4]) for [[μ1,μ2,μ3],μ4,μ5].
/// Computed in Cobar Z<Δ(1..5)>, checked to lie in Cobar Z<K>, to be a cycle
/// there, and to agree with the composite of the Adams-Hilton image tables.
inline WhiteheadChain iterated_example_chain() {
    const SimplicialComplex full_complex = full_simplex({1, 2, 3, 4, 5});
    const DgAlgebra full = cobar_dj(full_complex, 9);
    auto chi = [](std::vector<Vertex> s) {
        return GradedElement(Generator::multiset(s, 2 * static_cast<int>(s.size()) - 1));
    };
    const GradedElement sum = bracket(chi({1, 2, 3}), chi({4, 5})) + bracket(chi({1, 2, 3, 4}), chi({5})) +
                              bracket(chi({1, 2, 3, 5}), chi({4}));

    WhiteheadChain w;
    w.bracket = parse_bracket("[[m1,m2,m3],m4,m5]");
    w.complex = iterated_example_complex();
    w.ambient = cobar_dj(w.complex, 8);
    w.chain = -apply_diff(full, sum);
    w.degree = 7;

    if (w.chain.degree() != 7) throw InternalError("iterated Whitehead chain does not have degree 7");
    if (!subalgebra_membership(full, w.ambient, w.chain))
        throw InternalError("iterated Whitehead chain is not in Cobar Z<K>");
    if (!apply_diff(w.ambient, w.chain).is_zero()) throw InternalError("iterated Whitehead chain is not a cycle");
    if (iterated_example_composite() != w.chain)
        throw InternalError("direct and composite evaluations of the Whitehead chain differ");
    return w;
}

inline HurewiczReport hurewicz_class_report(const WhiteheadChain& w) {
    HurewiczReport r;
    r.cycle = apply_diff(w.ambient, w.chain).is_zero();
    if (!r.cycle) return r;
    auto solved = class_is_zero(w.ambient, w.chain);
    r.zero_class = solved.is_boundary;
    r.witness = std::move(solved.witness);
    return r;
}

} // namespace polycobar
