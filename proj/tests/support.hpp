#pragma once

#include "polycobar/polycobar.hpp"

#include <random>
#include <vector>

namespace polycobar::fixtures {

/// Random complex on vertices 1..n: random candidate facets closed downward.
inline SimplicialComplex random_complex(std::mt19937& rng, int n) {
    std::vector<Vertex> vs;
    for (int v = 1; v <= n; ++v) vs.push_back(v);
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<unsigned> mask(1, (1u << n) - 1);
    std::vector<std::vector<Vertex>> facets;
    for (int i = count(rng); i > 0; --i) {
        unsigned m = mask(rng);
        std::vector<Vertex> f;
        for (int v = 1; v <= n; ++v)
            if (m & (1u << (v - 1))) f.push_back(v);
        facets.push_back(f);
    }
    return SimplicialComplex::from_facets(vs, facets);
}

inline SphereDims random_dims(std::mt19937& rng, const SimplicialComplex& k) {
    std::uniform_int_distribution<int> dim(2, 4);
    SphereDims dims;
    for (Vertex v : k.vertices()) dims[v] = dim(rng);
    return dims;
}

/// Random homogeneous element of degree d built from words of the algebra.
inline GradedElement random_element(std::mt19937& rng, const DgAlgebra& a, int d, int terms = 4) {
    const auto basis = basis_in_degree(a, d);
    GradedElement x;
    if (basis.size() == 0) return x;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int i = 0; i < terms; ++i) x.add_term(basis.words[pick(rng)], Integer(coef(rng)));
    return x;
}

inline GradedElement gen(const Generator& g) { return GradedElement(g); }

} // namespace polycobar::fixtures
