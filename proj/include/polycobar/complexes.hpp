#pragma once

#include "polycobar/error.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace polycobar {

using Vertex = int;

/// Strictly increasing list of vertex ids; the empty list is the empty simplex.
using Simplex = std::vector<Vertex>;

inline std::string to_string(const Simplex& s) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ',';
        os << s[i];
    }
    os << '}';
    return os.str();
}

namespace detail {

inline Simplex normalized(std::vector<Vertex> ids, const char* what) {
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw MalformedInput(std::string(what) + ": repeated vertex id");
    for (Vertex v : ids)
        if (v <= 0) throw MalformedInput(std::string(what) + ": vertex ids must be positive");
    return ids;
}

/// All subsets of `s` (including the empty set and `s` itself).
inline std::vector<Simplex> subsets(const Simplex& s) {
    std::vector<Simplex> out;
    const std::size_t n = s.size();
    out.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Simplex sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) sub.push_back(s[i]);
        out.push_back(std::move(sub));
    }
    return out;
}

} // namespace detail

/// Finite simplicial complex stored as its full downward-closed family of
/// simplices. Always contains the empty simplex and every vertex singleton.
class SimplicialComplex {
public:
    SimplicialComplex() : simplices_{Simplex{}} {}

    /// Builds the closure of `facets` on `vertices`. Facet vertices missing
    /// from `vertices` are rejected.
    static SimplicialComplex from_facets(std::vector<Vertex> vertices,
                                         const std::vector<std::vector<Vertex>>& facets) {
        SimplicialComplex k;
        k.vertices_ = detail::normalized(std::move(vertices), "vertex list");
        for (Vertex v : k.vertices_) k.simplices_.insert(Simplex{v});
        for (const auto& raw : facets) {
            Simplex f = detail::normalized(raw, "facet");
            for (Vertex v : f)
                if (!std::binary_search(k.vertices_.begin(), k.vertices_.end(), v))
                    throw MalformedInput("facet " + to_string(f) + " uses vertex " +
                                         std::to_string(v) + " outside the vertex list");
            k.add_closure(f);
        }
        return k;
    }

    /// Like from_facets, with the vertex set taken as the union of the facets.
    static SimplicialComplex from_facets(const std::vector<std::vector<Vertex>>& facets) {
        std::set<Vertex> vs;
        for (const auto& f : facets) vs.insert(f.begin(), f.end());
        return from_facets(std::vector<Vertex>(vs.begin(), vs.end()), facets);
    }

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const std::set<Simplex>& simplices() const noexcept { return simplices_; }
    std::size_t size() const noexcept { return simplices_.size(); }

    bool contains(const Simplex& s) const { return simplices_.count(s) != 0; }

    /// Maximal simplices in the set order.
    std::vector<Simplex> facets() const {
        std::vector<Simplex> out;
        for (const auto& s : simplices_) {
            if (s.empty() && simplices_.size() > 1) continue;
            bool maximal = true;
            for (Vertex v : vertices_) {
                if (std::binary_search(s.begin(), s.end(), v)) continue;
                Simplex bigger = s;
                bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), v), v);
                if (contains(bigger)) {
                    maximal = false;
                    break;
                }
            }
            if (maximal) out.push_back(s);
        }
        return out;
    }

    /// Largest simplex size.
    std::size_t max_simplex_size() const {
        std::size_t n = 0;
        for (const auto& s : simplices_) n = std::max(n, s.size());
        return n;
    }

    bool is_downward_closed() const {
        for (const auto& s : simplices_)
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                if (!contains(face)) return false;
            }
        return contains(Simplex{});
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.vertices_ == b.vertices_ && a.simplices_ == b.simplices_;
    }

private:
    void add_closure(const Simplex& s) {
        if (contains(s)) return;
        for (auto& sub : detail::subsets(s)) simplices_.insert(std::move(sub));
    }

    friend SimplicialComplex from_simplex_set(std::vector<Vertex>, std::set<Simplex>);

    std::vector<Vertex> vertices_;
    std::set<Simplex> simplices_;
};

inline SimplicialComplex from_simplex_set(std::vector<Vertex> vertices, std::set<Simplex> simplices) {
    SimplicialComplex k;
    k.vertices_ = std::move(vertices);
    k.simplices_ = std::move(simplices);
    k.simplices_.insert(Simplex{});
    for (Vertex v : k.vertices_) k.simplices_.insert(Simplex{v});
    if (!k.is_downward_closed()) throw InternalError("simplex family is not downward closed");
    return k;
}

/// Δ(ids): every subset of `ids`.
inline SimplicialComplex full_simplex(std::vector<Vertex> ids) {
    if (ids.empty()) throw MalformedInput("full simplex needs at least one vertex");
    Simplex top = detail::normalized(std::move(ids), "full simplex");
    return SimplicialComplex::from_facets(top, {top});
}

/// ∂Δ(ids): Δ(ids) without its top simplex.
inline SimplicialComplex boundary_simplex(std::vector<Vertex> ids) {
    if (ids.size() < 2) throw Unsupported("boundary simplex needs at least two vertices");
    Simplex top = detail::normalized(std::move(ids), "boundary simplex");
    std::set<Simplex> all;
    for (auto& s : detail::subsets(top))
        if (s.size() < top.size()) all.insert(std::move(s));
    return from_simplex_set(top, std::move(all));
}

/// Substitution complex K(K_1, ..., K_m). `parts[i]` replaces the i-th vertex
/// of K in increasing order. Part labels are kept verbatim.
inline SimplicialComplex substitution(const SimplicialComplex& k,
                                      const std::vector<SimplicialComplex>& parts) {
    const auto& kv = k.vertices();
    if (parts.size() != kv.size())
        throw MalformedInput("substitution needs one part per vertex: got " +
                             std::to_string(parts.size()) + " parts for " +
                             std::to_string(kv.size()) + " vertices");
    std::set<Vertex> seen;
    std::vector<Vertex> vertices;
    for (const auto& p : parts)
        for (Vertex v : p.vertices()) {
            if (!seen.insert(v).second)
                throw MalformedInput("substitution parts share vertex " + std::to_string(v));
            vertices.push_back(v);
        }
    std::sort(vertices.begin(), vertices.end());

    auto part_of = [&](Vertex v) -> const SimplicialComplex& {
        auto it = std::lower_bound(kv.begin(), kv.end(), v);
        return parts[static_cast<std::size_t>(it - kv.begin())];
    };

    std::set<Simplex> result;
    for (const auto& s : k.simplices()) {
        std::vector<Simplex> partial{Simplex{}};
        for (Vertex j : s) {
            std::vector<Simplex> next;
            for (const auto& prefix : partial)
                for (const auto& piece : part_of(j).simplices()) {
                    Simplex joined = prefix;
                    joined.insert(joined.end(), piece.begin(), piece.end());
                    next.push_back(std::move(joined));
                }
            partial = std::move(next);
        }
        for (auto& u : partial) {
            std::sort(u.begin(), u.end());
            result.insert(std::move(u));
        }
    }
    return from_simplex_set(std::move(vertices), std::move(result));
}

/// True iff every simplex of `l` is a simplex of `k`.
inline bool contains_subcomplex(const SimplicialComplex& k, const SimplicialComplex& l) {
    return std::all_of(l.simplices().begin(), l.simplices().end(),
                       [&](const Simplex& s) { return k.contains(s); });
}

/// Stores the first simplex of `l` missing from `k` in `out`; false when l ⊂ k.
inline bool first_missing_simplex(const SimplicialComplex& k, const SimplicialComplex& l, Simplex& out) {
    for (const auto& s : l.simplices())
        if (!k.contains(s)) {
            out = s;
            return true;
        }
    return false;
}

/// One-vertex complex {∅, {v}}.
inline SimplicialComplex point(Vertex v) { return full_simplex({v}); }

} // namespace polycobar
