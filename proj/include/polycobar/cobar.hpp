#pragma once

#include "polycobar/algebra.hpp"
#include "polycobar/complexes.hpp"
#include "polycobar/error.hpp"
#include "polycobar/parallel.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace polycobar {

/// Sphere dimension n_i for each vertex i.
using SphereDims = std::map<Vertex, int>;

/// Vertex multiset σ. Counts are positive; the support I_σ is the key set.
class Multiset {
public:
    Multiset() = default;
    explicit Multiset(std::map<Vertex, int> counts) : counts_(std::move(counts)) {
        for (const auto& [v, k] : counts_)
            if (k <= 0) throw MalformedInput("multiset counts must be positive");
    }
    static Multiset from_label(const std::vector<Vertex>& label) {
        std::map<Vertex, int> m;
        for (Vertex v : label) ++m[v];
        return Multiset(std::move(m));
    }

    const std::map<Vertex, int>& counts() const noexcept { return counts_; }
    int size() const {
        int s = 0;
        for (const auto& [v, k] : counts_) s += k;
        return s;
    }
    Simplex support() const {
        Simplex s;
        for (const auto& [v, k] : counts_) s.push_back(v);
        return s;
    }
    bool empty() const noexcept { return counts_.empty(); }

    /// Nondecreasing list with repeats, e.g. {1,1,2}.
    std::vector<Vertex> label() const {
        std::vector<Vertex> out;
        for (const auto& [v, k] : counts_) out.insert(out.end(), static_cast<std::size_t>(k), v);
        return out;
    }

    friend bool operator==(const Multiset&, const Multiset&) = default;

private:
    std::map<Vertex, int> counts_;
};

/// Free dg algebra (T(V), ∂) given by a generator table and the differential
/// of each generator. When `degree_bound` is set the algebra is the truncation
/// keeping generators of degree ≤ bound, so it is complete only in degrees
/// ≤ bound.
class DgAlgebra {
public:
    DgAlgebra() = default;
    DgAlgebra(std::string name, std::vector<Generator> generators,
              std::map<Generator, GradedElement> diff, std::optional<int> degree_bound)
        : name_(std::move(name)), generators_(std::move(generators)), diff_(std::move(diff)),
          degree_bound_(degree_bound) {
        std::sort(generators_.begin(), generators_.end());
        if (std::adjacent_find(generators_.begin(), generators_.end()) != generators_.end())
            throw MalformedInput("duplicate generator in algebra " + name_);
        for (std::size_t i = 1; i < generators_.size(); ++i)
            if (generators_[i].same_token(generators_[i - 1]))
                throw MalformedInput("generator " + to_string(generators_[i]) + " listed with two degrees");
        for (const auto& g : generators_)
            if (g.degree < 1) throw MalformedInput("generator " + to_string(g) + " has degree < 1");
        for (const auto& [g, dg] : diff_) {
            if (!contains(g)) throw MalformedInput("differential given for unknown generator " + to_string(g));
            for (const auto& [w, c] : dg.terms()) {
                if (w.degree() != g.degree - 1)
                    throw MalformedInput("differential of " + to_string(g) + " does not lower degree by one");
                for (const auto& f : w.factors())
                    if (!contains(f))
                        throw MalformedInput("differential of " + to_string(g) + " uses unknown generator " +
                                             to_string(f));
            }
        }
        weight_graded_ = true;
        for (const auto& [g, dg] : diff_) {
            const Weight gw = g.weight();
            for (const auto& [w, c] : dg.terms())
                if (w.weight() != gw) weight_graded_ = false;
        }
    }

    const std::string& name() const noexcept { return name_; }
    const std::vector<Generator>& generators() const noexcept { return generators_; }
    std::optional<int> degree_bound() const noexcept { return degree_bound_; }

    /// True when every differential preserves the vertex weight, so the chain
    /// complex splits into weight components.
    bool weight_graded() const noexcept { return weight_graded_; }

    bool contains(const Generator& g) const {
        return std::binary_search(generators_.begin(), generators_.end(), g);
    }

    /// Differential of a generator (zero when not listed).
    const GradedElement& diff(const Generator& g) const {
        static const GradedElement zero;
        auto it = diff_.find(g);
        return it == diff_.end() ? zero : it->second;
    }

    const std::map<Generator, GradedElement>& diff_table() const noexcept { return diff_; }

    /// Same generators, differentials and truncation (names may differ).
    bool same_structure(const DgAlgebra& o) const {
        if (generators_ != o.generators_ || degree_bound_ != o.degree_bound_) return false;
        for (const auto& g : generators_)
            if (diff(g) != o.diff(g)) return false;
        return true;
    }

private:
    std::string name_;
    std::vector<Generator> generators_;
    std::map<Generator, GradedElement> diff_;
    std::optional<int> degree_bound_;
    bool weight_graded_ = false;
};

/// ∂ extended linearly and by ∂(xy) = ∂x·y + (-1)^{|x|} x·∂y.
inline GradedElement apply_diff(const DgAlgebra& a, const GradedElement& x) {
    GradedElement out;
    for (const auto& [w, c] : x.terms()) {
        const auto& fs = w.factors();
        int prefix_degree = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (!a.contains(fs[i]))
                throw MalformedInput("generator " + to_string(fs[i]) + " does not belong to " + a.name());
            const GradedElement& dg = a.diff(fs[i]);
            if (!dg.is_zero()) {
                const Integer sign = sign_of_power(prefix_degree);
                for (const auto& [u, cu] : dg.terms()) {
                    std::vector<Generator> word(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(i));
                    word.insert(word.end(), u.factors().begin(), u.factors().end());
                    word.insert(word.end(), fs.begin() + static_cast<std::ptrdiff_t>(i) + 1, fs.end());
                    out.add_term(Word(std::move(word)), c * cu * sign);
                }
            }
            prefix_degree += fs[i].degree;
        }
    }
    return out;
}

struct DSquaredReport {
    std::size_t generators_checked = 0;
    std::vector<std::pair<Generator, GradedElement>> failures;

    bool passed() const noexcept { return failures.empty(); }
};

/// Applies ∂ twice to every generator and collects the nonzero results.
inline DSquaredReport check_d_squared(const DgAlgebra& a, unsigned jobs = 1) {
    const auto& gens = a.generators();
    std::vector<GradedElement> results(gens.size());
    detail::parallel_for(gens.size(), jobs, [&](std::size_t i) {
        results[i] = apply_diff(a, a.diff(gens[i]));
    });
    DSquaredReport report;
    report.generators_checked = gens.size();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!results[i].is_zero()) report.failures.emplace_back(gens[i], std::move(results[i]));
    return report;
}

/// True iff every word of `x` uses only generators of `small`. Requires the
/// generators of `small` to be generators of `big`.
inline bool subalgebra_membership(const DgAlgebra& big, const DgAlgebra& small, const GradedElement& x) {
    for (const auto& g : small.generators())
        if (!big.contains(g))
            throw MalformedInput("generator " + to_string(g) + " of " + small.name() + " is not in " + big.name());
    for (const auto& [w, c] : x.terms())
        for (const auto& f : w.factors())
            if (!small.contains(f)) return false;
    return true;
}

/// Algebra map T(V) → T(W) determined by generator images.
struct DgaMap {
    DgAlgebra source;
    DgAlgebra target;
    std::map<Generator, GradedElement> images;

    GradedElement apply(const GradedElement& x) const {
        GradedElement out;
        for (const auto& [w, c] : x.terms()) {
            GradedElement prod = GradedElement::unit();
            for (const auto& f : w.factors()) {
                auto it = images.find(f);
                if (it == images.end()) throw MalformedInput("no image for generator " + to_string(f));
                prod = prod * it->second;
            }
            out += c * prod;
        }
        return out;
    }

    /// Generators v with image(∂v) ≠ ∂(image(v)).
    std::vector<Generator> chain_map_failures() const {
        std::vector<Generator> bad;
        for (const auto& g : source.generators())
            if (apply(source.diff(g)) != apply_diff(target, apply(GradedElement(g)))) bad.push_back(g);
        return bad;
    }
};

namespace detail {

inline int sphere_sum(const std::vector<Vertex>& s, const SphereDims& dims) {
    int total = 0;
    for (Vertex v : s) total += dims.at(v);
    return total;
}

inline void validate_dims(const SimplicialComplex& k, const SphereDims& dims) {
    for (Vertex v : k.vertices()) {
        auto it = dims.find(v);
        if (it == dims.end()) throw MalformedInput("no sphere dimension given for vertex " + std::to_string(v));
        if (it->second < 2)
            throw Unsupported("sphere dimension " + std::to_string(it->second) + " at vertex " +
                              std::to_string(v) + ": factors must be simply connected (n >= 2)");
    }
}

/// Splits the sorted simplex `j` by bitmask into (I, L) and returns the
/// Koszul sign of moving the suspended symbols into the order I, L.
inline int unshuffle_sign(const Simplex& j, unsigned mask, const SphereDims& dims, Simplex& i_part,
                          Simplex& l_part) {
    i_part.clear();
    l_part.clear();
    std::vector<int> degrees;
    std::vector<int> perm_i, perm_l;
    for (std::size_t t = 0; t < j.size(); ++t) {
        degrees.push_back(dims.at(j[t]));
        if (mask & (1u << t)) {
            i_part.push_back(j[t]);
            perm_i.push_back(static_cast<int>(t));
        } else {
            l_part.push_back(j[t]);
            perm_l.push_back(static_cast<int>(t));
        }
    }
    perm_i.insert(perm_i.end(), perm_l.begin(), perm_l.end());
    return koszul_sign(degrees, perm_i);
}

inline Generator sphere_generator(const Simplex& j, const SphereDims& dims) {
    return Generator::simplex(j, sphere_sum(j, dims) - 1);
}

} // namespace detail

/// ∂b_J as the sum over ordered partitions J = I ⊔ L of
/// ε(I,L) (-1)^{|b_I|+1} b_I b_L, ε the Koszul sign on the degrees n_i.
inline GradedElement spheres_partition_differential(const Simplex& j, const SphereDims& dims) {
    GradedElement out;
    if (j.size() < 2) return out;
    Simplex ip, lp;
    const unsigned full = (1u << j.size()) - 1;
    for (unsigned mask = 1; mask < full; ++mask) {
        const int eps = detail::unshuffle_sign(j, mask, dims, ip, lp);
        const Generator bi = detail::sphere_generator(ip, dims);
        const Generator bl = detail::sphere_generator(lp, dims);
        out.add_term(Word({bi, bl}), Integer(eps * sign_of_power(bi.degree + 1)));
    }
    return out;
}

/// The same differential written with anchored shuffles θ(1) = 1 and graded
/// commutators: Σ_p Σ_θ ε(θ) (-1)^{|b_I|+1} [b_I, b_L].
inline GradedElement spheres_bracket_differential(const Simplex& j, const SphereDims& dims) {
    GradedElement out;
    const int s = static_cast<int>(j.size());
    std::vector<int> degrees;
    for (Vertex v : j) degrees.push_back(dims.at(v));
    for (int p = 1; p < s; ++p)
        for (const auto& theta : shuffles(p, s - p, true)) {
            Simplex ip, lp;
            for (int t = 0; t < p; ++t) ip.push_back(j[static_cast<std::size_t>(theta[static_cast<std::size_t>(t)])]);
            for (int t = p; t < s; ++t) lp.push_back(j[static_cast<std::size_t>(theta[static_cast<std::size_t>(t)])]);
            const Generator bi = detail::sphere_generator(ip, dims);
            const Generator bl = detail::sphere_generator(lp, dims);
            const int sign = koszul_sign(degrees, theta) * sign_of_power(bi.degree + 1);
            out += sign * bracket(GradedElement(bi), GradedElement(bl));
        }
    return out;
}

/// Cobar H_*((S)^K) ≅ AH((S)^K): generators b_J, J ∈ K nonempty,
/// |b_J| = Σ_{j∈J} n_j - 1.
inline DgAlgebra cobar_spheres(const SimplicialComplex& k, const SphereDims& dims) {
    detail::validate_dims(k, dims);
    if (k.max_simplex_size() > 30) throw Unsupported("simplex too large");
    std::vector<Generator> gens;
    std::map<Generator, GradedElement> diff;
    for (const auto& j : k.simplices()) {
        if (j.empty()) continue;
        Generator g = detail::sphere_generator(j, dims);
        gens.push_back(g);
        GradedElement d = spheres_partition_differential(j, dims);
        if (!d.is_zero()) diff.emplace(g, std::move(d));
    }
    return DgAlgebra("Cobar H(S^K)", std::move(gens), std::move(diff), std::nullopt);
}

/// Every sphere of dimension n on the vertices of `k`.
inline SphereDims uniform_dims(const SimplicialComplex& k, int n = 2) {
    SphereDims d;
    for (Vertex v : k.vertices()) d[v] = n;
    return d;
}

namespace detail {

/// Calls fn(τ) for every submultiset τ of σ given as per-vertex counts.
template <class Fn>
void for_each_submultiset(const Multiset& sigma, Fn&& fn) {
    std::vector<std::pair<Vertex, int>> slots(sigma.counts().begin(), sigma.counts().end());
    std::vector<int> pick(slots.size(), 0);
    while (true) {
        std::map<Vertex, int> tau;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (pick[i] > 0) tau[slots[i].first] = pick[i];
        fn(tau);
        std::size_t i = 0;
        while (i < slots.size() && pick[i] == slots[i].second) pick[i++] = 0;
        if (i == slots.size()) break;
        ++pick[i];
    }
}

inline Generator dj_generator(const Multiset& m) { return Generator::multiset(m.label(), 2 * m.size() - 1); }

/// Positive compositions of `total` into `parts` entries.
inline void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int k = 1; k <= total - (parts - 1); ++k) {
        cur.push_back(k);
        compositions(total - k, parts - 1, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

/// ∂χ_σ = Σ over ordered splittings σ = τ ⊔ τ' into nonempty parts of χ_τ χ_τ'.
inline GradedElement dj_differential(const Multiset& sigma) {
    GradedElement out;
    const int n = sigma.size();
    detail::for_each_submultiset(sigma, [&](const std::map<Vertex, int>& tau_counts) {
        Multiset tau(tau_counts);
        const int t = tau.size();
        if (t == 0 || t == n) return;
        std::map<Vertex, int> rest = sigma.counts();
        for (const auto& [v, k] : tau_counts)
            if ((rest[v] -= k) == 0) rest.erase(v);
        out.add_term(Word({detail::dj_generator(tau), detail::dj_generator(Multiset(rest))}), Integer(1));
    });
    return out;
}

/// Cobar Z<K> ≅ AH((CP^∞)^K), truncated to generators χ_σ with 2|σ|-1 ≤ bound.
inline DgAlgebra cobar_dj(const SimplicialComplex& k, int degree_bound) {
    if (degree_bound < 1) throw MalformedInput("degree bound must be at least 1");
    const int max_size = (degree_bound + 1) / 2;
    std::vector<Generator> gens;
    std::map<Generator, GradedElement> diff;
    for (const auto& j : k.simplices()) {
        if (j.empty()) continue;
        const int parts = static_cast<int>(j.size());
        for (int s = parts; s <= max_size; ++s) {
            std::vector<std::vector<int>> comps;
            std::vector<int> cur;
            detail::compositions(s, parts, cur, comps);
            for (const auto& c : comps) {
                std::map<Vertex, int> counts;
                for (std::size_t i = 0; i < j.size(); ++i) counts[j[i]] = c[i];
                Multiset sigma(std::move(counts));
                Generator g = detail::dj_generator(sigma);
                gens.push_back(g);
                GradedElement d = dj_differential(sigma);
                if (!d.is_zero()) diff.emplace(g, std::move(d));
            }
        }
    }
    return DgAlgebra("Cobar Z<K>", std::move(gens), std::move(diff), degree_bound);
}

/// AH(CP^n): T(a_1, ..., a_n), |a_i| = 2i-1, ∂a_i = Σ_{0<j<i} a_j a_{i-j}.
/// `n` empty means CP^∞ and requires a degree bound.
inline DgAlgebra ah_cpn(std::optional<int> n, std::optional<int> degree_bound = std::nullopt) {
    if (n && *n < 1) throw MalformedInput("CP^n needs n >= 1");
    if (!n && !degree_bound) throw MalformedInput("AH(CP^inf) needs a degree bound");
    if (degree_bound && *degree_bound < 1) throw MalformedInput("degree bound must be at least 1");
    int top = n ? *n : (*degree_bound + 1) / 2;
    if (degree_bound) top = std::min(top, (*degree_bound + 1) / 2);
    std::vector<Generator> gens;
    std::map<Generator, GradedElement> diff;
    auto a = [](int i) { return Generator::indexed(i, 2 * i - 1); };
    for (int i = 1; i <= top; ++i) {
        gens.push_back(a(i));
        GradedElement d;
        for (int j = 1; j < i; ++j) d.add_term(Word({a(j), a(i - j)}), Integer(1));
        if (!d.is_zero()) diff.emplace(a(i), std::move(d));
    }
    std::string name = n ? "AH(CP^" + std::to_string(*n) + ")" : "AH(CP^inf)";
    return DgAlgebra(name, std::move(gens), std::move(diff), degree_bound);
}

/// Finite presentation of a 1-connected dg coalgebra. Tokens carry the
/// coalgebra degree; `coproduct` holds the reduced coproduct.
struct CoalgebraPresentation {
    struct CoproductTerm {
        Integer coefficient;
        Generator left;
        Generator right;
    };

    std::vector<Generator> basis;
    std::map<Generator, std::vector<CoproductTerm>> coproduct;
    std::map<Generator, std::vector<std::pair<Integer, Generator>>> internal_diff;
    std::optional<int> degree_bound;
};

/// H_*((S)^K): basis α_J with |α_J| = Σ n_j and reduced coproduct
/// Σ_{I⊔L=J} ε(I,L) α_I ⊗ α_L.
inline CoalgebraPresentation homology_coalgebra(const SimplicialComplex& k, const SphereDims& dims) {
    detail::validate_dims(k, dims);
    CoalgebraPresentation c;
    auto alpha = [&](const Simplex& j) { return Generator::simplex(j, detail::sphere_sum(j, dims)); };
    for (const auto& j : k.simplices()) {
        if (j.empty()) continue;
        const Generator aj = alpha(j);
        c.basis.push_back(aj);
        if (j.size() < 2) continue;
        auto& terms = c.coproduct[aj];
        Simplex ip, lp;
        const unsigned full = (1u << j.size()) - 1;
        for (unsigned mask = 1; mask < full; ++mask) {
            const int eps = detail::unshuffle_sign(j, mask, dims, ip, lp);
            terms.push_back({Integer(eps), alpha(ip), alpha(lp)});
        }
    }
    return c;
}

/// The face coalgebra Z<K>: basis c_σ (|c_σ| = 2|σ|) for multisets supported
/// on simplices of K, up to `max_degree`; reduced coproduct over all ordered
/// splittings into nonempty submultisets.
inline CoalgebraPresentation face_coalgebra(const SimplicialComplex& k, int max_degree) {
    CoalgebraPresentation c;
    c.degree_bound = max_degree;
    auto cell = [](const Multiset& m) { return Generator::multiset(m.label(), 2 * m.size()); };
    const int max_size = max_degree / 2;
    for (const auto& j : k.simplices()) {
        if (j.empty()) continue;
        const int parts = static_cast<int>(j.size());
        for (int s = parts; s <= max_size; ++s) {
            std::vector<std::vector<int>> comps;
            std::vector<int> cur;
            detail::compositions(s, parts, cur, comps);
            for (const auto& comp : comps) {
                std::map<Vertex, int> counts;
                for (std::size_t i = 0; i < j.size(); ++i) counts[j[i]] = comp[i];
                Multiset sigma(counts);
                const Generator g = cell(sigma);
                c.basis.push_back(g);
                detail::for_each_submultiset(sigma, [&](const std::map<Vertex, int>& tau_counts) {
                    Multiset tau(tau_counts);
                    if (tau.size() == 0 || tau.size() == s) return;
                    std::map<Vertex, int> rest = counts;
                    for (const auto& [v, kk] : tau_counts)
                        if ((rest[v] -= kk) == 0) rest.erase(v);
                    c.coproduct[g].push_back({Integer(1), cell(tau), cell(Multiset(rest))});
                });
            }
        }
    }
    return c;
}

/// (Δ̄ ⊗ 1)Δ̄ = (1 ⊗ Δ̄)Δ̄ on every basis element whose iterated terms are
/// all inside the table.
inline bool check_coassociative(const CoalgebraPresentation& c) {
    using Triple = std::tuple<Generator, Generator, Generator>;
    auto reduced = [&](const Generator& g) -> const std::vector<CoalgebraPresentation::CoproductTerm>& {
        static const std::vector<CoalgebraPresentation::CoproductTerm> none;
        auto it = c.coproduct.find(g);
        return it == c.coproduct.end() ? none : it->second;
    };
    for (const auto& g : c.basis) {
        std::map<Triple, Integer> lhs, rhs;
        for (const auto& t : reduced(g)) {
            for (const auto& u : reduced(t.left)) lhs[{u.left, u.right, t.right}] += t.coefficient * u.coefficient;
            for (const auto& u : reduced(t.right)) rhs[{t.left, u.left, u.right}] += t.coefficient * u.coefficient;
        }
        std::erase_if(lhs, [](const auto& e) { return e.second == 0; });
        std::erase_if(rhs, [](const auto& e) { return e.second == 0; });
        if (lhs != rhs) return false;
    }
    return true;
}

/// Cobar C = (T(s^{-1} C̄), ∂) with
/// ∂(s^{-1}c) = -s^{-1}∂_C c + Σ (-1)^{|x_i|} s^{-1}x_i ⊗ s^{-1}y_i.
inline DgAlgebra cobar_of_coalgebra(const CoalgebraPresentation& c) {
    auto desuspend = [](Generator g) {
        --g.degree;
        return g;
    };
    std::vector<Generator> gens;
    std::map<Generator, GradedElement> diff;
    for (const auto& cell : c.basis) {
        if (cell.degree <= 1)
            throw Unsupported("coalgebra element " + to_string(cell) +
                              " has degree <= 1; the cobar construction needs a 1-connected coalgebra");
        gens.push_back(desuspend(cell));
    }
    for (const auto& cell : c.basis) {
        GradedElement d;
        if (auto it = c.internal_diff.find(cell); it != c.internal_diff.end())
            for (const auto& [coef, target] : it->second) d.add_term(Word(desuspend(target)), Integer(-coef));
        if (auto it = c.coproduct.find(cell); it != c.coproduct.end())
            for (const auto& t : it->second)
                d.add_term(Word({desuspend(t.left), desuspend(t.right)}),
                           t.coefficient * sign_of_power(t.left.degree));
        if (!d.is_zero()) diff.emplace(desuspend(cell), std::move(d));
    }
    std::optional<int> bound;
    if (c.degree_bound) bound = *c.degree_bound - 1;
    return DgAlgebra("Cobar C", std::move(gens), std::move(diff), bound);
}

/// b_J ↦ χ_J: the inclusion Cobar H(S^2)^K ↪ Cobar Z<K> on square-free multisets.
inline GradedElement embed_spheres_into_dj(const GradedElement& x) {
    GradedElement out;
    for (const auto& [w, c] : x.terms()) {
        std::vector<Generator> fs;
        for (const auto& f : w.factors()) {
            if (f.kind != GeneratorKind::Simplex) throw MalformedInput("expected a b-generator, got " + to_string(f));
            fs.push_back(Generator::multiset(f.label, f.degree));
        }
        out.add_term(Word(std::move(fs)), c);
    }
    return out;
}

} // namespace polycobar
