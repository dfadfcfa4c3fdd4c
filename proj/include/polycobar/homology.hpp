#pragma once

#include "polycobar/algebra.hpp"
#include "polycobar/cobar.hpp"
#include "polycobar/error.hpp"
#include "polycobar/parallel.hpp"
#include "polycobar/smith.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polycobar {

/// All words of one total degree, in word order.
struct DegreeBasis {
    int degree = 0;
    std::vector<Word> words;

    std::size_t size() const noexcept { return words.size(); }
};

struct DegreeHomology {
    int degree = 0;
    std::size_t free_rank = 0;
    std::vector<Integer> torsion; // invariant factors > 1
    std::size_t chain_rank = 0;   // number of words in this degree

    friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

struct HomologySummary {
    int up_to = 0;
    std::vector<DegreeHomology> degrees;

    bool has_torsion() const {
        for (const auto& d : degrees)
            if (!d.torsion.empty()) return true;
        return false;
    }

    friend bool operator==(const HomologySummary&, const HomologySummary&) = default;
};

namespace detail {

inline void require_complete(const DgAlgebra& a, int degree, const char* what) {
    if (a.degree_bound() && *a.degree_bound() < degree)
        throw Unsupported(std::string(what) + " needs the algebra complete up to degree " + std::to_string(degree) +
                          " but it is truncated at " + std::to_string(*a.degree_bound()));
}

/// Depth-first enumeration of generator sequences of exact degree `remaining`.
/// With `budget`, only sequences whose weight is exactly that multiset.
class WordEnumerator {
public:
    WordEnumerator(const DgAlgebra& a, const Weight* weight) : gens_(a.generators()) {
        if (weight) {
            restrict_ = true;
            for (int v : *weight) ++budget_[v];
            for (const auto& g : gens_) {
                std::map<int, int> gw;
                for (int v : g.weight()) ++gw[v];
                gen_weights_.push_back(std::move(gw));
            }
        }
    }

    std::vector<Word> run(int degree) {
        out_.clear();
        current_.clear();
        recurse(degree);
        std::sort(out_.begin(), out_.end());
        return std::move(out_);
    }

private:
    bool fits(std::size_t i) const {
        for (const auto& [v, k] : gen_weights_[i]) {
            auto it = budget_.find(v);
            if (it == budget_.end() || it->second < k) return false;
        }
        return true;
    }
    void take(std::size_t i, int sign) {
        for (const auto& [v, k] : gen_weights_[i]) budget_[v] -= sign * k;
    }
    bool budget_empty() const {
        for (const auto& [v, k] : budget_)
            if (k != 0) return false;
        return true;
    }

    void recurse(int remaining) {
        if (remaining == 0) {
            if (!restrict_ || budget_empty()) out_.emplace_back(current_);
            return;
        }
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            const Generator& g = gens_[i];
            if (g.degree > remaining) continue;
            if (restrict_) {
                if (!fits(i)) continue;
                take(i, 1);
            }
            current_.push_back(g);
            recurse(remaining - g.degree);
            current_.pop_back();
            if (restrict_) take(i, -1);
        }
    }

    const std::vector<Generator>& gens_;
    bool restrict_ = false;
    std::map<int, int> budget_;
    std::vector<std::map<int, int>> gen_weights_;
    std::vector<Generator> current_;
    std::vector<Word> out_;
};

inline std::vector<Word> words_of_weight(const DgAlgebra& a, int degree, const Weight& weight) {
    if (degree < 0) return {};
    return WordEnumerator(a, &weight).run(degree);
}

inline IntMatrix matrix_between(const DgAlgebra& a, const std::vector<Word>& domain,
                                const std::vector<Word>& codomain) {
    std::map<Word, std::size_t> row_of;
    for (std::size_t i = 0; i < codomain.size(); ++i) row_of.emplace(codomain[i], i);
    IntMatrix m;
    m.rows = codomain.size();
    m.cols = domain.size();
    for (std::size_t j = 0; j < domain.size(); ++j) {
        GradedElement img = apply_diff(a, GradedElement(domain[j]));
        for (const auto& [w, c] : img.terms()) {
            auto it = row_of.find(w);
            if (it == row_of.end())
                throw InternalError("boundary of " + to_string(domain[j]) + " leaves the target basis");
            m.entries.push_back({it->second, j, c});
        }
    }
    return m;
}

inline Weight weight_key(const DgAlgebra& a, const Word& w) { return a.weight_graded() ? w.weight() : Weight{}; }

inline std::vector<Integer> normalize_torsion(const std::vector<Integer>& factors) {
    if (factors.empty()) return {};
    DenseMatrix d = smith_diagonal(factors.size(), factors.size(), factors);
    std::vector<Integer> out;
    for (auto& f : dense_smith(d, nullptr, nullptr))
        if (f > 1) out.push_back(f);
    return out;
}

} // namespace detail

inline DegreeBasis basis_in_degree(const DgAlgebra& a, int d) {
    if (d < 0) throw MalformedInput("degree must be nonnegative");
    detail::require_complete(a, d, "basis_in_degree");
    return {d, detail::WordEnumerator(a, nullptr).run(d)};
}

/// Column j holds the coordinates of ∂(word_j of degree d) in the degree d-1 basis.
inline IntMatrix boundary_matrix(const DgAlgebra& a, int d) {
    if (d <= 0) {
        IntMatrix m;
        m.cols = d == 0 ? 1 : 0;
        return m;
    }
    auto domain = basis_in_degree(a, d);
    auto codomain = basis_in_degree(a, d - 1);
    return detail::matrix_between(a, domain.words, codomain.words);
}

/// Free ranks and torsion of H_d(A) for d ≤ up_to. When the differential
/// preserves vertex weights the complex is split into weight components.
inline HomologySummary homology(const DgAlgebra& a, int up_to, unsigned jobs = 1) {
    if (up_to < 0) throw MalformedInput("up_to must be nonnegative");
    detail::require_complete(a, up_to + 1, "homology");

    // chains[d][weight] = words of degree d with that weight
    std::vector<std::map<Weight, std::vector<Word>>> chains(static_cast<std::size_t>(up_to) + 2);
    for (int d = 0; d <= up_to + 1; ++d)
        for (auto& w : basis_in_degree(a, d).words)
            chains[static_cast<std::size_t>(d)][detail::weight_key(a, w)].push_back(std::move(w));

    struct Job {
        int degree;
        Weight weight;
    };
    std::vector<Job> work;
    for (int d = 1; d <= up_to + 1; ++d)
        for (const auto& [w, words] : chains[static_cast<std::size_t>(d)])
            if (chains[static_cast<std::size_t>(d - 1)].count(w)) work.push_back({d, w});
    std::vector<SmithResult> snf(work.size());
    detail::parallel_for(work.size(), jobs, [&](std::size_t i) {
        const auto& job = work[i];
        const auto& domain = chains[static_cast<std::size_t>(job.degree)].at(job.weight);
        const auto& codomain = chains[static_cast<std::size_t>(job.degree - 1)].at(job.weight);
        snf[i] = smith_normal_form(detail::matrix_between(a, domain, codomain));
    });

    // rank of ∂_d and torsion it creates in degree d-1
    std::vector<std::size_t> rank_out(static_cast<std::size_t>(up_to) + 2, 0);
    std::vector<std::vector<Integer>> torsion(static_cast<std::size_t>(up_to) + 2);
    for (std::size_t i = 0; i < work.size(); ++i) {
        const auto d = static_cast<std::size_t>(work[i].degree);
        rank_out[d] += snf[i].rank();
        for (const auto& f : snf[i].invariant_factors)
            if (f > 1) torsion[d - 1].push_back(f);
    }

    HomologySummary summary;
    summary.up_to = up_to;
    for (int d = 0; d <= up_to; ++d) {
        const auto ud = static_cast<std::size_t>(d);
        std::size_t dim = 0;
        for (const auto& [w, words] : chains[ud]) dim += words.size();
        DegreeHomology h;
        h.degree = d;
        h.chain_rank = dim;
        const std::size_t kernel = dim - rank_out[ud];
        if (kernel < rank_out[ud + 1]) throw InternalError("boundary rank exceeds cycle rank; is d^2 = 0?");
        h.free_rank = kernel - rank_out[ud + 1];
        h.torsion = detail::normalize_torsion(torsion[ud]);
        summary.degrees.push_back(std::move(h));
    }
    return summary;
}

/// Result of solving ∂x = z over ℤ.
struct BoundaryWitness {
    bool is_boundary = false;
    std::optional<GradedElement> witness;
};

/// Decides whether the cycle `z` is a boundary and, when it is, returns an
/// integral preimage x with ∂x = z.
inline BoundaryWitness class_is_zero(const DgAlgebra& a, const GradedElement& z) {
    if (z.is_zero()) return {true, GradedElement{}};
    auto d = z.degree();
    if (!d) throw MalformedInput("class_is_zero needs a homogeneous element");
    detail::require_complete(a, *d + 1, "class_is_zero");
    if (!apply_diff(a, z).is_zero()) throw NotDefined("element is not a cycle: " + to_string(z));

    std::map<Weight, GradedElement> parts;
    for (const auto& [w, c] : z.terms()) parts[detail::weight_key(a, w)].add_term(w, c);

    GradedElement witness;
    for (const auto& [weight, part] : parts) {
        std::vector<Word> rows, cols;
        if (a.weight_graded()) {
            rows = detail::words_of_weight(a, *d, weight);
            cols = detail::words_of_weight(a, *d + 1, weight);
        } else {
            rows = basis_in_degree(a, *d).words;
            cols = basis_in_degree(a, *d + 1).words;
        }
        std::map<Word, std::size_t> row_of;
        for (std::size_t i = 0; i < rows.size(); ++i) row_of.emplace(rows[i], i);
        std::vector<Integer> target(rows.size());
        for (const auto& [w, c] : part.terms()) target.at(row_of.at(w)) = c;

        auto snf = smith_normal_form(detail::matrix_between(a, cols, rows), true);
        const auto& u = *snf.left;
        const auto& v = *snf.right;
        std::vector<Integer> ub(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t k = 0; k < rows.size(); ++k)
                if (u[i][k] != 0 && target[k] != 0) ub[i] += u[i][k] * target[k];
        std::vector<Integer> y(cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i < snf.rank()) {
                if (ub[i] % snf.invariant_factors[i] != 0) return {false, std::nullopt};
                y[i] = ub[i] / snf.invariant_factors[i];
            } else if (ub[i] != 0) {
                return {false, std::nullopt};
            }
        }
        for (std::size_t j = 0; j < cols.size(); ++j) {
            Integer xj = 0;
            for (std::size_t k = 0; k < cols.size(); ++k)
                if (v[j][k] != 0 && y[k] != 0) xj += v[j][k] * y[k];
            witness.add_term(cols[j], xj);
        }
    }
    if (apply_diff(a, witness) != z) throw InternalError("boundary witness does not reproduce the cycle");
    return {true, witness};
}

} // namespace polycobar
