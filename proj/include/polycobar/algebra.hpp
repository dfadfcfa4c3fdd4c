#pragma once

#include "polycobar/error.hpp"
#include "polycobar/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace polycobar {

/// How a generator token is labelled and printed.
///   Indexed:  a3          (label = {3})
///   Simplex:  b{1,2,4}    (label = strictly increasing vertex ids)
///   Multiset: x{1,1,2}    (label = nondecreasing vertex ids)
enum class GeneratorKind : unsigned char { Indexed, Simplex, Multiset };

/// Multiset of vertices carried by a word; preserved by every differential
/// built in this library. Indexed generators a_i weigh i copies of vertex 0.
using Weight = std::vector<int>;

struct Generator {
    GeneratorKind kind = GeneratorKind::Indexed;
    std::vector<int> label;
    int degree = 1;

    static Generator indexed(int i, int degree) { return {GeneratorKind::Indexed, {i}, degree}; }
    static Generator simplex(std::vector<int> s, int degree) {
        return {GeneratorKind::Simplex, std::move(s), degree};
    }
    static Generator multiset(std::vector<int> m, int degree) {
        std::sort(m.begin(), m.end());
        return {GeneratorKind::Multiset, std::move(m), degree};
    }

    Weight weight() const {
        if (kind == GeneratorKind::Indexed) return Weight(static_cast<std::size_t>(label.at(0)), 0);
        return label;
    }

    /// Same token, ignoring the stored degree.
    bool same_token(const Generator& o) const { return kind == o.kind && label == o.label; }

    friend auto operator<=>(const Generator& a, const Generator& b) {
        return std::tie(a.kind, a.label, a.degree) <=> std::tie(b.kind, b.label, b.degree);
    }
    friend bool operator==(const Generator&, const Generator&) = default;
};

inline std::string to_string(const Generator& g) {
    std::ostringstream os;
    switch (g.kind) {
    case GeneratorKind::Indexed:
        os << 'a' << g.label.at(0);
        return os.str();
    case GeneratorKind::Simplex: os << 'b'; break;
    case GeneratorKind::Multiset: os << 'x'; break;
    }
    os << '{';
    for (std::size_t i = 0; i < g.label.size(); ++i) os << (i ? "," : "") << g.label[i];
    os << '}';
    return os.str();
}

/// Monomial in the free tensor algebra. The empty word is the unit.
class Word {
public:
    Word() = default;
    explicit Word(Generator g) : degree_(g.degree) { factors_.push_back(std::move(g)); }
    explicit Word(std::vector<Generator> factors) : factors_(std::move(factors)) {
        for (const auto& g : factors_) degree_ += g.degree;
    }

    const std::vector<Generator>& factors() const noexcept { return factors_; }
    std::size_t length() const noexcept { return factors_.size(); }
    int degree() const noexcept { return degree_; }
    bool is_unit() const noexcept { return factors_.empty(); }

    Weight weight() const {
        Weight w;
        for (const auto& g : factors_) {
            auto gw = g.weight();
            w.insert(w.end(), gw.begin(), gw.end());
        }
        std::sort(w.begin(), w.end());
        return w;
    }

    friend Word operator*(const Word& a, const Word& b) {
        Word w;
        w.factors_.reserve(a.length() + b.length());
        w.factors_ = a.factors_;
        w.factors_.insert(w.factors_.end(), b.factors_.begin(), b.factors_.end());
        w.degree_ = a.degree_ + b.degree_;
        return w;
    }

    /// Order: degree, then length, then lexicographic on generators.
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
        if (auto c = a.length() <=> b.length(); c != 0) return c;
        return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(),
                                                      b.factors_.begin(), b.factors_.end());
    }
    friend bool operator==(const Word& a, const Word& b) { return a.factors_ == b.factors_; }

private:
    std::vector<Generator> factors_;
    int degree_ = 0;
};

inline std::string to_string(const Word& w) {
    if (w.is_unit()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.length(); ++i) {
        if (i) s += '*';
        s += to_string(w.factors()[i]);
    }
    return s;
}

/// Finite ℤ-linear combination of words; zero coefficients are never stored.
class GradedElement {
public:
    using Terms = std::map<Word, Integer>;

    GradedElement() = default;
    explicit GradedElement(const Generator& g) { terms_.emplace(Word(g), Integer(1)); }
    explicit GradedElement(const Word& w, Integer c = 1) { add_term(w, std::move(c)); }

    static GradedElement unit() { return GradedElement(Word{}); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Integer coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    void add_term(const Word& w, const Integer& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Common degree of all terms; nullopt when zero or of mixed degree.
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        int d = terms_.begin()->first.degree();
        for (const auto& [w, c] : terms_)
            if (w.degree() != d) return std::nullopt;
        return d;
    }

    bool is_homogeneous() const { return terms_.empty() || degree().has_value(); }

    GradedElement& operator+=(const GradedElement& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    GradedElement& operator-=(const GradedElement& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, Integer(-c));
        return *this;
    }
    GradedElement& operator*=(const Integer& k) {
        if (k == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_) c *= k;
        return *this;
    }

    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    friend GradedElement operator-(GradedElement a) { return a *= Integer(-1); }
    friend GradedElement operator*(const Integer& k, GradedElement a) { return a *= k; }
    friend GradedElement operator*(int k, GradedElement a) { return a *= Integer(k); }

    friend GradedElement operator*(const GradedElement& a, const GradedElement& b) {
        GradedElement out;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) out.add_term(wa * wb, ca * cb);
        return out;
    }

    friend bool operator==(const GradedElement&, const GradedElement&) = default;

private:
    Terms terms_;
};

/// Canonical rendering, e.g. "-b{1}*b{2} + b{2}*b{1}".
inline std::string to_string(const GradedElement& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : x.terms()) {
        Integer mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (mag != 1) {
            os << mag;
            if (!w.is_unit()) os << '*';
            else continue;
        }
        os << to_string(w);
    }
    return os.str();
}

inline GradedElement add(const GradedElement& a, const GradedElement& b) { return a + b; }
inline GradedElement multiply(const GradedElement& a, const GradedElement& b) { return a * b; }

/// Graded commutator [a, b] = ab - (-1)^{|a||b|} ba.
inline GradedElement bracket(const GradedElement& a, const GradedElement& b) {
    if (a.is_zero() || b.is_zero()) return {};
    auto da = a.degree();
    auto db = b.degree();
    if (!da || !db) throw MalformedInput("graded commutator needs homogeneous arguments");
    GradedElement ba = b * a;
    ba *= Integer(-sign_of_power(static_cast<long>(*da) * *db));
    return a * b + ba;
}

/// Renames the vertices in every b/x token through `map` (labels are
/// re-sorted). Indexed generators are left alone.
inline GradedElement relabel_vertices(const GradedElement& x, const std::map<int, int>& map) {
    GradedElement out;
    for (const auto& [w, c] : x.terms()) {
        std::vector<Generator> fs;
        for (Generator f : w.factors()) {
            if (f.kind != GeneratorKind::Indexed) {
                for (int& v : f.label) v = map.at(v);
                std::sort(f.label.begin(), f.label.end());
            }
            fs.push_back(std::move(f));
        }
        out.add_term(Word(std::move(fs)), c);
    }
    return out;
}

/// Koszul sign of rearranging graded symbols. `perm[k]` is the index of the
/// symbol placed at position k; each pair i < j with j placed before i
/// contributes (-1)^{d_i d_j}.
inline int koszul_sign(std::span<const int> degrees, std::span<const int> perm) {
    const std::size_t n = degrees.size();
    if (perm.size() != n) throw MalformedInput("permutation length does not match degree list");
    std::vector<char> seen(n, 0);
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)])
            throw MalformedInput("not a permutation");
        seen[static_cast<std::size_t>(p)] = 1;
    }
    long parity = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (perm[a] > perm[b])
                parity += static_cast<long>(degrees[static_cast<std::size_t>(perm[a])] % 2) *
                          (degrees[static_cast<std::size_t>(perm[b])] % 2);
    return sign_of_power(parity);
}

/// All (p,q)-shuffles of {0, ..., p+q-1}, written as arrangements θ with
/// θ[0] < ... < θ[p-1] and θ[p] < ... < θ[p+q-1]. With `anchor_first`, only
/// those with θ[0] = 0.
inline std::vector<std::vector<int>> shuffles(int p, int q, bool anchor_first) {
    if (p < 1 || q < 1) throw MalformedInput("shuffles need p >= 1 and q >= 1");
    const int n = p + q;
    std::vector<std::vector<int>> out;
    std::vector<int> first(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) first[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (!anchor_first || first[0] == 0) {
            std::vector<int> theta = first;
            std::vector<char> used(static_cast<std::size_t>(n), 0);
            for (int i : first) used[static_cast<std::size_t>(i)] = 1;
            for (int i = 0; i < n; ++i)
                if (!used[static_cast<std::size_t>(i)]) theta.push_back(i);
            out.push_back(std::move(theta));
        }
        // next p-subset in lexicographic order
        int k = p - 1;
        while (k >= 0 && first[static_cast<std::size_t>(k)] == n - p + k) --k;
        if (k < 0) break;
        ++first[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < p; ++j)
            first[static_cast<std::size_t>(j)] = first[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

} // namespace polycobar
