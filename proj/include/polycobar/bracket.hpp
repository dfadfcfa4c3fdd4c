#pragma once

#include "polycobar/complexes.hpp"
#include "polycobar/error.hpp"

#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polycobar {

/// Bracket sequence of degree-two classes μ_i. A leaf is μ_i; a node is a
/// bracket [w_1, ..., w_q] with q ≥ 2 and pairwise distinct leaf indices.
struct BracketExpr {
    Vertex leaf = 0;
    std::vector<BracketExpr> children;

    static BracketExpr make_leaf(Vertex v) { return BracketExpr{v, {}}; }
    static BracketExpr make_node(std::vector<BracketExpr> children) {
        return BracketExpr{0, std::move(children)};
    }

    bool is_leaf() const noexcept { return children.empty(); }

    /// Nesting depth: leaves have depth 0, [m1,m2] has depth 1.
    int depth() const {
        int d = 0;
        for (const auto& c : children) d = std::max(d, c.depth());
        return is_leaf() ? 0 : d + 1;
    }

    /// Leaf ids in left-to-right order.
    std::vector<Vertex> leaves() const {
        std::vector<Vertex> out;
        collect(out);
        return out;
    }

    friend bool operator==(const BracketExpr&, const BracketExpr&) = default;

private:
    void collect(std::vector<Vertex>& out) const {
        if (is_leaf()) {
            out.push_back(leaf);
            return;
        }
        for (const auto& c : children) c.collect(out);
    }
};

inline std::string to_string(const BracketExpr& w) {
    if (w.is_leaf()) return "m" + std::to_string(w.leaf);
    std::string s = "[";
    for (std::size_t i = 0; i < w.children.size(); ++i) {
        if (i) s += ',';
        s += to_string(w.children[i]);
    }
    return s + "]";
}

namespace detail {

class BracketParser {
public:
    explicit BracketParser(std::string_view text) : text_(text) {}

    BracketExpr parse() {
        skip_ws();
        BracketExpr w = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return w;
    }

private:
    BracketExpr expr() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == 'm') {
            ++pos_;
            return BracketExpr::make_leaf(integer());
        }
        if (c != '[') throw ParseError(std::string("expected 'm' or '[' but found '") + c + "'", pos_);
        ++pos_;
        std::vector<BracketExpr> children;
        children.push_back(expr());
        skip_ws();
        while (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            children.push_back(expr());
            skip_ws();
        }
        if (pos_ >= text_.size()) throw ParseError("unterminated bracket", pos_);
        if (text_[pos_] != ']') throw ParseError("expected ',' or ']'", pos_);
        if (children.size() < 2) throw ParseError("a bracket needs at least two entries", pos_);
        ++pos_;
        return BracketExpr::make_node(std::move(children));
    }

    Vertex integer() {
        std::size_t start = pos_;
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1'000'000'000) throw ParseError("index too large", start);
            ++pos_;
        }
        if (pos_ == start) throw ParseError("expected an index after 'm'", pos_);
        if (value == 0) throw ParseError("indices must be positive", start);
        return static_cast<Vertex>(value);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses  w ::= 'm'INT | '[' w (',' w)+ ']'  (whitespace allowed between tokens).
inline BracketExpr parse_bracket(std::string_view text) {
    BracketExpr w = detail::BracketParser(text).parse();
    std::set<Vertex> seen;
    for (Vertex v : w.leaves())
        if (!seen.insert(v).second)
            throw MalformedInput("bracket repeats index m" + std::to_string(v));
    return w;
}

/// The pair (∂Δ_w, Δ_w) attached to a bracket sequence.
struct BracketComplexes {
    SimplicialComplex boundary;
    SimplicialComplex full;
};

inline BracketComplexes complexes_of_bracket(const BracketExpr& w) {
    if (w.is_leaf()) throw Unsupported("a single class m" + std::to_string(w.leaf) + " has no bracket complex");
    std::vector<SimplicialComplex> parts;
    std::vector<Vertex> slots;
    for (std::size_t i = 0; i < w.children.size(); ++i) {
        const auto& c = w.children[i];
        parts.push_back(c.is_leaf() ? point(c.leaf) : complexes_of_bracket(c).boundary);
        slots.push_back(static_cast<Vertex>(i + 1));
    }
    return {substitution(boundary_simplex(slots), parts), substitution(full_simplex(slots), parts)};
}

} // namespace polycobar
