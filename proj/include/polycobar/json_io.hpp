#pragma once

#include "polycobar/algebra.hpp"
#include "polycobar/cobar.hpp"
#include "polycobar/complexes.hpp"
#include "polycobar/error.hpp"
#include "polycobar/homology.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace polycobar {

using json = nlohmann::json;

// ---- complexes ---------------------------------------------------------

/// {"vertices":[1,2,...],"facets":[[1,2,4],...]}; "vertices" may be omitted.
inline SimplicialComplex complex_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("facets")) throw MalformedInput("complex JSON needs a \"facets\" array");
        auto facets = j.at("facets").get<std::vector<std::vector<Vertex>>>();
        if (j.contains("vertices")) return SimplicialComplex::from_facets(j.at("vertices").get<std::vector<Vertex>>(), facets);
        return SimplicialComplex::from_facets(facets);
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("complex JSON: ") + e.what());
    }
}

inline json complex_to_json(const SimplicialComplex& k) {
    json facets = json::array();
    for (const auto& f : k.facets()) facets.push_back(f);
    return {{"vertices", k.vertices()}, {"facets", facets}};
}

// ---- coefficients and tokens -------------------------------------------

inline json integer_to_json(const Integer& c) {
    if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
        return static_cast<long long>(c);
    return c.str();
}

inline Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw MalformedInput("coefficient must be an integer");
}

/// Parses "a3", "b{1,2}", "x{1,1,2}" into a token with the given degree.
inline Generator parse_token(const std::string& text, int degree) {
    auto fail = [&] { return MalformedInput("bad generator token '" + text + "'"); };
    if (text.size() < 2) throw fail();
    Generator g;
    g.degree = degree;
    if (text[0] == 'a') {
        g.kind = GeneratorKind::Indexed;
        for (std::size_t i = 1; i < text.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw fail();
        g.label = {std::stoi(text.substr(1))};
        return g;
    }
    if (text[0] == 'b') g.kind = GeneratorKind::Simplex;
    else if (text[0] == 'x') g.kind = GeneratorKind::Multiset;
    else throw fail();
    if (text[1] != '{' || text.back() != '}') throw fail();
    std::stringstream body(text.substr(2, text.size() - 3));
    for (std::string num; std::getline(body, num, ',');) {
        if (num.empty() || num.size() > 9) throw fail();
        for (char ch : num)
            if (!std::isdigit(static_cast<unsigned char>(ch))) throw fail();
        g.label.push_back(std::stoi(num));
    }
    if (g.label.empty() || text[text.size() - 2] == ',') throw fail();
    return g;
}

// ---- elements ------------------------------------------------------------

inline json element_to_json(const GradedElement& x) {
    json terms = json::array();
    std::set<Generator> used;
    for (const auto& [w, c] : x.terms()) {
        json word = json::array();
        for (const auto& f : w.factors()) {
            word.push_back(to_string(f));
            used.insert(f);
        }
        terms.push_back({{"coefficient", integer_to_json(c)}, {"word", word}});
    }
    json gens = json::array();
    for (const auto& g : used) gens.push_back({{"token", to_string(g)}, {"degree", g.degree}});
    auto d = x.degree();
    return {{"degree", d ? json(*d) : json(nullptr)},
            {"text", to_string(x)},
            {"generators", gens},
            {"terms", terms}};
}

inline GradedElement element_from_json(const json& j) {
    try {
        std::map<std::string, Generator> table;
        for (const auto& g : j.at("generators")) {
            auto token = g.at("token").get<std::string>();
            table.emplace(token, parse_token(token, g.at("degree").get<int>()));
        }
        GradedElement x;
        for (const auto& t : j.at("terms")) {
            std::vector<Generator> fs;
            for (const auto& tok : t.at("word")) {
                auto it = table.find(tok.get<std::string>());
                if (it == table.end()) throw MalformedInput("term uses undeclared generator " + tok.get<std::string>());
                fs.push_back(it->second);
            }
            x.add_term(Word(std::move(fs)), integer_from_json(t.at("coefficient")));
        }
        return x;
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("element JSON: ") + e.what());
    }
}

// ---- algebras ------------------------------------------------------------

inline json algebra_to_json(const DgAlgebra& a) {
    json gens = json::array();
    for (const auto& g : a.generators())
        gens.push_back({{"token", to_string(g)},
                        {"kind", g.kind == GeneratorKind::Indexed ? "a" : g.kind == GeneratorKind::Simplex ? "b" : "x"},
                        {"label", g.label},
                        {"degree", g.degree}});
    json diff = json::array();
    for (const auto& g : a.generators()) {
        json terms = json::array();
        for (const auto& [w, c] : a.diff(g).terms()) {
            json word = json::array();
            for (const auto& f : w.factors()) word.push_back(to_string(f));
            terms.push_back({{"coefficient", integer_to_json(c)}, {"word", word}});
        }
        diff.push_back({{"generator", to_string(g)}, {"text", to_string(a.diff(g))}, {"terms", terms}});
    }
    return {{"name", a.name()},
            {"degree_bound", a.degree_bound() ? json(*a.degree_bound()) : json(nullptr)},
            {"generators", gens},
            {"differential", diff}};
}

inline DgAlgebra algebra_from_json(const json& j) {
    try {
        std::map<std::string, Generator> table;
        std::vector<Generator> gens;
        for (const auto& g : j.at("generators")) {
            auto token = g.at("token").get<std::string>();
            Generator gen = parse_token(token, g.at("degree").get<int>());
            table.emplace(token, gen);
            gens.push_back(gen);
        }
        std::map<Generator, GradedElement> diff;
        for (const auto& entry : j.at("differential")) {
            const auto& g = table.at(entry.at("generator").get<std::string>());
            GradedElement d;
            for (const auto& t : entry.at("terms")) {
                std::vector<Generator> fs;
                for (const auto& tok : t.at("word")) fs.push_back(table.at(tok.get<std::string>()));
                d.add_term(Word(std::move(fs)), integer_from_json(t.at("coefficient")));
            }
            if (!d.is_zero()) diff.emplace(g, std::move(d));
        }
        std::optional<int> bound;
        if (!j.at("degree_bound").is_null()) bound = j.at("degree_bound").get<int>();
        return DgAlgebra(j.at("name").get<std::string>(), std::move(gens), std::move(diff), bound);
    } catch (const std::out_of_range&) {
        throw MalformedInput("algebra JSON references an unknown generator");
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("algebra JSON: ") + e.what());
    }
}

// ---- homology ------------------------------------------------------------

inline json homology_to_json(const HomologySummary& h) {
    json rows = json::array();
    for (const auto& d : h.degrees) {
        json torsion = json::array();
        for (const auto& t : d.torsion) torsion.push_back(integer_to_json(t));
        rows.push_back({{"degree", d.degree}, {"rank", d.free_rank}, {"torsion", torsion}, {"chains", d.chain_rank}});
    }
    return {{"up_to", h.up_to}, {"degrees", rows}};
}

inline HomologySummary homology_from_json(const json& j) {
    try {
        HomologySummary h;
        h.up_to = j.at("up_to").get<int>();
        for (const auto& row : j.at("degrees")) {
            DegreeHomology d;
            d.degree = row.at("degree").get<int>();
            d.free_rank = row.at("rank").get<std::size_t>();
            d.chain_rank = row.at("chains").get<std::size_t>();
            for (const auto& t : row.at("torsion")) d.torsion.push_back(integer_from_json(t));
            h.degrees.push_back(std::move(d));
        }
        return h;
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("homology JSON: ") + e.what());
    }
}

} // namespace polycobar
