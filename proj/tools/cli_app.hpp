#pragma once

#include "polycobar/polycobar.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polycobar::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kPrecondition = 2, kInternal = 3 };

struct RunConfig {
    std::string command;
    std::string mode;
    std::string complex_path;
    std::string bracket;
    std::string dims;
    std::string cpn;
    std::vector<std::string> parts;
    int max_degree = 12;
    bool max_degree_given = false;
    std::optional<int> up_to;
    std::string format = "table";
    bool check = false;
    bool example = false;
    unsigned jobs = 1;
    bool verbose = false;
};

namespace detail {

inline json read_json_source(const std::string& source) {
    std::string text;
    if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
        text = source;
    } else {
        std::ifstream in(source);
        if (!in) throw MalformedInput("cannot open '" + source + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedInput("invalid JSON in '" + source + "': " + e.what());
    }
}

inline SimplicialComplex load_complex(const std::string& source) { return complex_from_json(read_json_source(source)); }

/// "1=5,2=2" (explicit) or "2,2" (by increasing vertex of `k`).
inline SphereDims parse_dims(const std::string& text, const SimplicialComplex* k) {
    SphereDims dims;
    if (text.empty()) {
        if (!k) throw MalformedInput("--dims or --complex is required");
        return uniform_dims(*k);
    }
    std::vector<std::string> items;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) items.push_back(item);
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw MalformedInput("bad --dims entry '" + s + "'");
        }
    };
    const bool keyed = text.find('=') != std::string::npos;
    if (keyed) {
        for (const auto& item : items) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw MalformedInput("mixed --dims syntax in '" + text + "'");
            dims[to_int(item.substr(0, eq))] = to_int(item.substr(eq + 1));
        }
        if (k) {
            for (Vertex v : k->vertices())
                if (!dims.count(v)) dims[v] = 2;
        }
        return dims;
    }
    if (!k) throw MalformedInput("positional --dims needs --complex");
    if (items.size() != k->vertices().size())
        throw MalformedInput("--dims lists " + std::to_string(items.size()) + " dimensions for " +
                             std::to_string(k->vertices().size()) + " vertices");
    for (std::size_t i = 0; i < items.size(); ++i) dims[k->vertices()[i]] = to_int(items[i]);
    return dims;
}

inline std::string facets_text(const SimplicialComplex& k) {
    std::string s;
    for (const auto& f : k.facets()) s += (s.empty() ? "" : " ") + to_string(f);
    return s.empty() ? "{}" : s;
}

inline std::string integers_text(const std::vector<Integer>& xs) {
    if (xs.empty()) return "-";
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ",") + x.str();
    return s;
}

inline std::optional<int> parse_cpn(const std::string& text) {
    if (text == "inf" || text == "infinity") return std::nullopt;
    try {
        std::size_t used = 0;
        int n = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return n;
    } catch (const std::exception&) {
        throw MalformedInput("cpn needs an integer n or 'inf', got '" + text + "'");
    }
}

} // namespace detail

class App {
public:
    App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const RunConfig& cfg) {
        try {
            if (cfg.command == "complex") return cmd_complex(cfg);
            if (cfg.command == "cobar") return cmd_cobar(cfg);
            if (cfg.command == "homology") return cmd_homology(cfg);
            if (cfg.command == "whitehead") return cmd_whitehead(cfg);
            err_ << "error: unknown command\n";
            return kUsage;
        } catch (const MalformedInput& e) {
            err_ << "error: " << e.what() << '\n';
            return kUsage;
        } catch (const Unsupported& e) {
            err_ << "error: " << e.what() << '\n';
            return kPrecondition;
        } catch (const NotDefined& e) {
            err_ << "not defined: " << e.what() << '\n';
            return kPrecondition;
        } catch (const InternalError& e) {
            err_ << "internal error: " << e.what() << '\n';
            return kInternal;
        } catch (const std::exception& e) {
            err_ << "internal error: " << e.what() << '\n';
            return kInternal;
        }
    }

private:
    bool as_json(const RunConfig& cfg) const { return cfg.format == "json"; }

    void emit(const json& j) { out_ << j.dump(2) << '\n'; }

    // ---- complex -------------------------------------------------------

    int cmd_complex(const RunConfig& cfg) {
        if (cfg.mode == "show") {
            const auto k = detail::load_complex(cfg.complex_path);
            if (as_json(cfg)) {
                json j = complex_to_json(k);
                json all = json::array();
                for (const auto& s : k.simplices()) all.push_back(s);
                j["simplices"] = all;
                emit(j);
            } else {
                out_ << "vertices: " << to_string(Simplex(k.vertices())) << '\n';
                out_ << "simplices: " << k.size() << '\n';
                out_ << "facets: " << detail::facets_text(k) << '\n';
            }
            return kOk;
        }
        if (cfg.mode == "bracket") {
            const BracketExpr w = parse_bracket(cfg.bracket);
            const auto [boundary, full] = complexes_of_bracket(w);
            std::optional<SimplicialComplex> k;
            if (!cfg.complex_path.empty()) k = detail::load_complex(cfg.complex_path);
            if (as_json(cfg)) {
                json j{{"bracket", to_string(w)}, {"boundary", complex_to_json(boundary)}, {"full", complex_to_json(full)}};
                if (k) {
                    j["complex"] = complex_to_json(*k);
                    j["boundary_in_complex"] = contains_subcomplex(*k, boundary);
                    j["full_in_complex"] = contains_subcomplex(*k, full);
                }
                emit(j);
            } else {
                out_ << "bracket: " << to_string(w) << '\n';
                out_ << "boundary complex facets: " << detail::facets_text(boundary) << '\n';
                out_ << "full complex facets: " << detail::facets_text(full) << '\n';
                if (k) {
                    out_ << "boundary complex in K: " << (contains_subcomplex(*k, boundary) ? "yes" : "no") << '\n';
                    out_ << "full complex in K: " << (contains_subcomplex(*k, full) ? "yes" : "no") << '\n';
                }
            }
            return kOk;
        }
        if (cfg.mode == "substitute") {
            const auto k = detail::load_complex(cfg.complex_path);
            std::vector<SimplicialComplex> parts;
            for (const auto& p : cfg.parts) parts.push_back(detail::load_complex(p));
            const auto result = substitution(k, parts);
            if (as_json(cfg)) emit(complex_to_json(result));
            else {
                out_ << "vertices: " << to_string(Simplex(result.vertices())) << '\n';
                out_ << "facets: " << detail::facets_text(result) << '\n';
            }
            return kOk;
        }
        throw MalformedInput("complex needs one of: show, bracket, substitute");
    }

    // ---- cobar ---------------------------------------------------------

    DgAlgebra build_algebra(const RunConfig& cfg, std::optional<int> bound) {
        if (cfg.mode == "spheres") {
            std::optional<SimplicialComplex> k;
            if (!cfg.complex_path.empty()) k = detail::load_complex(cfg.complex_path);
            SphereDims dims = detail::parse_dims(cfg.dims, k ? &*k : nullptr);
            if (!k) {
                std::vector<Vertex> vs;
                for (const auto& [v, n] : dims) vs.push_back(v);
                k = full_simplex(vs);
            }
            return cobar_spheres(*k, dims);
        }
        if (cfg.mode == "dj") {
            if (cfg.complex_path.empty()) throw MalformedInput("dj needs --complex");
            if (!bound) throw MalformedInput("dj needs --max-degree");
            return cobar_dj(detail::load_complex(cfg.complex_path), *bound);
        }
        if (cfg.mode == "cpn") {
            if (cfg.cpn.empty()) throw MalformedInput("cpn needs n (an integer or 'inf')");
            auto n = detail::parse_cpn(cfg.cpn);
            if (!n && !bound) throw MalformedInput("cpn inf needs --max-degree");
            return ah_cpn(n, bound);
        }
        throw MalformedInput("mode must be one of: spheres, dj, cpn");
    }

    int cmd_cobar(const RunConfig& cfg) {
        std::optional<int> bound;
        if (cfg.max_degree_given) bound = cfg.max_degree;
        const DgAlgebra a = build_algebra(cfg, bound);
        std::optional<DSquaredReport> report;
        if (cfg.check) report = check_d_squared(a, cfg.jobs);

        if (as_json(cfg)) {
            json j = algebra_to_json(a);
            if (report) {
                json failures = json::array();
                for (const auto& [g, x] : report->failures) failures.push_back({{"generator", to_string(g)}, {"d2", to_string(x)}});
                j["check"] = {{"passed", report->passed()}, {"generators_checked", report->generators_checked}, {"failures", failures}};
            }
            emit(j);
        } else {
            out_ << "algebra: " << a.name() << '\n';
            if (a.degree_bound()) out_ << "degree bound: " << *a.degree_bound() << '\n';
            out_ << "generators: " << a.generators().size() << '\n';
            for (const auto& g : a.generators())
                out_ << "  |" << to_string(g) << "| = " << g.degree << "   d " << to_string(g) << " = " << to_string(a.diff(g)) << '\n';
            if (report) {
                out_ << "d^2 = 0 check: " << (report->passed() ? "PASS" : "FAIL") << " (" << report->generators_checked
                     << " generators)\n";
                for (const auto& [g, x] : report->failures) out_ << "  d^2 " << to_string(g) << " = " << to_string(x) << '\n';
            }
        }
        return report && !report->passed() ? kInternal : kOk;
    }

    // ---- homology ------------------------------------------------------

    int cmd_homology(const RunConfig& cfg) {
        const int up_to = cfg.up_to.value_or(cfg.max_degree - 1);
        if (up_to < 0) throw MalformedInput("--up-to must be nonnegative");
        if (up_to + 1 > cfg.max_degree)
            throw Unsupported("--up-to " + std::to_string(up_to) + " needs a degree bound of at least " +
                              std::to_string(up_to + 1) + " but --max-degree is " + std::to_string(cfg.max_degree));
        const auto start = std::chrono::steady_clock::now();
        const DgAlgebra a = build_algebra(cfg, up_to + 1);
        const HomologySummary h = homology(a, up_to, cfg.jobs);
        if (cfg.verbose)
            err_ << "homology computed in "
                 << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
        if (as_json(cfg)) {
            json j = homology_to_json(h);
            j["algebra"] = a.name();
            emit(j);
        } else {
            out_ << "algebra: " << a.name() << '\n';
            out_ << "degree | rank | torsion\n";
            for (const auto& d : h.degrees)
                out_ << std::setw(6) << d.degree << " | " << std::setw(4) << d.free_rank << " | "
                     << detail::integers_text(d.torsion) << '\n';
            if (h.has_torsion()) out_ << "WARNING: torsion present in integral homology\n";
        }
        return kOk;
    }

    // ---- whitehead -----------------------------------------------------

    void report_chain(const RunConfig& cfg, const WhiteheadChain& w, const json& extra) {
        const HurewiczReport r = hurewicz_class_report(w);
        if (as_json(cfg)) {
            json j = extra;
            j["bracket"] = to_string(w.bracket);
            j["degree"] = w.degree;
            j["chain"] = element_to_json(w.chain);
            j["cycle"] = r.cycle;
            j["zero_class"] = r.zero_class;
            j["witness"] = r.witness ? element_to_json(*r.witness) : json(nullptr);
            emit(j);
            return;
        }
        out_ << "bracket: " << to_string(w.bracket) << '\n';
        out_ << "complex facets: " << detail::facets_text(w.complex) << '\n';
        out_ << "degree: " << w.degree << '\n';
        out_ << "terms: " << w.chain.size() << '\n';
        out_ << "chain: " << to_string(w.chain) << '\n';
        out_ << "cycle: " << (r.cycle ? "true" : "false") << '\n';
        out_ << "zero_class: " << (r.zero_class ? "true" : "false") << '\n';
        if (r.witness) out_ << "witness: " << to_string(*r.witness) << '\n';
    }

    int cmd_whitehead(const RunConfig& cfg) {
        if (cfg.example) {
            WhiteheadChain w = iterated_example_chain();
            report_chain(cfg, w, {{"composite_route_agrees", true}});
            return kOk;
        }
        if (cfg.bracket.empty()) throw MalformedInput("whitehead needs --example or --bracket");
        const BracketExpr w = parse_bracket(cfg.bracket);
        const auto [boundary, full] = complexes_of_bracket(w);
        const SimplicialComplex k = cfg.complex_path.empty() ? boundary : detail::load_complex(cfg.complex_path);
        Simplex missing;
        if (first_missing_simplex(k, boundary, missing))
            throw NotDefined("Whitehead product " + to_string(w) + " needs the boundary complex in K; simplex " +
                             to_string(missing) + " is missing");
        const bool full_in = contains_subcomplex(k, full);
        json extra{{"boundary_in_complex", true}, {"full_in_complex", full_in}};

        if (w.depth() == 1) {
            WhiteheadChain chain = first_order_hurewicz_cycle(w.leaves(), k);
            chain.bracket = w;
            report_chain(cfg, chain, extra);
            return kOk;
        }
        if (to_string(w) == "[[m1,m2,m3],m4,m5]") {
            WhiteheadChain chain = iterated_example_chain();
            chain.complex = k;
            chain.ambient = cobar_dj(k, chain.degree + 1);
            report_chain(cfg, chain, extra);
            return kOk;
        }
        if (as_json(cfg)) {
            extra["bracket"] = to_string(w);
            extra["chain"] = nullptr;
            emit(extra);
        } else {
            out_ << "bracket: " << to_string(w) << '\n';
            out_ << "boundary complex in K: yes\n";
            out_ << "full complex in K: " << (full_in ? "yes" : "no") << '\n';
            out_ << "chain: only first-order brackets and [[m1,m2,m3],m4,m5] are constructed\n";
        }
        return kOk;
    }

    std::ostream& out_;
    std::ostream& err_;
};

/// Parses argv and runs; returns the process exit code.
inline int main_with(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cobar constructions and Adams-Hilton models of polyhedral products"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_flag("-v,--verbose", cfg.verbose, "Report timings on stderr");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--complex", cfg.complex_path, "Complex JSON file (or inline JSON)");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"table", "json"}));
        sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* complex = app.add_subcommand("complex", "Simplicial complexes, substitution and bracket complexes");
    complex->add_option("action", cfg.mode, "show | bracket | substitute")->required()
        ->check(CLI::IsMember({"show", "bracket", "substitute"}));
    complex->add_option("expr", cfg.bracket, "Bracket expression for 'bracket'");
    complex->add_option("--part", cfg.parts, "Part complex for 'substitute' (repeat, in vertex order)");
    add_common(complex);

    auto add_algebra = [&](CLI::App* sub) {
        sub->add_option("mode", cfg.mode, "spheres | dj | cpn")->required()->check(CLI::IsMember({"spheres", "dj", "cpn"}));
        sub->add_option("n", cfg.cpn, "n for cpn (integer or 'inf')");
        sub->add_option("--dims", cfg.dims, "Sphere dimensions: 1=5,2=2 or 2,2 (default 2)");
        sub->add_option("--max-degree", cfg.max_degree, "Degree bound (default 12)")->check(CLI::PositiveNumber);
        add_common(sub);
    };
    auto* cobar = app.add_subcommand("cobar", "List generators and differentials");
    add_algebra(cobar);
    cobar->add_flag("--check", cfg.check, "Verify d^2 = 0 on every generator");
    auto* hom = app.add_subcommand("homology", "Integral homology up to a degree");
    add_algebra(hom);
    hom->add_option("--up-to", cfg.up_to, "Top degree (default max-degree - 1)");

    auto* wh = app.add_subcommand("whitehead", "Hurewicz cycles of higher Whitehead products");
    wh->add_flag("--example", cfg.example, "The chain of [[m1,m2,m3],m4,m5] in K = dD(dD(1,2,3),4,5)");
    wh->add_option("--bracket", cfg.bracket, "Bracket expression, e.g. \"[m1,m2,m3]\"");
    add_common(wh);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    for (auto* sub : app.get_subcommands()) {
        cfg.command = sub->get_name();
        if (auto* opt = sub->get_option_no_throw("--max-degree"); opt && opt->count() > 0) cfg.max_degree_given = true;
    }
    App runner(out, err);
    return runner.run(cfg);
}

} // namespace polycobar::cli
