#include "einfty/verification.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace einfty;
using json = nlohmann::json;

namespace {

enum Exit { kPass = 0, kVerifyFail = 1, kParse = 2, kSemantic = 3 };

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what() + " (byte " + std::to_string(e.byte) + ")");
    }
}

template <class F>
auto parsing(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
}

std::string render_word(const SimplicialSet& X, const CellTensor& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "(x)" : "") + std::string("[") + X.name(w[i]) + "]";
    return out;
}

std::string render(const SimplicialSet& X, const XChain& x) {
    if (x.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : x) {
        Integer a = c < 0 ? Integer(-c) : c;
        out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        if (a != 1) out += a.str() + " ";
        out += render_word(X, w);
        first = false;
    }
    return out;
}

/// "[0,1,2] + [0,2]", a cell name, "" for zero, or a chain JSON object.
XChain parse_chain(const SimplicialSet& X, const std::string& text, Ring r) {
    std::string t = text;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\n");
        if (a == std::string::npos) return std::string();
        return s.substr(a, s.find_last_not_of(" \t\n") - a + 1);
    };
    t = trim(t);
    if (!t.empty() && t.front() == '{') {
        XChain x = xchain_from_json(X, json::parse(t));
        XChain out(r);
        for (const auto& [w, c] : x) out.add(w, c);
        return out;
    }
    XChain out(r);
    if (t.empty() || t == "0") return out;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, '+')) {
        tok = trim(tok);
        if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']') tok = tok.substr(1, tok.size() - 2);
        out.add(CellTensor{X.id(trim(tok))}, 1);
    }
    return out;
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag) {
    if (opt->count()) return flag;
    if (const char* env = std::getenv("EINFTY_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParseError("EINFTY_SEED is not an integer");
        }
    }
    return 1;
}

PropElement convert(const PropElement& x, Ring r) {
    if (x.ring() == r) return x;
    PropElement out(r);
    for (const auto& [g, c] : x) out.add(g, c);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic E-infinity prop calculator"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    std::uint64_t seed_flag = 1;
    app.add_flag("--json", as_json, "emit JSON");
    auto* seed_opt = app.add_option("--seed", seed_flag, "seed for randomized suites (default: EINFTY_SEED or 1)");

    auto* norm = app.add_subcommand("normalize", "reduce a term to normal form");
    std::string term_file, scope = "S", ring_name_flag;
    bool trace = false;
    norm->add_option("term", term_file, "term JSON file")->required();
    norm->add_option("--scope", scope, "S or MS")->check(CLI::IsMember({"S", "MS"}));
    norm->add_option("--ring", ring_name_flag, "Z or F2")->check(CLI::IsMember({"Z", "F2"}));
    norm->add_flag("--trace", trace, "print the rule trace");

    auto* co = app.add_subcommand("coact", "apply a (1,m) term or a surjection to a chain");
    std::string co_term, co_sur, sset_file, chain_text, co_ring;
    int co_cup = -1;
    auto* o_term = co->add_option("--term", co_term, "term JSON file");
    auto* o_sur = co->add_option("--surjection", co_sur, "surjection such as \"1 2 1\"");
    auto* o_cup = co->add_option("--cup", co_cup, "the cup-i coproduct")->check(CLI::NonNegativeNumber);
    o_term->excludes(o_sur)->excludes(o_cup);
    o_sur->excludes(o_cup);
    co->add_option("--sset", sset_file, "simplicial set JSON file")->required();
    co->add_option("--chain", chain_text, "chain: \"[0,1,2] + [0,1]\", a cell name, or chain JSON")->required();
    co->add_option("--ring", co_ring, "Z or F2")->check(CLI::IsMember({"Z", "F2"}));

    auto* st = app.add_subcommand("steenrod", "Steenrod squares on mod 2 cohomology");
    std::string st_sset;
    int square = 1;
    st->add_option("sset", st_sset, "simplicial set JSON file")->required();
    st->add_option("--square", square, "k in Sq^k")->check(CLI::NonNegativeNumber);

    auto* ver = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> suites;
    std::string bound_text;
    int max_d = -1, terms = -1;
    ver->add_option("--suite", suites, "suite names or 'all'")->required()->delimiter(',');
    ver->add_option("--bound", bound_text, "homology bound n,m,D");
    ver->add_option("--max-d", max_d, "largest simplex dimension");
    ver->add_option("--terms", terms, "number of random terms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*norm) {
            json j = read_json(term_file);
            PropElement x = parsing([&] { return element_from_json(j); });
            if (!ring_name_flag.empty()) x = convert(x, parse_ring(ring_name_flag));
            const Scope sc = parse_scope(scope);
            if (sc == Scope::MS && x.ring() != Ring::F2)
                throw std::invalid_argument("scope MS needs --ring F2");
            Reducer red(sc, x.ring());
            json steps = json::array();
            if (trace)
                red.set_trace([&](const TraceStep& t) {
                    steps.push_back({{"rule", rule_name(t.rule)}, {"vertex", t.site.vertex}, {"before", t.before},
                                     {"after", t.after}});
                });
            PropElement nf = red.reduce(x);
            if (as_json) {
                json out = {{"scope", scope_name(sc)}, {"normal_form", element_to_json(nf)}};
                if (trace) out["trace"] = steps;
                std::cout << out.dump(2) << "\n";
            } else {
                if (trace)
                    for (const auto& s : steps)
                        std::cout << "# " << s["rule"].get<std::string>() << " at v" << s["vertex"] << "\n";
                if (nf.empty()) std::cout << "0\n";
                for (const auto& [g, c] : nf) std::cout << c << "  " << describe(g) << "\n";
            }
            return kPass;
        }

        if (*co) {
            SimplicialSet X = parsing([&] { return simplicial_set_from_json(read_json(sset_file)); });
            XChain out(Ring::F2);
            if (o_sur->count()) {
                Surjection s = parsing([&] { return parse_surjection(co_sur); });
                XChain c = parsing([&] { return parse_chain(X, chain_text, Ring::F2); });
                out = sur_coact(s, X, c);
            } else {
                const Ring r = co_ring.empty() ? Ring::Z : parse_ring(co_ring);
                PropElement g(r);
                if (o_term->count()) {
                    json j = read_json(co_term);
                    g = convert(parsing([&] { return element_from_json(j, r); }), r);
                } else if (o_cup->count()) {
                    g = cup_i_term(co_cup, r);
                } else {
                    throw ParseError("coact needs --term, --surjection or --cup");
                }
                XChain c = parsing([&] { return parse_chain(X, chain_text, r); });
                for (const auto& [h, k] : g)
                    if (h.n != 1) throw std::invalid_argument("coact needs terms with one input");
                out = coact(g, X, c);
            }
            if (as_json)
                std::cout << xchain_to_json(X, out).dump(2) << "\n";
            else
                std::cout << render(X, out) << "\n";
            return kPass;
        }

        if (*st) {
            SimplicialSet X = parsing([&] { return simplicial_set_from_json(read_json(st_sset)); });
            Cohomology H(X);
            auto tables = steenrod_tables(square, X, H);
            auto oracle = steenrod_tables(square, X, H, true);
            json out = {{"square", square}, {"betti_F2", H.ranks()}, {"tables", json::array()}};
            bool agree = true;
            for (std::size_t q = 0; q < tables.size(); ++q) {
                agree = agree && tables[q].columns == oracle[q].columns;
                json reps = json::array();
                for (const auto& a : H.representatives(static_cast<int>(q))) reps.push_back(cochain_to_json(X, a));
                out["tables"].push_back({{"from_degree", q},
                                         {"to_degree", q + square},
                                         {"columns", tables[q].columns},
                                         {"nonzero", tables[q].nonzero()},
                                         {"representatives", reps}});
            }
            out["agrees_with_surjection_oracle"] = agree;
            if (as_json) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "Sq^" << square << "  (F2 Betti";
                for (int b : H.ranks()) std::cout << " " << b;
                std::cout << ")\n";
                for (std::size_t q = 0; q < tables.size(); ++q) {
                    std::cout << "H^" << q << " -> H^" << q + square << ":";
                    if (tables[q].columns.empty()) std::cout << " (no classes)";
                    for (const auto& col : tables[q].columns) {
                        std::cout << " [";
                        for (std::size_t r = 0; r < col.size(); ++r) std::cout << (r ? " " : "") << col[r];
                        std::cout << "]";
                    }
                    std::cout << "\n";
                }
                std::cout << "surjection oracle " << (agree ? "agrees" : "DISAGREES") << "\n";
            }
            return agree ? kPass : kVerifyFail;
        }

        if (*ver) {
            SuiteOptions o;
            o.seed = resolve_seed(seed_opt, seed_flag);
            if (max_d >= 0) o.max_d = max_d;
            if (terms >= 0) o.random_terms = terms;
            if (!bound_text.empty()) {
                o.bound = parsing([&] {
                    std::vector<int> b;
                    std::stringstream ss(bound_text);
                    std::string tok;
                    while (std::getline(ss, tok, ',')) b.push_back(std::stoi(tok));
                    if (b.size() != 3) throw std::invalid_argument("--bound takes n,m,D");
                    return b;
                });
            }
            if (suites.size() == 1 && suites[0] == "all") suites = suite_names();
            for (const auto& s : suites)
                if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
                    throw ParseError("unknown suite: " + s);
            auto reports = run_suites(suites, o);
            bool ok = true;
            json all = json::array();
            for (const auto& r : reports) {
                ok = ok && r.passed();
                all.push_back(report_to_json(r));
            }
            if (as_json) {
                std::cout << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
            } else {
                for (const auto& r : reports) {
                    std::cout << r.suite << ": " << r.status << " (" << r.cases << " cases)\n";
                    for (const auto& c : r.counterexamples) std::cout << "  " << c.dump() << "\n";
                }
            }
            return ok ? kPass : kVerifyFail;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSemantic;
    }
    return kPass;
}
