#include "augtree/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "augtree/constructor.hpp"
#include "augtree/errors.hpp"
#include "augtree/gadgets.hpp"
#include "augtree/instance_io.hpp"
#include "augtree/list_coloring.hpp"
#include "augtree/verifier.hpp"

namespace augtree::cli {

namespace {

using nlohmann::json;

struct ConstructOptions {
    std::string what;
    int d = 2, r = 1, g = 4, k = 2, t = 2, j = 2;
    std::size_t budget = kDefaultNodeBudget;
    std::uint64_t seed = 0;
    std::string splits;
    std::string provider;
    std::string out;
    std::string export_format;
};

struct VerifyOptions {
    std::string file;
    std::string checks;
    std::uint64_t search_budget = 10'000'000;
};

struct WitnessOptions {
    std::string file;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
};

class PlanOnly : public std::exception {};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// "2o,1e" style group list: count, parity letter (o, e or a), optional u for unaligned.
std::vector<MateGroup> parse_splits(const std::string& s, int r) {
    if (s.empty()) return {{r, MateParity::odd, true}};
    std::vector<MateGroup> groups;
    for (const std::string& item : split_commas(s)) {
        std::size_t pos = 0;
        int count = 0;
        try {
            count = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw ParameterError("bad split '" + item + "'");
        }
        const std::string rest = item.substr(pos);
        MateGroup g{count, MateParity::odd, true};
        if (rest == "o" || rest == "ou") g.parity = MateParity::odd;
        else if (rest == "e" || rest == "eu") g.parity = MateParity::even;
        else if (rest == "a" || rest == "au") g.parity = MateParity::any;
        else throw ParameterError("bad split '" + item + "': expected <count><o|e|a>[u]");
        g.aligned = rest.size() == 1;
        groups.push_back(g);
    }
    return groups;
}

BaseProvider provider_named(const std::string& name, const BaseProvider& fallback) {
    if (name.empty()) return fallback;
    if (name == "aligned") return aligned_provider();
    if (name == "pigeonhole") return pigeonhole_provider();
    throw ParameterError("unknown provider '" + name + "' (aligned or pigeonhole)");
}

json tree_meta(const AugmentedTree& t) {
    return {{"height", t.height()},
            {"vertices", t.vertex_count()},
            {"leaves", t.leaves.size()},
            {"aug_edges", t.aug_edges.size()},
            {"reduced", t.reduced}};
}

void expect_tree(InstanceFile& f, const AugmentedTree& t, int girth_min, bool bipartite) {
    f.meta["expect"] = {{"girth_min", girth_min},
                        {"bipartite", bipartite},
                        {"edge_count", flatten(t).edge_count()}};
}

void expect_choosable(InstanceFile& f, const GadgetBundle& b) {
    json e = {{"bipartite", true},
              {"edge_count", (b.k - 1) * static_cast<std::int64_t>(b.vertex_count()) + 1},
              {"orientation_k", b.k},
              {"lists_unsat", true},
              {"girth_min", 4}};
    if (b.k == 2) e["mad_edge_deleted_max"] = "2";
    if (b.kind == GadgetKind::listcap || b.twin_lists == TwinLists::intersection_one) e["lists_cap"] = 1;
    if (b.kind == GadgetKind::small_union || (b.kind == GadgetKind::twin_cycles && b.twin_lists == TwinLists::union_three)) {
        e["union_size"] = 2 * b.k - 1;
    }
    f.meta["expect"] = e;
}

json bundle_meta(const GadgetBundle& b) {
    json m = {{"kind", to_string(b.kind)}, {"vertices", b.vertex_count()}, {"edges", b.graph.edge_count()}};
    if (b.skeleton) m["skeleton_height"] = b.skeleton->height();
    if (b.lists) m["list_colors"] = b.lists->universe().size();
    return m;
}

InstanceFile construct(const ConstructOptions& o) {
    InstanceFile f;
    f.construction = o.what;
    f.seed = o.seed;
    auto param = [&](const char* key, auto value) { f.params[key] = std::to_string(value); };
    const std::string& w = o.what;
    if (w == "base" || w == "reduce") {
        param("d", o.d);
        param("r", o.r);
        AugmentedTree t = build_base(o.d, o.r, o.budget);
        if (w == "reduce") t = reduce(t);
        f.meta = tree_meta(t);
        f.meta["height_bound"] = height_bound(o.d, o.r, 4).get_str();
        expect_tree(f, t, 4, true);
        f.tree = std::move(t);
    } else if (w == "expand") {
        param("d", o.d);
        param("g", o.g);
        const PlanResult inner = plan_and_build(o.d, o.d * o.d, o.g, o.budget);
        if (!inner.built()) throw BudgetExceeded("the (d,d²,g) input exceeds the budget");
        AugmentedTree t = expand_girth(*inner.tree, o.budget);
        f.meta = tree_meta(t);
        expect_tree(f, t, o.g + 2, true);
        f.tree = std::move(t);
    } else if (w == "compose") {
        param("d", o.d);
        param("r", o.r);
        if (o.r < 2) throw ParameterError("compose needs r >= 2");
        const AugmentedTree g1 = build_base(o.d, 1, o.budget);
        const BigNat wide = checked_pow(o.d, g1.height());
        if (!wide.fits_sint_p()) throw BudgetExceeded("wide branching is too large");
        const AugmentedTree g2 = build_base(static_cast<int>(wide.get_si()), o.r - 1, o.budget);
        AugmentedTree t = compose(g1, g2, o.budget);
        f.meta = tree_meta(t);
        expect_tree(f, t, 4, true);
        f.tree = std::move(t);
    } else if (w == "plan") {
        param("d", o.d);
        param("r", o.r);
        param("g", o.g);
        PlanResult res = plan_and_build(o.d, o.r, o.g, o.budget);
        f.meta["height_bound"] = res.plan.height_bound.get_str();
        f.meta["node_bound"] = res.plan.node_bound.to_string();
        f.meta["steps"] = res.plan.trace.size();
        f.meta["built"] = res.built();
        if (res.built()) {
            f.meta.update(tree_meta(*res.tree));
            expect_tree(f, *res.tree, o.g, true);
            f.tree = std::move(*res.tree);
        }
    } else if (w == "aligned") {
        param("d", o.d);
        param("r", o.r);
        f.params["splits"] = o.splits.empty() ? std::to_string(o.r) + "o" : o.splits;
        const auto groups = parse_splits(o.splits, o.r);
        AugmentedTree t = o.provider == "pigeonhole" ? build_reduced_by_pigeonhole(o.d, groups, o.budget)
                                                     : build_reduced_color_aligned(o.d, o.r, groups, std::nullopt, o.budget);
        f.meta = tree_meta(t);
        const bool all_odd = std::all_of(groups.begin(), groups.end(), [](const MateGroup& g) {
            return g.parity == MateParity::odd || g.count == 0;
        });
        f.meta["expect"] = {{"bipartite", all_odd}, {"edge_count", flatten(t).edge_count()}};
        f.tree = std::move(t);
    } else if (w == "hypergraph") {
        param("k", o.k);
        param("t", o.t);
        const int r = (o.t - 1) * o.k + 1;
        HypergraphBundle h = build_hypergraph(build_base(o.k, r, o.budget), o.t, o.k);
        f.meta = {{"vertices", h.hypergraph.vertex_count},
                  {"edges", h.hypergraph.edge_count()},
                  {"skeleton_height", h.skeleton.height()}};
        if (o.t == 2) f.meta["expect"] = {{"bipartite", false}};
        f.hypergraph = std::move(h);
    } else if (w == "jk" || w == "gk" || w == "listcap" || w == "hk") {
        param("k", o.k);
        param("g", o.g);
        if (!o.provider.empty()) f.params["provider"] = o.provider;
        GadgetBundle b;
        if (w == "jk") {
            b = build_Jk(o.k, o.g, provider_named(o.provider, aligned_provider()), o.budget);
        } else if (w == "gk") {
            b = build_Gk(o.k, o.g, provider_named(o.provider, pigeonhole_provider()), o.budget);
        } else if (w == "listcap") {
            b = build_listcap(o.k, o.g, provider_named(o.provider, pigeonhole_provider()), o.budget);
        } else {
            b = build_Hk_smallunion(o.k, o.g, provider_named(o.provider, aligned_provider()), o.budget);
        }
        f.meta = bundle_meta(b);
        if (w == "jk") {
            // J_2 is the bare odd cycle; larger k inherit the relaxed base girth
            f.meta["expect"] = {{"mad_max", std::to_string(2 * (o.k - 1))},
                                {"girth_min", o.k == 2 ? o.g : 4},
                                {"bipartite", false}};
        } else {
            expect_choosable(f, b);
        }
        f.bundle = std::move(b);
    } else if (w == "smallcup-sharp") {
        param("j", o.j);
        param("k", o.k);
        auto [g, lists] = smallcup_sharp(o.j, o.k);
        f.meta = {{"vertices", g.vertex_count}, {"edges", g.edge_count()}, {"list_colors", lists.universe().size()}};
        f.meta["expect"] = {{"lists_unsat", true},
                            {"edge_count", g.edge_count()},
                            {"union_size", smallcup_bound(o.j, o.k) + 1}};
        f.graph = std::move(g);
        f.lists = std::move(lists);
    } else {
        throw ParameterError("unknown construction '" + w + "'");
    }
    return f;
}

int write_output(const ConstructOptions& o, const InstanceFile& f, std::ostream& out) {
    auto emit = [&](std::ostream& s) {
        if (o.export_format.empty()) {
            write_instance(s, f);
            return;
        }
        const auto g = instance_graph(f);
        if (!g) throw ParameterError("this instance has no graph to export");
        if (o.export_format == "edgelist") {
            write_edge_list(s, *g);
        } else if (o.export_format == "dimacs") {
            write_dimacs(s, *g, instance_lists(f));
        } else {
            throw ParameterError("unknown export format '" + o.export_format + "' (edgelist or dimacs)");
        }
    };
    if (o.out.empty() || o.out == "-") {
        emit(out);
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) throw Error("cannot open " + o.out + " for writing");
        emit(file);
        if (!file) throw Error("failed writing " + o.out);
    }
    return 0;
}

InstanceFile load(const std::string& path) {
    if (path == "-") return read_instance(std::cin);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    return read_instance(in);
}

// ---------------------------------------------------------------------------
// verify

enum class Verdict { pass, fail, inconclusive };

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

struct CheckLine {
    Verdict verdict;
    std::string measured;
    std::string expected;
};

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

const std::vector<std::string> kAllChecks = {"girth",      "bipartite", "mad",         "orientation",
                                             "lists-unsat", "lists-cap", "union-size", "edge-count"};

const char* expectation_key(const std::string& check) {
    static const std::map<std::string, const char*> keys = {
        {"girth", "girth_min"},       {"bipartite", "bipartite"},  {"orientation", "orientation_k"},
        {"lists-unsat", "lists_unsat"}, {"lists-cap", "lists_cap"}, {"union-size", "union_size"},
        {"edge-count", "edge_count"}};
    auto it = keys.find(check);
    return it == keys.end() ? nullptr : it->second;
}

bool has_expectation(const json& expect, const std::string& check) {
    if (check == "mad") return expect.contains("mad_max") || expect.contains("mad_edge_deleted_max");
    const char* key = expectation_key(check);
    return key && expect.contains(key);
}

CheckLine run_check(const std::string& check, const InstanceFile& f, const json& expect, const Graph& g,
                    std::uint64_t search_budget) {
    if (!has_expectation(expect, check)) return {Verdict::inconclusive, "-", "no expectation recorded"};
    const ListAssignment* lists = instance_lists(f);
    auto pass_if = [](bool ok) { return ok ? Verdict::pass : Verdict::fail; };
    if (check == "girth") {
        const GirthResult r = girth(g);
        const int want = expect["girth_min"].get<int>();
        const std::string measured = r.length ? std::to_string(*r.length) : "inf";
        return {pass_if(!r.length || *r.length >= want), measured, ">= " + std::to_string(want)};
    }
    if (check == "bipartite") {
        const bool is = std::holds_alternative<Bipartition>(bipartition(g));
        const bool want = expect["bipartite"].get<bool>();
        return {pass_if(is == want), is ? "true" : "false", want ? "true" : "false"};
    }
    if (check == "mad") {
        if (expect.contains("mad_max")) {
            const Rational cap = parse_rational(expect["mad_max"].get<std::string>());
            const Rational m = mad_exact(g);
            return {pass_if(m <= cap), m.to_string(), "<= " + cap.to_string()};
        }
        const Rational cap = parse_rational(expect["mad_edge_deleted_max"].get<std::string>());
        Rational worst(0);
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            Graph h = g;
            h.edges.erase(h.edges.begin() + static_cast<std::ptrdiff_t>(i));
            h.tags.erase(h.tags.begin() + static_cast<std::ptrdiff_t>(i));
            worst = std::max(worst, mad_exact(h));
        }
        return {pass_if(worst <= cap), "max over edge deletions " + worst.to_string(), "<= " + cap.to_string()};
    }
    if (check == "orientation") {
        const Orientation* o = instance_orientation(f);
        const int k = expect["orientation_k"].get<int>();
        if (!o) return {Verdict::fail, "no orientation section", "valid for k=" + std::to_string(k)};
        const auto bad = check_orientation(g, *o, k);
        return {pass_if(!bad), bad ? *bad : "ok", "valid for k=" + std::to_string(k)};
    }
    if (!lists && (check == "lists-unsat" || check == "lists-cap" || check == "union-size")) {
        return {Verdict::fail, "no lists section", "lists"};
    }
    if (check == "lists-unsat") {
        const SearchResult r = list_color_search(g, *lists, search_budget);
        const std::string nodes = std::to_string(r.nodes) + " nodes";
        switch (r.status) {
            case SearchStatus::unsat: return {Verdict::pass, "unsat after " + nodes, "unsat"};
            case SearchStatus::sat: return {Verdict::fail, "sat after " + nodes, "unsat"};
            case SearchStatus::inconclusive: return {Verdict::inconclusive, "budget exhausted after " + nodes, "unsat"};
        }
    }
    if (check == "lists-cap") {
        const auto want = expect["lists_cap"].get<std::size_t>();
        std::size_t bad = 0;
        std::vector<Color> common;
        for (const Edge& e : g.edges) {
            auto a = lists->list(e.u);
            auto b = lists->list(e.v);
            common.clear();
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            bad += common.size() != want;
        }
        return {pass_if(bad == 0), std::to_string(bad) + " edges off", "|L(u)∩L(v)| = " + std::to_string(want)};
    }
    if (check == "union-size") {
        const auto want = expect["union_size"].get<std::size_t>();
        const std::size_t size = lists->universe().size();
        return {pass_if(size == want), std::to_string(size), std::to_string(want)};
    }
    if (check == "edge-count") {
        const auto want = expect["edge_count"].get<std::size_t>();
        return {pass_if(g.edge_count() == want), std::to_string(g.edge_count()), std::to_string(want)};
    }
    throw ParameterError("unknown check '" + check + "'");
}

int verify(const VerifyOptions& o, std::ostream& out) {
    const InstanceFile f = load(o.file);
    const auto g = instance_graph(f);
    if (!g) throw ParameterError("instance has no graph to verify");
    const json expect = f.meta.contains("expect") ? f.meta["expect"] : json::object();
    std::vector<std::string> checks;
    if (o.checks.empty() || o.checks == "all") {
        for (const std::string& c : kAllChecks) {
            if (has_expectation(expect, c)) checks.push_back(c);
        }
    } else {
        checks = split_commas(o.checks);
        for (const std::string& c : checks) {
            if (std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end()) {
                throw ParameterError("unknown check '" + c + "'");
            }
        }
    }
    bool all_pass = true;
    for (const std::string& c : checks) {
        const CheckLine line = run_check(c, f, expect, *g, o.search_budget);
        all_pass = all_pass && line.verdict == Verdict::pass;
        out << c << ' ' << verdict_name(line.verdict) << " measured " << line.measured << " expected "
            << line.expected << '\n';
    }
    return all_pass ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// witness

int witness(const WitnessOptions& o, std::ostream& out) {
    const InstanceFile f = load(o.file);
    TrialReport rep;
    if (f.bundle && (f.bundle->skeleton || f.bundle->kind == GadgetKind::odd_cycle ||
                     f.bundle->kind == GadgetKind::twin_cycles)) {
        rep = run_witness_trials(*f.bundle, o.trials, o.seed);
    } else if (f.hypergraph) {
        rep = run_witness_trials(*f.hypergraph, o.trials, o.seed);
    } else {
        throw ParameterError("instance carries no skeleton to run witnesses on");
    }
    out << "trials " << rep.trials << '\n';
    out << "failures " << rep.failures << '\n';
    if (rep.sample_edge) out << "sample edge " << rep.sample_edge->u << ' ' << rep.sample_edge->v << '\n';
    if (rep.sample_hyperedge) out << "sample hyperedge " << *rep.sample_hyperedge << '\n';
    if (f.bundle) {
        out << "reasons improper_tree_edge=" << rep.reason_counts[0] << " forbidden_color=" << rep.reason_counts[1]
            << " base_gadget=" << rep.reason_counts[2] << '\n';
    }
    out << (rep.failures == 0 ? "PASS" : "FAIL") << '\n';
    return rep.failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"augmented-tree constructions and verifiers", "augtree"};
    app.require_subcommand(1);

    ConstructOptions co;
    auto* construct_cmd = app.add_subcommand("construct", "build an instance and write it out");
    construct_cmd->add_option("what", co.what, "base|expand|compose|plan|reduce|aligned|hypergraph|jk|gk|listcap|hk|smallcup-sharp")
        ->required();
    construct_cmd->add_option("--d", co.d, "branching");
    construct_cmd->add_option("--r", co.r, "augmenting edges per leaf");
    construct_cmd->add_option("--g", co.g, "girth target");
    construct_cmd->add_option("--k", co.k, "colors");
    construct_cmd->add_option("--t", co.t, "hyperedge size");
    construct_cmd->add_option("--j", co.j, "classes of the proper coloring");
    construct_cmd->add_option("--budget", co.budget, "vertex budget");
    construct_cmd->add_option("--seed", co.seed, "seed recorded in the header");
    construct_cmd->add_option("--splits", co.splits, "mate groups, e.g. 2o,1e");
    construct_cmd->add_option("--provider", co.provider, "aligned|pigeonhole");
    construct_cmd->add_option("--out", co.out, "output file (default stdout)");
    construct_cmd->add_option("--export", co.export_format, "edgelist|dimacs instead of the instance format");

    VerifyOptions vo;
    auto* verify_cmd = app.add_subcommand("verify", "check an instance against its recorded expectations");
    verify_cmd->add_option("file", vo.file, "instance file, - for stdin")->required();
    verify_cmd->add_option("--checks", vo.checks, "comma list of girth,bipartite,mad,orientation,lists-unsat,lists-cap,union-size,edge-count");
    verify_cmd->add_option("--search-budget", vo.search_budget, "node budget of the list coloring search");

    WitnessOptions wo;
    auto* witness_cmd = app.add_subcommand("witness", "run seeded witness trials");
    witness_cmd->add_option("file", wo.file, "instance file, - for stdin")->required();
    witness_cmd->add_option("--trials", wo.trials, "number of colorings");
    witness_cmd->add_option("--seed", wo.seed, "seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*construct_cmd) {
            const InstanceFile f = construct(co);
            write_output(co, f, out);
            if (co.what == "plan" && !f.tree) {
                err << "plan only: height_bound " << f.meta["height_bound"].get<std::string>() << ", node_bound "
                    << f.meta["node_bound"].get<std::string>() << " exceeds the budget\n";
                return kExitPlanOnly;
            }
            return kExitOk;
        }
        if (*verify_cmd) return verify(vo, out);
        if (*witness_cmd) return witness(wo, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace augtree::cli
