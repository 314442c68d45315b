#include "run_report.hpp"

#include <mwb/generators.hpp>
#include <mwb/parser.hpp>
#include <mwb/pipelines.hpp>
#include <mwb/structure_io.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <functional>
#include <iostream>
#include <memory>

namespace {

using namespace mwb;
using cli::Run;

constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct Globals {
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
    std::string out;
    std::string format = "json";
    std::vector<std::string> argv;
    int rc = 0;
};

Run make_run(const Globals& g) { return Run(g.argv, g.out, g.format); }

std::uint64_t budget_of(const Globals& g, bool exhaustive) {
    if (exhaustive) return kUnlimitedBudget;
    return g.budget.value_or(kDefaultBudget);
}

Element parse_element(std::string_view s) {
    Element e = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), e);
    if (ec != std::errc() || p != s.data() + s.size()) throw Error("not an element: '" + std::string(s) + "'");
    return e;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        std::size_t end = s.find(sep, start);
        out.push_back(s.substr(start, end - start));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

// "x=1,y=2"
Assignment parse_assignment(const std::string& text) {
    Assignment a;
    for (const auto& item : split(text, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error("expected name=value, got '" + item + "'");
        a[item.substr(0, eq)] = parse_element(item.substr(eq + 1));
    }
    return a;
}

// A unary relation of `s`, or a comma-separated element list.
NamedSubset subset_arg(const FiniteStructure& s, const std::string& name, const std::string& arg) {
    if (const Relation* r = s.find_relation(arg); r && r->arity() == 1) return subset_of(s, arg);
    std::vector<Element> members;
    for (const auto& e : split(arg, ',')) members.push_back(parse_element(e));
    return NamedSubset(name, std::move(members));
}

Json verdict_json(const Verdict& v) { return {{"ok", v.ok}, {"reason", v.reason}}; }

Json pairs_json(const std::vector<ElementPair>& ps) {
    Json out = Json::array();
    for (const auto& [a, b] : ps) out.push_back({a, b});
    return out;
}

CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    return sub;
}

void add_eval(CLI::App& app, Globals& g) {
    auto o = std::make_shared<std::tuple<std::string, std::string, std::string>>();
    auto* sub = leaf(&app, "eval", "Evaluate a formula under an assignment");
    sub->add_option("--structure", std::get<0>(*o))->required();
    sub->add_option("--formula", std::get<1>(*o), "formula text or file")->required();
    sub->add_option("--assign", std::get<2>(*o), "x=1,y=2");
    sub->callback([&g, o] {
        Run run = make_run(g);
        FiniteStructure s = run.structure(std::get<0>(*o));
        Formula f = run.formula(std::get<1>(*o));
        bool value = evaluate(s, f, parse_assignment(std::get<2>(*o)));
        g.rc = run.finish({{"formula", f.to_string()}, {"value", value}}, value, value ? "true" : "false");
    });
}

void add_solve(CLI::App& app, Globals& g) {
    struct Opts {
        std::string structure, formula, assign;
        std::vector<std::string> vars;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = leaf(&app, "solve", "List the solution set of a formula");
    sub->add_option("--structure", o->structure)->required();
    sub->add_option("--formula", o->formula)->required();
    sub->add_option("--vars", o->vars)->delimiter(',')->required();
    sub->add_option("--assign", o->assign, "values for the remaining free variables");
    sub->callback([&g, o] {
        Run run = make_run(g);
        FiniteStructure s = run.structure(o->structure);
        Formula f = run.formula(o->formula);
        auto tuples = solution_set(s, f, o->vars, parse_assignment(o->assign));
        Json payload = {{"formula", f.to_string()}, {"vars", o->vars}, {"tuples", tuples}, {"count", tuples.size()}};
        g.rc = run.finish(payload, true, "solved");
    });
}

struct FormulaOpts {
    std::string structure, formula;
    std::vector<std::string> obj{"x"}, params;
};

void formula_options(CLI::App* sub, FormulaOpts& o) {
    sub->add_option("--structure", o.structure)->required();
    sub->add_option("--formula", o.formula)->required();
    sub->add_option("--obj", o.obj, "object variables")->delimiter(',');
    sub->add_option("--params", o.params, "parameter variables")->delimiter(',')->required();
}

void add_detect(CLI::App& app, Globals& g) {
    auto* detect = app.add_subcommand("detect", "Search for order, independence, fcp or configuration witnesses");
    detect->require_subcommand(1);
    for (auto kind : {WitnessKind::Order, WitnessKind::Independence, WitnessKind::Fcp}) {
        struct Opts : FormulaOpts {
            std::size_t level = 0;
            bool exhaustive = false;
        };
        auto o = std::make_shared<Opts>();
        const char* name = kind == WitnessKind::Order ? "order" : kind == WitnessKind::Independence ? "ip" : "fcp";
        auto* sub = leaf(detect, name, std::string("Find a level-n ") + std::string(to_string(kind)) + " witness");
        formula_options(sub, *o);
        sub->add_option("--level", o->level)->required();
        sub->add_flag("--exhaustive", o->exhaustive, "ignore the budget");
        sub->callback([&g, o, kind] {
            Run run = make_run(g);
            FiniteStructure s = run.structure(o->structure);
            PartitionedFormula pf(run.formula(o->formula), o->obj, o->params);
            SearchOutcome out = find_witness(kind, s, pf, o->level, budget_of(g, o->exhaustive));
            if (!out.witness) {
                g.rc = run.finish(nullptr, false, out.exhaustive ? "none (exhaustive)" : "none (budget)");
                return;
            }
            Verdict v = certify(s, pf, *out.witness);
            g.rc = run.finish(to_json(*out.witness), v.ok, v.ok ? "witness" : "unverified: " + v.reason);
        });
    }

    struct ConfigOpts : FormulaOpts {
        std::string kind = "stable";
        std::vector<std::size_t> levels;
        std::size_t reserve = 0;
        bool exhaustive = false;
    };
    auto o = std::make_shared<ConfigOpts>();
    auto* sub = leaf(detect, "config", "Find a stable or unstable configuration family");
    formula_options(sub, *o);
    sub->add_option("--kind", o->kind)->check(CLI::IsMember({"stable", "unstable"}));
    sub->add_option("--levels", o->levels)->delimiter(',')->required();
    sub->add_option("--reserve", o->reserve, "minimum size of the exceptional set");
    sub->add_flag("--exhaustive", o->exhaustive, "ignore the budget");
    sub->callback([&g, o] {
        Run run = make_run(g);
        FiniteStructure s = run.structure(o->structure);
        PartitionedFormula pf(run.formula(o->formula), o->obj, o->params);
        ConfigSearchOptions opts{config_kind_from_string(o->kind), o->levels, budget_of(g, o->exhaustive), o->reserve};
        ConfigOutcome out = find_config_family(s, pf, opts);
        if (!out.family) {
            g.rc = run.finish(nullptr, false, out.exhaustive ? "none (exhaustive)" : "none (budget)");
            return;
        }
        Verdict v = certify_config_family(s, pf, *out.family);
        // Shaped so the payload can be passed back as an overlay --*-config file.
        Json payload = to_json(pf);
        payload["kind"] = o->kind;
        payload["exceptional_reserve"] = o->reserve;
        payload["family"] = to_json(*out.family);
        g.rc = run.finish(payload, v.ok, v.ok ? "family" : "unverified: " + v.reason);
    });
}

void add_ma(CLI::App& app, Globals& g) {
    auto* ma = app.add_subcommand("ma", "Mutual algebraicity tools");
    ma->require_subcommand(1);
    struct Opts {
        std::string structure, relation, structure2;
        bool isolated = false;
    };

    auto o = std::make_shared<Opts>();
    auto* mult = leaf(ma, "mult", "Multiplicity of a relation");
    mult->add_option("--structure", o->structure)->required();
    mult->add_option("--relation", o->relation)->required();
    mult->callback([&g, o] {
        Run run = make_run(g);
        const FiniteStructure s = run.structure(o->structure);
        const Relation& y = s.relation(o->relation);
        Json payload = {{"relation", o->relation}, {"arity", y.arity()}, {"size", y.size()},
                        {"multiplicity", multiplicity(y)}};
        if (y.arity() >= 2) payload["diagonal_excess"] = diagonal_excess(y).tuples();
        g.rc = run.finish(payload, true, "computed");
    });

    auto* family = leaf(ma, "family", "Extract a pairwise disjoint subfamily");
    family->add_option("--structure", o->structure)->required();
    family->add_option("--relation", o->relation)->required();
    family->add_flag("--isolated", o->isolated, "also keep other tuples away from the family");
    family->callback([&g, o] {
        Run run = make_run(g);
        const FiniteStructure s = run.structure(o->structure);
        const Relation& y = s.relation(o->relation);
        DisjointFamily f = extract_disjoint_family(y, o->isolated);
        Verdict v = certify_disjoint_family(y, f);
        bool big = f.members.size() >= f.size_bound;
        std::string status = !v.ok ? "unverified: " + v.reason : big ? "family" : "below size bound";
        g.rc = run.finish(to_json(f), v.ok && big, status);
    });

    auto* present = leaf(ma, "present", "Canonical monadic presentation of a relation");
    present->add_option("--structure", o->structure)->required();
    present->add_option("--relation", o->relation)->required();
    present->callback([&g, o] {
        Run run = make_run(g);
        const FiniteStructure s = run.structure(o->structure);
        const Relation& y = s.relation(o->relation);
        MonadicPresentation p = canonical_monadic_presentation(y);
        FiniteStructure ps = presentation_structure(s.universe_size(), p);
        bool same = solution_set(ps, p.formula, p.variables) == y.tuples();
        run.artifact("presentation.json", to_canonical_json(ps));
        g.rc = run.finish(to_json(p), same, same ? "defines the relation" : "mismatch");
    });

    auto* uc = leaf(ma, "union-check", "Multiplicity before and after a union");
    uc->add_option("--structure", o->structure)->required();
    uc->add_option("--structure2", o->structure2)->required();
    uc->callback([&g, o] {
        Run run = make_run(g);
        FiniteStructure a = run.structure(o->structure);
        FiniteStructure b = run.structure(o->structure2);
        UnionMultiplicityReport r = union_multiplicity_check(a, b);
        g.rc = run.finish(to_json(r), r.preserved, r.preserved ? "preserved" : "increased");
    });
}

void add_code(CLI::App& app, Globals& g) {
    auto* code = app.add_subcommand("code", "Coding triples and graph encodings");
    code->require_subcommand(1);

    struct VerifyOpts {
        std::string structure, a, b, c, formula, params;
        std::vector<std::string> obj{"x", "y", "z"};
    };
    auto v = std::make_shared<VerifyOpts>();
    auto* verify = leaf(code, "verify", "Check that a formula defines a bijection A x B -> C");
    verify->add_option("--structure", v->structure)->required();
    verify->add_option("--A", v->a, "unary relation name or element list")->required();
    verify->add_option("--B", v->b)->required();
    verify->add_option("--C", v->c)->required();
    verify->add_option("--formula", v->formula)->required();
    verify->add_option("--obj", v->obj, "the three object variables")->delimiter(',');
    verify->add_option("--params", v->params, "parameter values, z=3,w=4");
    verify->callback([&g, v] {
        Run run = make_run(g);
        FiniteStructure s = run.structure(v->structure);
        Assignment pa = parse_assignment(v->params);
        std::vector<std::string> pnames;
        Tuple pvals;
        for (const auto& [k, e] : pa) {
            pnames.push_back(k);
            pvals.push_back(e);
        }
        CodingTriple t{subset_arg(s, "A", v->a), subset_arg(s, "B", v->b), subset_arg(s, "C", v->c),
                       PartitionedFormula(run.formula(v->formula), v->obj, pnames), pvals};
        BijectionCheck r = verify_coding(s, t);
        Json fn = Json::array();
        for (const auto& [p, c] : r.function) fn.push_back({p.first, p.second, c});
        Json payload = {{"triple", to_json(t)}, {"ok", r.ok}, {"diagnosis", r.diagnosis}, {"function", fn}};
        g.rc = run.finish(payload, r.ok, r.ok ? "bijection" : r.diagnosis);
    });

    struct EncodeOpts {
        std::string structure, triple, graph;
    };
    auto e = std::make_shared<EncodeOpts>();
    auto* enc = leaf(code, "encode-graph", "Define a graph on A with two extra predicates");
    enc->add_option("--structure", e->structure)->required();
    enc->add_option("--triple", e->triple)->required();
    enc->add_option("--graph", e->graph)->required();
    enc->callback([&g, e] {
        Run run = make_run(g);
        FiniteStructure s = run.structure(e->structure);
        CodingTriple t = coding_triple_from_json(run.json_file(e->triple));
        Graph gr = graph_from_json(run.json_file(e->graph));
        GraphEncoding encoding = encode_graph(s, t, gr);
        auto defined = defined_edges(encoding, t);
        std::vector<ElementPair> want;
        for (const auto& [a, b] : gr.edges) {
            want.emplace_back(a, b);
            want.emplace_back(b, a);
        }
        std::sort(want.begin(), want.end());
        bool ok = defined == want;
        run.artifact("expanded.json", to_canonical_json(encoding.expanded));
        run.artifact("edge.formula", encoding.edge_formula.to_string() + "\n");
        Json payload = to_json(encoding);
        payload["defined_edges"] = pairs_json(defined);
        g.rc = run.finish(payload, ok, ok ? "defines the graph" : "defined relation differs");
    });

    auto sizes = std::make_shared<std::pair<std::size_t, std::size_t>>(3, 3);
    auto* embed = leaf(code, "embed-equiv", "Interpret an equivalence relation in a linear order");
    embed->add_option("--classes", sizes->first)->required();
    embed->add_option("--size", sizes->second)->required();
    embed->callback([&g, sizes] {
        Run run = make_run(g);
        EquivEmbedding emb = embed_equiv_in_order(sizes->first, sizes->second);
        Verdict v = verify_equiv_embedding(emb);
        Json iso = Json::array();
        for (const auto& [p, e] : emb.isomorphism) iso.push_back({p, e});
        run.artifact("order.json", to_canonical_json(emb.order));
        Json payload = {{"classes", emb.classes}, {"class_size", emb.class_size}, {"formula", emb.formula.to_string()},
                        {"vars", emb.vars}, {"isomorphism", iso}, {"check", verdict_json(v)}};
        g.rc = run.finish(payload, v.ok, v.ok ? "isomorphic" : v.reason);
    });
}

struct ConfigInput {
    PartitionedFormula phi;
    ConfigKind kind;
    std::optional<ConfigFamily> family;
    std::optional<std::size_t> reserve;
};

ConfigInput read_config(Run& run, const std::string& path) {
    Json j = run.json_file(path);
    ConfigInput c{partitioned_formula_from_json(j), ConfigKind::Stable, std::nullopt, std::nullopt};
    if (j.contains("kind")) c.kind = config_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("family")) c.family = config_family_from_json(j.at("family"));
    if (j.contains("exceptional_reserve")) c.reserve = j.at("exceptional_reserve").get<std::size_t>();
    return c;
}

// `original` is the universe size before padding; padded elements join the
// exceptional set of a family read from a file.
ConfigFamily family_for(const FiniteStructure& s, std::size_t original, const ConfigInput& c, std::size_t level,
                        std::size_t reserve, std::uint64_t budget, const char* side) {
    if (c.family) {
        ConfigFamily f = *c.family;
        for (std::size_t e = original; e < s.universe_size(); ++e) f.exceptional.push_back(static_cast<Element>(e));
        if (Verdict v = certify_config_family(s, c.phi, f); !v)
            throw Error(std::string(side) + " configuration family: " + v.reason);
        return f;
    }
    ConfigOutcome out = find_config_family(s, c.phi, {c.kind, {level}, budget, c.reserve.value_or(reserve)});
    if (!out.family)
        throw Error(std::string("no ") + std::string(to_string(c.kind)) + " configuration at level " +
                    std::to_string(level) + " in the " + side + " structure" +
                    (out.exhaustive ? " (exhaustive)" : " (budget)"));
    return *out.family;
}

int overlay_report(Run& run, const OverlayPlan& plan, const Verdict& sigma_ok, const ThetaReport& theta) {
    run.artifact("sigma.json", dump(to_json(plan.sigma)));
    run.artifact("combined.json", to_canonical_json(plan.combined));
    run.artifact("theta.formula", theta.theta.to_string() + "\n");
    run.artifact("plan.json", dump(to_json(plan)));
    Json payload = {{"sigma", to_json(plan.sigma)}, {"sigma_check", verdict_json(sigma_ok)}, {"theta", to_json(theta)}};
    bool ok = sigma_ok.ok && theta.verdict;
    std::string status = !sigma_ok.ok ? "sigma: " + sigma_ok.reason : theta.verdict ? "theta verified" : theta.diagnosis;
    return run.finish(payload, ok, status);
}

void add_overlay(CLI::App& app, Globals& g) {
    auto* overlay = app.add_subcommand("overlay", "Combine two structures through a permutation");
    overlay->require_subcommand(1);
    struct Opts {
        std::string left, left_config, right, right_config, relation, family, plan;
        std::size_t level = 0;
        std::optional<std::size_t> split;
    };

    auto o1 = std::make_shared<Opts>();
    auto* p1 = leaf(overlay, "prop1", "Overlay two configuration families");
    p1->add_option("--left-structure", o1->left)->required();
    p1->add_option("--left-config", o1->left_config)->required();
    p1->add_option("--right-structure", o1->right)->required();
    p1->add_option("--right-config", o1->right_config)->required();
    p1->add_option("--level", o1->level)->required();
    p1->callback([&g, o1] {
        Run run = make_run(g);
        FiniteStructure left = run.structure(o1->left);
        ConfigInput lc = read_config(run, o1->left_config);
        FiniteStructure right = run.structure(o1->right);
        ConfigInput rc = read_config(run, o1->right_config);
        const std::size_t left_size = left.universe_size(), right_size = right.universe_size();
        std::size_t n = std::max(left_size, right_size);
        left = pad_universe(left, n);
        right = pad_universe(right, n);
        std::uint64_t budget = budget_of(g, false);
        ConfigFamily lf = family_for(left, left_size, lc, o1->level, o1->level, budget, "left");
        ConfigFamily rf = family_for(right, right_size, rc, o1->level, 0, budget, "right");
        OverlayPlan plan = plan_prop1(left, lc.phi, lf, right, rc.phi, rf);
        Verdict sv = check_sigma_prop1(plan.left_family, *plan.right_family, plan.sigma);
        g.rc = overlay_report(run, plan, sv, run_overlay(plan, o1->level));
    });

    auto o2 = std::make_shared<Opts>();
    auto* p2 = leaf(overlay, "prop2", "Overlay a configuration family with a disjoint family");
    p2->add_option("--left-structure", o2->left)->required();
    p2->add_option("--left-config", o2->left_config)->required();
    p2->add_option("--right-structure", o2->right)->required();
    p2->add_option("--relation", o2->relation)->required();
    p2->add_option("--level", o2->level)->required();
    p2->add_option("--split", o2->split);
    p2->add_option("--family", o2->family, "disjoint family file; extracted when omitted");
    p2->callback([&g, o2] {
        Run run = make_run(g);
        FiniteStructure left = run.structure(o2->left);
        ConfigInput lc = read_config(run, o2->left_config);
        FiniteStructure right = run.structure(o2->right);
        const std::size_t left_size = left.universe_size();
        std::size_t n = std::max(left_size, right.universe_size());
        left = pad_universe(left, n);
        right = pad_universe(right, n);
        ConfigFamily lf = family_for(left, left_size, lc, o2->level, 0, budget_of(g, false), "left");
        const Relation& y = right.relation(o2->relation);
        DisjointFamily fam = o2->family.empty() ? extract_disjoint_family(y, true)
                                                : disjoint_family_from_json(run.json_file(o2->family));
        OverlayPlan plan = plan_prop2(left, lc.phi, lf, right, o2->relation, fam);
        Verdict sv = check_sigma_prop2(plan.left_family, *plan.disjoint, plan.sigma);
        g.rc = overlay_report(run, plan, sv, run_overlay(plan, o2->level, o2->split));
    });

    auto o3 = std::make_shared<Opts>();
    auto* rt = leaf(overlay, "roundtrip", "Apply sigma^-1 to a plan's combined structure");
    rt->add_option("--plan", o3->plan)->required();
    rt->callback([&g, o3] {
        Run run = make_run(g);
        OverlayPlan plan = overlay_plan_from_json(run.json_file(o3->plan));
        RoundTrip r = roundtrip_inverse(plan);
        run.artifact("restored.json", to_canonical_json(r.restored));
        g.rc = run.finish(verdict_json(r.verdict), r.verdict.ok, r.verdict.ok ? "restored" : r.verdict.reason);
    });
}

Json t54_payload(Run& run, const T54Result& r) {
    Json payload = {{"level", r.level}, {"found", r.found}, {"diagnosis", r.diagnosis}};
    if (!r.plan) return payload;
    payload["families"] = verdict_json(r.families);
    payload["sigma_check"] = verdict_json(r.sigma);
    payload["sigma"] = to_json(r.plan->sigma);
    if (r.theta) {
        payload["theta"] = to_json(*r.theta);
        run.artifact("theta.formula", r.theta->theta.to_string() + "\n");
    }
    if (r.roundtrip) payload["roundtrip"] = verdict_json(r.roundtrip->verdict);
    run.artifact("combined.json", to_canonical_json(r.plan->combined));
    run.artifact("plan.json", dump(to_json(*r.plan)));
    return payload;
}

void add_pipeline(CLI::App& app, Globals& g) {
    auto* pipeline = app.add_subcommand("pipeline", "End-to-end constructions from generated operands");
    pipeline->require_subcommand(1);

    auto t321 = std::make_shared<std::pair<std::string, std::optional<std::size_t>>>();
    auto* a = leaf(pipeline, "t321", "Encode a graph with a fresh coding triple and check it");
    a->add_option("--graph", t321->first)->required();
    a->add_option("--b-size", t321->second, "size of B, at least C(|A|,2)");
    a->callback([&g, t321] {
        Run run = make_run(g);
        T321Result r = pipeline_t321(graph_from_json(run.json_file(t321->first)), t321->second);
        Json vmap = Json::array();
        for (const auto& [v, e] : r.vertex_map) vmap.push_back({v, e});
        Json counts = Json::array();
        for (const auto& [p, c] : r.witness_counts) counts.push_back({{"pair", {p.first, p.second}}, {"count", c}});
        run.artifact("expanded.json", to_canonical_json(r.encoding.expanded));
        run.artifact("edge.formula", r.encoding.edge_formula.to_string() + "\n");
        Json payload = {{"graph", to_json(r.graph)},
                        {"vertex_map", vmap},
                        {"triple", to_json(r.instance.triple)},
                        {"encoding", to_json(r.encoding)},
                        {"defined_edges", pairs_json(r.defined)},
                        {"witness_counts", counts},
                        {"diagnosis", r.diagnosis}};
        g.rc = run.finish(payload, r.verdict, r.verdict ? "verified" : r.diagnosis);
    });

    for (int which : {1, 2}) {
        auto o = std::make_shared<T54Options>();
        auto* sub = leaf(pipeline, which == 1 ? "t54-1" : "t54-2",
                         which == 1 ? "Equivalence relation overlaid with a linear order"
                                    : "Equivalence relation overlaid with a matching");
        sub->add_option("--level", o->level);
        sub->add_option("--classes", o->classes);
        sub->add_option("--class-size", o->class_size);
        if (which == 1) sub->add_option("--order-size", o->order_size);
        else {
            sub->add_option("--pairs", o->pairs);
            sub->add_option("--split", o->split);
        }
        sub->callback([&g, o, which] {
            Run run = make_run(g);
            T54Options opts = *o;
            opts.budget = budget_of(g, false);
            T54Result r = which == 1 ? pipeline_t54_1(opts) : pipeline_t54_2(opts);
            Json payload = t54_payload(run, r);
            g.rc = run.finish(payload, r.verdict, r.verdict ? "verified" : r.diagnosis);
        });
    }
}

void add_gen(CLI::App& app, Globals& g) {
    auto* gen = app.add_subcommand("gen", "Write a generated structure");
    gen->require_subcommand(1);
    struct Opts {
        std::size_t size = 0, classes = 0, atoms = 0, pairs = 0, universe = 0;
        double p = 0.5;
    };
    auto o = std::make_shared<Opts>();
    auto emit = [&g](const FiniteStructure& s) { g.rc = make_run(g).emit_structure(s); };

    auto* order = leaf(gen, "order", "Linear order LE on n elements");
    order->add_option("--size", o->size)->required();
    order->callback([o, emit] { emit(make_linear_order(o->size)); });

    auto* equiv = leaf(gen, "equiv", "Equivalence relation E with equal classes");
    equiv->add_option("--classes", o->classes)->required();
    equiv->add_option("--size", o->size)->required();
    equiv->callback([o, emit] { emit(make_equiv(o->classes, o->size)); });

    auto* rg = leaf(gen, "rg", "Random graph G(n, p) from --seed");
    rg->add_option("--size", o->size)->required();
    rg->add_option("--p", o->p)->check(CLI::Range(0.0, 1.0));
    rg->callback([&g, o, emit] { emit(make_random_graph(o->size, o->p, g.seed)); });

    auto* fcp = leaf(gen, "fcp", "Nested equivalence with a marking predicate");
    fcp->add_option("--classes", o->classes)->required();
    fcp->callback([o, emit] { emit(make_fcp_expansion(o->classes)); });

    auto* powerset = leaf(gen, "powerset", "Atoms and subsets with membership");
    powerset->add_option("--atoms", o->atoms)->required();
    powerset->callback([o, emit] { emit(make_powerset(o->atoms)); });

    auto* half = leaf(gen, "halfgraph", "Half graph on 2n elements");
    half->add_option("--size", o->size)->required();
    half->callback([o, emit] { emit(make_half_graph(o->size)); });

    auto* matching = leaf(gen, "matching", "Perfect matching on the first 2p elements");
    matching->add_option("--pairs", o->pairs)->required();
    matching->add_option("--universe", o->universe)->required();
    matching->callback([o, emit] { emit(make_matching(o->pairs, o->universe)); });
}

} // namespace

int main(int argc, char** argv) {
    Globals g;
    g.argv.assign(argv + 1, argv + argc);

    CLI::App app{"Finite structure workbench"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", g.seed, "seed for random generators");
    app.add_option("--budget", g.budget, "work budget for searches");
    app.add_option("--out", g.out, "directory for the report and artifacts");
    app.add_option("--format", g.format)->check(CLI::IsMember({"json", "text"}));

    add_eval(app, g);
    add_solve(app, g);
    add_detect(app, g);
    add_ma(app, g);
    add_code(app, g);
    add_overlay(app, g);
    add_pipeline(app, g);
    add_gen(app, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "mwb: " << e.what() << "\n";
        return 2;
    }
    return g.rc;
}
