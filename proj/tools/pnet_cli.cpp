#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "pnet/chern.hpp"
#include "pnet/fixtures.hpp"

using namespace pnet;

namespace {

struct Opts {
    double tolerance = kTolConstruct;
    long budget = 20000;
    unsigned seed = 7;
    std::string output;
};

int emit(const Json& j, const Opts& o, int code) {
    std::string text = j.dump(2);
    if (!o.output.empty()) {
        std::ofstream out(o.output);
        if (!out) {
            std::cerr << "cannot write " << o.output << "\n";
            return 1;
        }
        out << text << "\n";
    } else {
        std::cout << text << "\n";
    }
    return code;
}

Json load(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '['))
        return parse_json_text(arg);
    return load_json_file(arg);
}

Path loop_from_json(const Poset& p, const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("a loop is a nonempty step list");
    Path out;
    for (const auto& s : j) {
        if (!s.is_array() || s.size() != 3 || !s[0].is_string())
            throw ParseError("each step is [support, target, source]");
        out.steps.push_back({p.index(s[0].get<std::string>()),
                             p.index(s[1].get<std::string>()),
                             p.index(s[2].get<std::string>())});
    }
    validate_path(p, out);
    if (!out.is_loop()) throw NotALoop("the step list does not close up");
    return out;
}

FGAbelianGroup group_from_text(const std::string& text) {
    // "Z", "Z/6", "Z+Z/2", ...
    IntVec orders;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find('+', pos);
        std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok == "Z")
            orders.push_back(0);
        else if (tok.rfind("Z/", 0) == 0)
            orders.push_back(Int(tok.substr(2)));
        else
            throw ParseError("cannot read coefficient group token \"" + tok + "\"");
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (orders.empty()) throw ParseError("empty coefficient group");
    return from_cyclic_orders(orders);
}

/// Loops feeding the per-generator reports: one per surviving generator.
std::vector<std::pair<std::string, Path>> generator_loops(const Complex& k,
                                                          const Pi1Presentation& pi) {
    std::vector<std::pair<std::string, Path>> out;
    for (size_t g = 0; g < pi.generator_edge.size(); ++g) {
        if (pi.letter_gauge[pi.generator_edge[g]] == 0) continue;
        out.emplace_back(pi.pres.generators[g],
                         generator_loop(pi, k, static_cast<int>(g)));
    }
    return out;
}

int cmd_poset_validate(const std::string& file, const Opts& o) {
    Json rep;
    try {
        Poset p = poset_from_json(load(file));
        rep["valid"] = true;
        rep["elements"] = p.size();
        rep["covers"] = p.cover_pairs().size();
        rep["pathwise_connected"] = is_pathwise_connected(p);
        return emit(rep, o, 0);
    } catch (const ParseError& e) {
        rep["valid"] = false;
        rep["error"] = e.what();
        return emit(rep, o, 2);
    }
}

int cmd_poset_h1(const std::string& file, const Opts& o) {
    Complex k(poset_from_json(load(file)));
    return emit(group_to_json(h1_integral(k).group), o, 0);
}

int cmd_poset_pi1(const std::string& file, const Opts& o) {
    Complex k(poset_from_json(load(file)));
    Pi1Presentation pi = pi1_presentation(k, 0);
    Json rep;
    rep["basepoint"] = k.poset().name(pi.basepoint);
    rep["generators"] = pi.pres.generators;
    rep["relators"] = pi.pres.relators;
    rep["abelianization"] = group_to_json(abelianize(pi.pres));
    return emit(rep, o, 0);
}

int cmd_poset_cohomology(const std::string& file, const std::string& coeff,
                         const Opts& o) {
    Complex k(poset_from_json(load(file)));
    H1Data h1 = h1_integral(k);
    FGAbelianGroup a = group_from_text(coeff);
    Json rep;
    rep["coefficients"] = a.to_string();
    rep["group"] = group_to_json(h1_cohomology(k, h1, a));
    if (a.free_rank == 0 && a.torsion.size() == 1)
        rep["direct_check"] =
            h1_mod_direct(k, h1, a.torsion[0]) == h1_cohomology(k, h1, a);
    return emit(rep, o, 0);
}

int cmd_hurewicz_roundtrip(const std::string& file, const Opts& o) {
    Complex k(poset_from_json(load(file)));
    H1Data h1 = h1_integral(k);
    Pi1Presentation pi = pi1_presentation(k, 0);
    bool groups_match = abelianize(pi.pres) == h1.group;
    bool roundtrip = true;
    for (const auto& cyc : h1.generator_cycles()) {
        IntVec want = h1.project(k, cyc);
        IntVec got = a_zero(h1.group);
        for (const auto& loop : cycle_to_loops(k, cyc, 0))
            got = a_add(h1.group, got, hurewicz_T(k, h1, loop));
        if (got != want) roundtrip = false;
    }
    Json rep;
    rep["h1"] = group_to_json(h1.group);
    rep["pi1_abelianized"] = group_to_json(abelianize(pi.pres));
    rep["groups_match"] = groups_match;
    rep["generator_roundtrip"] = roundtrip;
    bool ok = groups_match && roundtrip;
    return emit(rep, o, ok ? 0 : 2);
}

int cmd_bundle_validate(const std::string& file, const Opts& o) {
    BundleData d = bundle_data_from_json(load(file));
    ValidationReport r = validate_bundle(d, o.tolerance);
    Json rep;
    rep["is_quasinet"] = r.is_quasinet;
    rep["is_net"] = r.is_net;
    rep["worst_unitarity"] = r.worst_unitarity;
    rep["worst_cocycle"] = r.worst_cocycle;
    if (!r.witness.empty()) rep["witness"] = r.witness;
    Json ranks = Json::object();
    for (const auto& [a, ra] : r.rank_function) ranks[d.base.name(a)] = ra;
    rep["rank_function"] = ranks;
    return emit(rep, o, r.is_quasinet ? 0 : 2);
}

int cmd_bundle_c1(const std::string& file, const Opts& o) {
    NetBundle e = bundle_from_json(load(file), o.tolerance);
    Complex k(e.base());
    HolonomyRep rep_h = holonomy_rep(e, k, 0);
    std::vector<Cplx> vals = c1(e, k, rep_h);
    Json rep = Json::array();
    for (size_t g = 0; g < vals.size(); ++g) {
        Json one;
        one["generator"] = rep_h.pi.pres.generators[g];
        one["c1"] = complex_to_json(vals[g]);
        rep.push_back(std::move(one));
    }
    return emit(Json{{"c1", rep}}, o, 0);
}

int cmd_bundle_chern(const std::string& file, const std::string& loop_arg,
                     const Opts& o) {
    NetBundle e = bundle_from_json(load(file), o.tolerance);
    Complex k(e.base());
    std::vector<std::pair<std::string, Path>> loops;
    if (!loop_arg.empty())
        loops.emplace_back("loop", loop_from_json(e.base(), load(loop_arg)));
    else
        loops = generator_loops(k, pi1_presentation(k, 0));
    Json rep = Json::array();
    for (const auto& [label, loop] : loops) {
        Json one;
        one["loop"] = label;
        one["c1"] = complex_to_json(c1_loop(e, loop));
        Json c = Json::array();
        for (int i = 0; i <= e.rank(); ++i)
            c.push_back(complex_to_json(chern_function(e, i, loop)));
        one["c"] = std::move(c);
        rep.push_back(std::move(one));
    }
    return emit(Json{{"chern", rep}}, o, 0);
}

int cmd_bundle_kclasses(const std::string& file, const Opts& o) {
    NetBundle e = bundle_from_json(load(file), o.tolerance);
    std::vector<VirtualBundle> ks = chern_k_classes(e);
    VirtualBundle zero;
    Json rep = Json::array();
    for (size_t i = 0; i < ks.size(); ++i) {
        Json one;
        one["i"] = i + 1;
        one["rank"] = vrank(ks[i]);
        one["is_zero"] = virtual_equal(ks[i], zero);
        rep.push_back(std::move(one));
    }
    return emit(Json{{"k_classes", rep}}, o, 0);
}

int cmd_bundle_classify(const std::string& file, const Opts& o) {
    NetBundle e = bundle_from_json(load(file), o.tolerance);
    Complex k(e.base());
    ClassifyResult r = classify_pi1_Z(e, k);
    Json rep;
    Json eig = Json::array(), zer = Json::array(), pol = Json::array();
    for (const auto& v : r.eigenvalues) eig.push_back(complex_to_json(v));
    for (const auto& v : r.zeros) zer.push_back(complex_to_json(v));
    for (const auto& v : r.poly) pol.push_back(complex_to_json(v));
    rep["eigenvalues"] = eig;
    rep["zeros"] = zer;
    rep["poly"] = pol;
    return emit(rep, o, 0);
}

int cmd_bundle_decompose(const std::string& file, const Opts& o) {
    NetBundle e = bundle_from_json(load(file), o.tolerance);
    Json rep = Json::array();
    for (const auto& [summand, mult] : decompose(e, o.seed)) {
        Json one;
        one["multiplicity"] = mult;
        one["rank"] = summand.rank();
        one["bundle"] = bundle_to_json(summand);
        rep.push_back(std::move(one));
    }
    return emit(Json{{"summands", rep}}, o, 0);
}

int cmd_bundle_iso(const std::string& f1, const std::string& f2, const Opts& o) {
    NetBundle a = bundle_from_json(load(f1), o.tolerance);
    NetBundle b = bundle_from_json(load(f2), o.tolerance);
    auto [iso, witness] = are_isomorphic(a, b, o.seed);
    Json rep;
    rep["isomorphic"] = iso;
    if (iso) rep["witness"] = matrix_to_json(witness);
    return emit(rep, o, 0);
}

int cmd_bundle_sections(const std::string& file, const Opts& o) {
    NetBundle e = bundle_from_json(load(file), o.tolerance);
    std::vector<Section> secs = global_sections(e);
    Json rep;
    rep["dimension"] = secs.size();
    Json list = Json::array();
    for (const auto& s : secs) {
        Json one = Json::object();
        for (const auto& [a, v] : s.values) {
            Json col = Json::array();
            for (int i = 0; i < v.size(); ++i) col.push_back(complex_to_json(v(i)));
            one[e.base().name(a)] = std::move(col);
        }
        list.push_back(std::move(one));
    }
    rep["sections"] = list;
    return emit(rep, o, 0);
}

int cmd_topology_opens(const std::string& file, const Opts& o) {
    Poset p = poset_from_json(load(file));
    AlexandroffSpace sp = alexandroff(p);
    Json rep;
    rep["count"] = sp.opens.size();
    Json opens = Json::array();
    for (const auto& u : sp.opens) {
        Json one = Json::array();
        for (int a : u) one.push_back(p.name(a));
        opens.push_back(std::move(one));
    }
    rep["opens"] = opens;
    return emit(rep, o, 0);
}

int cmd_topology_transitions(const std::string& file, const Opts& o) {
    NetBundle e = bundle_from_json(load(file), o.tolerance);
    TransitionReport r = transition_functions(e, kTolDerived);
    Json rep;
    rep["cocycle_ok"] = r.cocycle_ok;
    rep["worst_cocycle"] = r.worst_cocycle;
    rep["locally_constant"] = r.locally_constant;
    rep["worst_constancy"] = r.worst_constancy;
    if (!r.witness.empty()) rep["witness"] = r.witness;
    bool ok = r.cocycle_ok && r.locally_constant;
    return emit(rep, o, ok ? 0 : 2);
}

int cmd_topology_cylinders(const std::string& file, const Opts& o) {
    PosetNetBundle x = poset_bundle_from_json(load(file));
    CylinderReport r = cylinders(x);
    Json rep;
    rep["count"] = r.anchors.size();
    rep["injective"] = r.injective;
    rep["order_isomorphism"] = r.order_isomorphism;
    if (!r.witness.empty()) rep["witness"] = r.witness;
    bool ok = r.injective && r.order_isomorphism;
    return emit(rep, o, ok ? 0 : 2);
}

int cmd_topology_exactness(const std::string& file, const Opts& o) {
    PosetNetBundle x = poset_bundle_from_json(load(file));
    ExactnessReport r = exactness_check(x, o.budget);
    Json rep;
    rep["eta_surjective"] = r.eta_surjective;
    rep["fibre_kills"] = r.fibre_kills;
    rep["abelian_exact"] = r.abelian_exact;
    rep["fibre_simply_connected"] = r.fibre_simply_connected;
    rep["base_iso"] = r.base_iso;
    rep["detail"] = r.detail;
    bool ok = r.eta_surjective && r.fibre_kills && r.abelian_exact;
    return emit(rep, o, ok ? 0 : 2);
}

int cmd_fixtures_list(const Opts& o) {
    Json rep = Json::array();
    for (const auto& e : fixture_list()) {
        Json one;
        one["name"] = e.name;
        one["kind"] = e.kind;
        one["description"] = e.description;
        rep.push_back(std::move(one));
    }
    return emit(rep, o, 0);
}

int cmd_fixtures_emit(const std::string& name, const Opts& o) {
    return emit(fixture_emit(name), o, 0);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"poset and net-bundle invariant toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may trail the subcommand
    Opts opts;
    app.add_option("--tolerance", opts.tolerance, "numerical tolerance");
    app.add_option("--budget", opts.budget, "search budget for homotopy checks");
    app.add_option("--seed", opts.seed, "seed for randomized algorithms");
    app.add_option("--output", opts.output, "write the report to a file");

    std::function<int()> run;
    std::string file, file2, loop_arg, coeff = "Z", name;

    auto* poset = app.add_subcommand("poset", "poset invariants");
    poset->require_subcommand(1);
    auto* pv = poset->add_subcommand("validate", "check a poset file");
    pv->add_option("file", file)->required();
    pv->callback([&] { run = [&] { return cmd_poset_validate(file, opts); }; });
    auto* ph = poset->add_subcommand("h1", "integral first homology");
    ph->add_option("file", file)->required();
    ph->callback([&] { run = [&] { return cmd_poset_h1(file, opts); }; });
    auto* pp = poset->add_subcommand("pi1", "fundamental group presentation");
    pp->add_option("file", file)->required();
    pp->callback([&] { run = [&] { return cmd_poset_pi1(file, opts); }; });
    auto* pc = poset->add_subcommand("cohomology", "first cohomology");
    pc->add_option("file", file)->required();
    pc->add_option("--coefficients", coeff, "coefficient group, e.g. Z, Z/2, Z+Z");
    pc->callback([&] { run = [&] { return cmd_poset_cohomology(file, coeff, opts); }; });

    auto* hur = app.add_subcommand("hurewicz", "homology vs homotopy");
    hur->require_subcommand(1);
    auto* hr = hur->add_subcommand("roundtrip", "compare H1 with abelianized pi1");
    hr->add_option("file", file)->required();
    hr->callback([&] { run = [&] { return cmd_hurewicz_roundtrip(file, opts); }; });

    auto* bundle = app.add_subcommand("bundle", "net bundle invariants");
    bundle->require_subcommand(1);
    auto* bv = bundle->add_subcommand("validate", "check a bundle file");
    bv->add_option("file", file)->required();
    bv->callback([&] { run = [&] { return cmd_bundle_validate(file, opts); }; });
    auto* bc1 = bundle->add_subcommand("c1", "first Chern class per generator");
    bc1->add_option("file", file)->required();
    bc1->callback([&] { run = [&] { return cmd_bundle_c1(file, opts); }; });
    auto* bch = bundle->add_subcommand("chern", "Chern functions on loops");
    bch->add_option("file", file)->required();
    bch->add_option("--loop", loop_arg, "loop as JSON steps [support,target,source]");
    bch->callback([&] { run = [&] { return cmd_bundle_chern(file, loop_arg, opts); }; });
    auto* bk = bundle->add_subcommand("kclasses", "Chern K-classes");
    bk->add_option("file", file)->required();
    bk->callback([&] { run = [&] { return cmd_bundle_kclasses(file, opts); }; });
    auto* bcl = bundle->add_subcommand("classify", "classification over pi1 = Z");
    bcl->add_option("file", file)->required();
    bcl->callback([&] { run = [&] { return cmd_bundle_classify(file, opts); }; });
    auto* bd = bundle->add_subcommand("decompose", "irreducible decomposition");
    bd->add_option("file", file)->required();
    bd->callback([&] { run = [&] { return cmd_bundle_decompose(file, opts); }; });
    auto* bi = bundle->add_subcommand("iso", "unitary isomorphism test");
    bi->add_option("file", file)->required();
    bi->add_option("file2", file2)->required();
    bi->callback([&] { run = [&] { return cmd_bundle_iso(file, file2, opts); }; });
    auto* bs = bundle->add_subcommand("sections", "global sections");
    bs->add_option("file", file)->required();
    bs->callback([&] { run = [&] { return cmd_bundle_sections(file, opts); }; });

    auto* topo = app.add_subcommand("topology", "realization checks");
    topo->require_subcommand(1);
    auto* to = topo->add_subcommand("opens", "Alexandroff open sets");
    to->add_option("file", file)->required();
    to->callback([&] { run = [&] { return cmd_topology_opens(file, opts); }; });
    auto* tt = topo->add_subcommand("transitions", "transition functions");
    tt->add_option("file", file)->required();
    tt->callback([&] { run = [&] { return cmd_topology_transitions(file, opts); }; });
    auto* tc = topo->add_subcommand("cylinders", "cylinder order isomorphism");
    tc->add_option("file", file)->required();
    tc->callback([&] { run = [&] { return cmd_topology_cylinders(file, opts); }; });
    auto* te = topo->add_subcommand("exactness", "fibre sequence checks");
    te->add_option("file", file)->required();
    te->callback([&] { run = [&] { return cmd_topology_exactness(file, opts); }; });

    auto* fix = app.add_subcommand("fixtures", "built-in examples");
    fix->require_subcommand(1);
    auto* fl = fix->add_subcommand("list", "list fixture names");
    fl->callback([&] { run = [&] { return cmd_fixtures_list(opts); }; });
    auto* fe = fix->add_subcommand("emit", "print a fixture as JSON");
    fe->add_option("name", name)->required();
    fe->callback([&] { run = [&] { return cmd_fixtures_emit(name, opts); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        return run ? run() : 1;
    } catch (const Error& e) {
        Json rep;
        rep["error"] = e.what();
        std::cout << rep.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json rep;
        rep["error"] = e.what();
        std::cout << rep.dump(2) << "\n";
        return 2;
    }
}
