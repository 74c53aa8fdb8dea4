#include "pnet/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace pnet {

namespace {

Mat one_by_one(Cplx v) {
    Mat m(1, 1);
    m(0, 0) = v;
    return m;
}

const Cplx kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

} // namespace

Poset fixture_chain3() {
    return Poset({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
}

Poset fixture_pseudocircle() {
    return Poset({"a", "b", "x", "y"},
                 {{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "y"}});
}

Poset fixture_product() {
    return product_poset(fixture_pseudocircle(), fixture_chain3());
}

Poset fixture_lambda() {
    return Poset({"l", "r", "t"}, {{"l", "t"}, {"r", "t"}});
}

NetBundle fixture_line(Cplx chi) {
    Poset p = fixture_pseudocircle();
    std::map<std::pair<int, int>, Mat> maps;
    for (auto pr : p.cover_pairs()) maps[pr] = one_by_one(1.0);
    maps[{p.index("b"), p.index("y")}] = one_by_one(chi);
    return NetBundle(std::move(p), 1, std::move(maps));
}

namespace {

/// Rank-2 bundle whose one cover map looks dense but is a conjugated
/// diagonal, so the holonomy is abelian.
NetBundle fixture_dense2() {
    Poset p = fixture_pseudocircle();
    Mat w(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    w << s, s, s, -s;
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = Cplx(0, 1);
    d(1, 1) = Cplx(-1, 0);
    std::map<std::pair<int, int>, Mat> maps;
    for (auto pr : p.cover_pairs()) maps[pr] = Mat::Identity(2, 2);
    maps[{p.index("b"), p.index("y")}] = w * d * w.adjoint();
    return NetBundle(std::move(p), 2, std::move(maps));
}

PosetNetBundle fixture_twist2() {
    Poset base = fixture_pseudocircle();
    Poset fibre({"p", "q"}, {});
    std::map<std::pair<int, int>, std::vector<int>> tr;
    for (auto pr : base.cover_pairs()) tr[pr] = {0, 1};
    tr[{base.index("b"), base.index("y")}] = {1, 0};
    return PosetNetBundle(std::move(base), std::move(fibre), std::move(tr));
}

PosetNetBundle fixture_twistlambda() {
    Poset base = fixture_pseudocircle();
    Poset fibre = fixture_lambda();
    std::map<std::pair<int, int>, std::vector<int>> tr;
    for (auto pr : base.cover_pairs()) tr[pr] = {0, 1, 2};
    tr[{base.index("b"), base.index("y")}] = {1, 0, 2}; // swap l and r, fix t
    return PosetNetBundle(std::move(base), std::move(fibre), std::move(tr));
}

PosetNetBundle fixture_trivchain() {
    Poset base = fixture_pseudocircle();
    Poset fibre = fixture_chain3();
    std::map<std::pair<int, int>, std::vector<int>> tr;
    for (auto pr : base.cover_pairs()) tr[pr] = {0, 1, 2};
    return PosetNetBundle(std::move(base), std::move(fibre), std::move(tr));
}

std::tuple<NetBundle, std::map<int, Mat>, int> fixture_swap_t2() {
    NetBundle t2 = trivial_bundle(fixture_pseudocircle(), 2);
    Mat swap = Mat::Zero(2, 2);
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    std::map<int, Mat> gen;
    for (int a = 0; a < t2.base().size(); ++a) gen[a] = swap;
    return {std::move(t2), std::move(gen), 2};
}

} // namespace

const std::vector<FixtureEntry>& fixture_list() {
    static const std::vector<FixtureEntry> entries = {
        {"chain3", "poset", "three-element chain 0 <= 1 <= 2"},
        {"pseudocircle", "poset", "four-element circle stand-in {a,b} below {x,y}"},
        {"product", "poset", "pseudocircle x chain3"},
        {"lambda", "poset", "two minimal points below one top"},
        {"t1", "bundle", "trivial rank-1 bundle over the pseudocircle"},
        {"t2", "bundle", "trivial rank-2 bundle over the pseudocircle"},
        {"t3", "bundle", "trivial rank-3 bundle over the pseudocircle"},
        {"l_i", "bundle", "line bundle with holonomy i"},
        {"l_minus1", "bundle", "line bundle with holonomy -1"},
        {"l_omega", "bundle", "line bundle with holonomy exp(2 pi i/3)"},
        {"dense2", "bundle", "dense-looking rank-2 bundle with abelian holonomy"},
        {"twist2", "poset-bundle", "two-point fibre with a swap twist (double cover)"},
        {"twistlambda", "poset-bundle", "lambda fibre with a swap twist"},
        {"trivchain", "poset-bundle", "chain3 fibre, identity transitions"},
        {"swap_t2", "action", "coordinate swap acting on the trivial rank-2 bundle"},
    };
    return entries;
}

Poset fixture_poset(const std::string& name) {
    if (name == "chain3") return fixture_chain3();
    if (name == "pseudocircle") return fixture_pseudocircle();
    if (name == "product") return fixture_product();
    if (name == "lambda") return fixture_lambda();
    throw UnknownElement("no poset fixture named " + name);
}

NetBundle fixture_bundle(const std::string& name) {
    if (name == "t1") return trivial_bundle(fixture_pseudocircle(), 1);
    if (name == "t2") return trivial_bundle(fixture_pseudocircle(), 2);
    if (name == "t3") return trivial_bundle(fixture_pseudocircle(), 3);
    if (name == "l_i") return fixture_line(Cplx(0, 1));
    if (name == "l_minus1") return fixture_line(Cplx(-1, 0));
    if (name == "l_omega") return fixture_line(kOmega);
    if (name == "dense2") return fixture_dense2();
    throw UnknownElement("no bundle fixture named " + name);
}

PosetNetBundle fixture_poset_bundle(const std::string& name) {
    if (name == "twist2") return fixture_twist2();
    if (name == "twistlambda") return fixture_twistlambda();
    if (name == "trivchain") return fixture_trivchain();
    throw UnknownElement("no poset-bundle fixture named " + name);
}

std::tuple<NetBundle, std::map<int, Mat>, int> fixture_action(const std::string& name) {
    if (name == "swap_t2") return fixture_swap_t2();
    throw UnknownElement("no action fixture named " + name);
}

Json fixture_emit(const std::string& name) {
    for (const auto& e : fixture_list()) {
        if (e.name != name) continue;
        if (e.kind == "poset") return poset_to_json(fixture_poset(name));
        if (e.kind == "bundle") return bundle_to_json(fixture_bundle(name));
        if (e.kind == "poset-bundle")
            return poset_bundle_to_json(fixture_poset_bundle(name));
        auto [bundle, gen, order] = fixture_action(name);
        Json j;
        j["bundle"] = bundle_to_json(bundle);
        Json g = Json::object();
        for (const auto& [a, m] : gen) g[bundle.base().name(a)] = matrix_to_json(m);
        j["generator"] = g;
        j["order"] = order;
        return j;
    }
    throw UnknownElement("no fixture named " + name);
}

} // namespace pnet
