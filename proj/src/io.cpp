#include "pnet/io.hpp"

#include <fstream>
#include <sstream>

namespace pnet {

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

// Keys name a pair of elements as "<sub>|<sup>". Element names may contain
// '|' themselves, so try every split and keep the first that resolves.
std::pair<int, int> split_pair(const Poset& p, const std::string& key) {
    for (size_t i = 0; i + 1 < key.size(); ++i) {
        if (key[i] != '|') continue;
        std::string a = key.substr(0, i), b = key.substr(i + 1);
        if (p.contains(a) && p.contains(b)) return {p.index(a), p.index(b)};
    }
    bad("key \"" + key + "\" does not name a pair of poset elements");
}

std::string pair_key(const Poset& p, int sub, int sup) {
    return p.name(sub) + "|" + p.name(sup);
}

} // namespace

Json poset_to_json(const Poset& p) {
    Json j;
    j["elements"] = p.elements();
    Json cov = Json::array();
    for (auto [a, b] : p.cover_pairs())
        cov.push_back(Json::array({p.name(a), p.name(b)}));
    j["covers"] = cov;
    return j;
}

Poset poset_from_json(const Json& j) {
    const Json& els = field(j, "elements");
    const Json& cov = field(j, "covers");
    if (!els.is_array() || !cov.is_array()) bad("elements and covers must be arrays");
    std::vector<std::string> elements;
    for (const auto& e : els) {
        if (!e.is_string()) bad("element names must be strings");
        elements.push_back(e.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> covers;
    for (const auto& c : cov) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
            bad("each cover must be a pair of element names");
        covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
    try {
        return Poset(std::move(elements), covers);
    } catch (const Error& e) {
        throw ParseError(std::string("bad poset: ") + e.what());
    }
}

Json complex_to_json(const Cplx& z) { return Json::array({z.real(), z.imag()}); }

Cplx complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad("complex entries must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) bad("matrix must be a nonempty row list");
    size_t nc = 0;
    for (const auto& row : j) {
        if (!row.is_array() || row.empty()) bad("matrix rows must be nonempty arrays");
        if (nc == 0)
            nc = row.size();
        else if (row.size() != nc)
            bad("matrix rows have unequal lengths");
    }
    Mat m(static_cast<int>(j.size()), static_cast<int>(nc));
    for (size_t i = 0; i < j.size(); ++i)
        for (size_t k = 0; k < nc; ++k)
            m(static_cast<int>(i), static_cast<int>(k)) = complex_from_json(j[i][k]);
    return m;
}

Json bundle_to_json(const NetBundle& e) {
    Json j;
    j["base"] = poset_to_json(e.base());
    j["rank"] = e.rank();
    Json maps = Json::object();
    for (const auto& [key, m] : e.cover_maps())
        maps[pair_key(e.base(), key.first, key.second)] = matrix_to_json(m);
    j["maps"] = maps;
    return j;
}

BundleData bundle_data_from_json(const Json& j) {
    BundleData d;
    d.base = poset_from_json(field(j, "base"));
    const Json& rank = field(j, "rank");
    if (rank.is_number_integer()) {
        int r = rank.get<int>();
        for (int a = 0; a < d.base.size(); ++a) d.ranks[a] = r;
    } else if (rank.is_object()) {
        for (const auto& [name, v] : rank.items()) {
            if (!d.base.contains(name)) bad("rank given for unknown element " + name);
            if (!v.is_number_integer()) bad("ranks must be integers");
            d.ranks[d.base.index(name)] = v.get<int>();
        }
        if (static_cast<int>(d.ranks.size()) != d.base.size())
            bad("rank map must cover every element");
    } else {
        bad("rank must be an integer or an element map");
    }
    const Json& maps = field(j, "maps");
    if (!maps.is_object()) bad("maps must be an object");
    for (const auto& [key, m] : maps.items())
        d.maps[split_pair(d.base, key)] = matrix_from_json(m);
    return d;
}

NetBundle bundle_from_json(const Json& j, double tol) {
    BundleData d = bundle_data_from_json(j);
    int r = -1;
    for (const auto& [a, ra] : d.ranks) {
        if (r < 0) r = ra;
        if (ra != r) bad("net bundle requires a constant rank");
    }
    return NetBundle(std::move(d.base), r, std::move(d.maps), tol);
}

Json poset_bundle_to_json(const PosetNetBundle& x) {
    Json j;
    j["base"] = poset_to_json(x.base());
    j["fibre"] = poset_to_json(x.fibre());
    Json tr = Json::object();
    for (const auto& [key, perm] : x.cover_transitions()) {
        Json one = Json::object();
        for (int f = 0; f < x.fibre().size(); ++f)
            one[x.fibre().name(f)] = x.fibre().name(perm[f]);
        tr[pair_key(x.base(), key.first, key.second)] = std::move(one);
    }
    j["transitions"] = tr;
    return j;
}

PosetNetBundle poset_bundle_from_json(const Json& j) {
    Poset base = poset_from_json(field(j, "base"));
    Poset fibre = poset_from_json(field(j, "fibre"));
    const Json& tr = field(j, "transitions");
    if (!tr.is_object()) bad("transitions must be an object");
    std::map<std::pair<int, int>, std::vector<int>> transitions;
    for (const auto& [key, one] : tr.items()) {
        if (!one.is_object()) bad("each transition must be an element map");
        std::vector<int> perm(fibre.size(), -1);
        for (const auto& [from, to] : one.items()) {
            if (!fibre.contains(from) || !to.is_string() ||
                !fibre.contains(to.get<std::string>()))
                bad("transition entries must map fibre elements to fibre elements");
            perm[fibre.index(from)] = fibre.index(to.get<std::string>());
        }
        for (int v : perm)
            if (v < 0) bad("transition under key \"" + key + "\" is not total");
        transitions[split_pair(base, key)] = std::move(perm);
    }
    try {
        return PosetNetBundle(std::move(base), std::move(fibre), std::move(transitions));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("bad poset net bundle: ") + e.what());
    }
}

Json group_to_json(const FGAbelianGroup& g) {
    Json j;
    j["free_rank"] = g.free_rank;
    Json tor = Json::array();
    for (const Int& d : g.torsion) tor.push_back(d.convert_to<long long>());
    j["torsion"] = tor;
    return j;
}

} // namespace pnet
