#ifndef PNET_FIXTURES_HPP
#define PNET_FIXTURES_HPP

#include "pnet/io.hpp"

namespace pnet {

struct FixtureEntry {
    std::string name;
    std::string kind; // poset | bundle | poset-bundle | action
    std::string description;
};

const std::vector<FixtureEntry>& fixture_list();

Poset fixture_chain3();
Poset fixture_pseudocircle();
Poset fixture_product(); // pseudocircle x chain3
Poset fixture_lambda();  // l, r <= t

/// Rank-1 bundle over the pseudocircle: every map 1 except J_(b,y) = chi.
NetBundle fixture_line(Cplx chi);

Poset fixture_poset(const std::string& name);
NetBundle fixture_bundle(const std::string& name);
PosetNetBundle fixture_poset_bundle(const std::string& name);
/// Cyclic group action on a fixture bundle: (bundle, generator, order).
std::tuple<NetBundle, std::map<int, Mat>, int> fixture_action(const std::string& name);

/// JSON form of any registered fixture, as `fixtures emit` prints it.
Json fixture_emit(const std::string& name);

} // namespace pnet

#endif
