#ifndef PNET_IO_HPP
#define PNET_IO_HPP

#include <string>

#include "json.hpp"
#include "pnet/netbundle.hpp"
#include "pnet/realization.hpp"

namespace pnet {

using Json = nlohmann::json;

Json parse_json_text(const std::string& text); // throws ParseError
Json load_json_file(const std::string& path);  // throws ParseError

// Posets: {"elements": [..], "covers": [["a","b"], ..]} declaring a <= b.
Json poset_to_json(const Poset& p);
Poset poset_from_json(const Json& j);

// Complex scalars as [re, im]; matrices as row lists of such pairs.
Json complex_to_json(const Cplx& z);
Cplx complex_from_json(const Json& j);
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

// Bundles: {"base": <poset>, "rank": d, "maps": {"<sub>|<sup>": matrix}}.
// For raw validation data "rank" may also be {"elem": d, ..} with
// rectangular matrices.
Json bundle_to_json(const NetBundle& e);
BundleData bundle_data_from_json(const Json& j);
NetBundle bundle_from_json(const Json& j, double tol = kTolConstruct);

// Poset-fibred bundles: {"base": .., "fibre": ..,
//   "transitions": {"<sub>|<sup>": {"from": "to", ..}}}.
Json poset_bundle_to_json(const PosetNetBundle& x);
PosetNetBundle poset_bundle_from_json(const Json& j);

Json group_to_json(const FGAbelianGroup& g);

} // namespace pnet

#endif
