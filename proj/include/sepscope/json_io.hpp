#pragma once

// JSON forms of states, partitions, permutations and reports.
//
// States: {"kind":"density"|"pure","n":…,"d":…,"re":[…],"im":[…]} with
// matrices flattened row-major. With `exact`, numbers are written as
// 17-significant-digit decimal strings, which parse back bit-exactly.

#include "json.hpp"

#include "sepscope/bounds_mixed.hpp"
#include "sepscope/measures_pure.hpp"
#include "sepscope/partitions.hpp"
#include "sepscope/roof_oracle.hpp"
#include "sepscope/tensor_core.hpp"

namespace sepscope {

using Json = nlohmann::json;

Json to_json(const DensityMatrix& rho, bool exact = false);
Json to_json(const PureState& psi, bool exact = false);
DensityMatrix density_from_json(const Json& j);
PureState pure_from_json(const Json& j);

Json to_json(const SiteSet& s);
Json to_json(const Partition& p);
Partition partition_from_json(const Json& j);
Json to_json(const SitePermutation& p);
SitePermutation permutation_from_json(const Json& j);
Json to_json(const OrbitTable& t);

Json to_json(const PureReport& r);
Json to_json(const BoundReport& r);
Json to_json(const ChainReport& r);

}  // namespace sepscope
