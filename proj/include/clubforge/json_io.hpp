#ifndef CLUBFORGE_JSON_IO_HPP
#define CLUBFORGE_JSON_IO_HPP

#include <json.hpp>

#include "clubforge/constructions.hpp"
#include "clubforge/rmcode.hpp"
#include "clubforge/search.hpp"

namespace clubforge {

using json = nlohmann::json;

// Field tower: {"p":2,"e":1,"m":4,"modulus":[1,1,0,0,1]}
json tower_to_json(const FieldTower& tw);
std::shared_ptr<const FieldTower> tower_from_json(const json& j);

// Subspace: {"field":{...},"k":3,"basis":[[...],...]}
json subspace_to_json(const SubspaceU& U);
SubspaceU subspace_from_json(const json& j);

// Report: census as a sorted array of [weight, count] pairs.
json report_to_json(const LinearSetReport& rep);
LinearSetReport report_from_json(const json& j);

// Code: {"field":{...},"n":5,"k":3,"G":[[...],...]}
json code_to_json(const RankMetricCode& C);
RankMetricCode code_from_json(const json& j);

// Distribution: {"A":[...]}; entries exceeding 2^53 serialize as strings.
json distribution_to_json(const WeightDistribution& dist, const char* key = "A");
WeightDistribution distribution_from_json(const json& j, const char* key = "A");

json selfcheck_to_json(const SelfCheckReport& rep);

json search_spec_params_to_json(const SearchSpec& spec);
SearchSpec search_spec_from_json(const json& j);
json search_result_to_json(const SearchResult& res, bool with_timing);

}  // namespace clubforge

#endif
