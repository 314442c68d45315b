#pragma once

#include <mwb/coding.hpp>
#include <mwb/config_family.hpp>
#include <mwb/detectors.hpp>
#include <mwb/mutual_algebraicity.hpp>
#include <mwb/overlay.hpp>

#include <nlohmann/json.hpp>

namespace mwb {

using Json = nlohmann::json;

/// Two-space indented text with a trailing newline. Arrays of scalars (and
/// of such arrays) stay on one line. Object keys come out sorted, so equal
/// values give identical bytes.
std::string dump(const Json& j);

Json to_json(const FiniteStructure& s);
FiniteStructure structure_from_json(const Json& j);

Json to_json(const PartitionedFormula& pf);
PartitionedFormula partitioned_formula_from_json(const Json& j);

Json to_json(const Permutation& p);
Permutation permutation_from_json(const Json& j);

Json to_json(const NamedSubset& p);
NamedSubset named_subset_from_json(const Json& j);

Json to_json(const WitnessReport& r);
WitnessReport witness_report_from_json(const Json& j);

Json to_json(const ConfigFamily& f);
ConfigFamily config_family_from_json(const Json& j);

Json to_json(const DisjointFamily& f);
DisjointFamily disjoint_family_from_json(const Json& j);

Json to_json(const MonadicPresentation& p);
Json to_json(const UnionMultiplicityReport& r);

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json to_json(const CodingTriple& t);
CodingTriple coding_triple_from_json(const Json& j);

Json to_json(const GraphEncoding& e);
Json to_json(const ThetaReport& r);

Json to_json(const OverlayPlan& p);
/// The combined structure is rebuilt from left, right and sigma.
OverlayPlan overlay_plan_from_json(const Json& j);

} // namespace mwb
