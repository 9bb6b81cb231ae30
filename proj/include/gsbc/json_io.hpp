/* json_io.hpp -- JSON schemas for spaces, partitions and codes, loading of
 * built-in maps, and report serialization for the CLI's --json mode. */

#pragma once

#include <string>

#include <json.hpp>

#include "gsbc/chl.hpp"
#include "gsbc/codes.hpp"

namespace gsbc {

using json = nlohmann::json;

// {"indices":[i,...],"symbols":[a,...]}
json pattern_to_json(const Pattern& p);
Pattern pattern_from_json(const json& j);

// {"space":"full"} | {"space":"forbidden","patterns":[...]}
// | {"space":"subalphabets","blocks":[[...],...]}
json space_to_json(const ShiftSpace& s);
ShiftSpace space_from_json(const json& j, MonoidKind kind);

// {"version":1,"monoid":"N","space":{...},"entries":[{"output":b,"cylinders":[...]},...]}
json partition_to_json(const ExplicitPartition& p);
ExplicitPartition partition_from_json(const json& j);

// {"type":"classical","neighborhood":[...],"rule":[{"pattern":[...],"output":b},...]}
// | {"type":"generalized","partition":{...}}
json code_to_json(const CodeMap& m);
CodeMap code_from_json(const json& j, const std::string& name);

// Accepts "builtin:<name>[?blocks=[[...],...]]" or a path to a code file.
// Built-ins: example1, example1-formula, example2, example2-prober,
// identity, identity-z, sum, broken.
CodeMap load_code_map(const std::string& spec);

json commutation_report_to_json(const CommutationReport& r, const CommutationOptions& opt);
json determination_to_json(const DeterminationResult& r);
json learned_partition_to_json(const LearnedPartition& lp);
json validation_report_to_json(const ValidationReport& r);
json radius_classification_to_json(const RadiusClassification& r);

} // namespace gsbc
