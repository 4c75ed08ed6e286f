#pragma once

// JSON files (schema "pal-v1"). Field elements are integer codes, subspaces
// are canonical RREF bases, keys are sorted, output is indented by two.

#include <string>

#include <json.hpp>

#include "pal/theorem.hpp"

namespace pal {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "pal-v1";

std::string dump(const Json& j);
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Checks the schema tag and the object kind; throws ErrorKind::Parse.
void expect_kind(const Json& j, const std::string& kind);
std::string kind_of(const Json& j);

Json field_to_json(const Field& f);
FieldPtr field_from_json(const Json& j);
Json tower_to_json(const FieldTower& t);
FieldTower tower_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const Field& f);
Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j, const FieldPtr& field);

Json to_json(const ReductionMap& map);
ReductionMap reduction_map_from_json(const Json& j);

Json to_json(const PlaneArc& arc);
PlaneArc plane_arc_from_json(const Json& j);

Json to_json(const PseudoArc& arc);
/// With verify, the elements must form a generalized arc (ErrorKind::NotArc);
/// without, the stored kind is taken as is.
PseudoArc pseudo_arc_from_json(const Json& j, bool verify = true);

Json to_json(const Spread& spread);
Spread spread_from_json(const Json& j);

Json to_json(const Regulus& regulus);
Regulus regulus_from_json(const Json& j, const FieldPtr& field);

Json to_json(const SubspaceSpread& spread);
Json to_json(const DualArc& dual);

Json to_json(const KArcReport& r);
Json to_json(const ArcReport& r);
Json to_json(const SpreadReport& r);
Json to_json(const RegularityReport& r);
Json to_json(const TransversalResult& r);
Json to_json(const RecognitionResult& r);
Json to_json(const TheoremReport& r);
Json to_json(const DesignSpec& spec);
DesignSpec design_spec_from_json(const Json& j);
Json to_json(const DesignCheckReport& r);
Json to_json(const RegulusBlocks& r);
Json to_json(const PlaneModel& m);

}  // namespace pal
