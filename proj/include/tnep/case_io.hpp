#pragma once

#include <string>

#include "tnep/types.hpp"

namespace tnep {

// Parses a planning case from its JSON document.  `base_dir` is the
// directory used to resolve a representative_days.hourly_csv reference.
// The result is validated before it is returned.
PlanningCase load_case(const std::string& json_text, const std::string& base_dir = ".");

PlanningCase load_case_file(const std::string& path);

// Serializes a case back to JSON.  Representative days are always written
// inline, so parse(serialize(pc)) == pc.
std::string serialize_case(const PlanningCase& pc);

}  // namespace tnep
