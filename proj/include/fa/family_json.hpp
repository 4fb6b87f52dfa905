#pragma once

#include "fa/solver.hpp"

#include <json.hpp>

namespace fa {

/// Wire format:
///   {"kind":"conjugation","generators":["..."],"modulus":"..."}
///   {"kind":"reduction","s":"...","t":"...","threshold":N,"short_solutions":["..."]}
/// with elements in the text grammar.
nlohmann::json family_to_json(const SolutionFamily &fam);
SolutionFamily family_from_json(const nlohmann::json &j, int alphabet = 0);

nlohmann::json report_to_json(const VerifyReport &rep);

} // namespace fa
