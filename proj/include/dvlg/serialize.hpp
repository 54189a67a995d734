#pragma once

// JSON forms of the value types, over nlohmann::json.

#include <json.hpp>

#include "dvlg/core_algebra.hpp"
#include "dvlg/oracle.hpp"
#include "dvlg/periodic.hpp"
#include "dvlg/sw.hpp"

namespace dvlg::io {

using Json = nlohmann::json;

/// ["p/q", ...]
Json to_json(const GroupVector& v);
/// Sorted index array.
Json to_json(const SubsetL& s);
/// {"k": int, "vals": ["p/q", ...]}
Json to_json(const periodic::PeriodicFn& f);
/// {"k": int, "mask": [indices]}
Json to_json(const periodic::PeriodicSet& c);
/// {"k": int, "terms": [...], "chi": "...", "mode": "tplus" | "ec"}
Json to_json(const sw::ReductionOutput& r);

// Readers throw Error(PreconditionViolated) on malformed input.
Rational rational_from_json(const Json& j);
GroupVector group_vector_from_json(const Json& j);
SubsetL subset_from_json(const Json& j, std::size_t width);
periodic::PeriodicFn periodic_fn_from_json(const Json& j);
periodic::PeriodicSet periodic_set_from_json(const Json& j);

/// {"name": value, ...}, each variable read at the sort it has in f.
oracle::Assignment assignment_from_json(const Json& j, const logic::Formula& f, std::size_t n);

}  // namespace dvlg::io
