#pragma once

#include "json.hpp"

#include "permlab/bounds.hpp"
#include "permlab/distribution.hpp"
#include "permlab/events.hpp"
#include "permlab/exact.hpp"
#include "permlab/growth.hpp"
#include "permlab/matrix.hpp"
#include "permlab/monte_carlo.hpp"

namespace permlab {

using Json = nlohmann::json;

// Index sets are written 1-based.

Json to_json(const Matrix& m);
/// {"q": ..., "rows": [[...], ...]}; throws BadConfig on malformed input.
Matrix matrix_from_json(const Json& j);

Json to_json(const EntryDistribution& dist);
EntryDistribution distribution_from_json(const Json& j);

Json to_json(const EventReport& report);
Json to_json(const Estimate& e);
Estimate estimate_from_json(const Json& j);
Json to_json(const BoundVerdict& v);
BoundVerdict bound_verdict_from_json(const Json& j);
Json to_json(const ExactCounts& counts);
Json to_json(const GrowthTrace& trace);
GrowthTrace growth_trace_from_json(const Json& j);

Json index_set_to_json(const IndexSet& set);
/// Converts 1-based JSON indices to a 0-based set; BadConfig on 0 entries.
IndexSet index_set_from_json(const Json& j);

}  // namespace permlab
