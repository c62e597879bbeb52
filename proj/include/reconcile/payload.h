#pragma once

#include "reconcile/foil.h"
#include "reconcile/model_space.h"
#include "reconcile/subsets.h"

#include <json.hpp>

namespace reconcile {

// JSON shapes shared by the service and the CLI's --format json.

// {"steps": [...], "cost": "8"}; cost is "infinity" for infeasible plans.
nlohmann::json plan_json(const Plan &plan);

// {"steps": [{"action", "origin", "observation"?}], "cost",
//  "used": [{"index", "action"}], "discarded": [{"index", "action"}]}
nlohmann::json projected_json(const ProjectedPlan &pp, const Foil &foil);

nlohmann::json subset_json(const SubsetReport &set);
nlohmann::json conflict_json(const ConflictSet &set);
nlohmann::json edits_json(const EditSet &edits);

}  // namespace reconcile
