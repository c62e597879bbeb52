#include "reconcile/payload.h"

namespace reconcile {

using json = nlohmann::json;

json plan_json(const Plan &plan) {
    return {{"steps", plan.steps},
            {"cost", plan.cost ? format_rational(*plan.cost) : std::string("infinity")}};
}

json projected_json(const ProjectedPlan &pp, const Foil &foil) {
    json steps = json::array();
    for (std::size_t i = 0; i < pp.plan.steps.size(); ++i) {
        json step{{"action", pp.plan.steps[i]}, {"origin", to_string(pp.origin[i])}};
        if (pp.observation[i] >= 0)
            step["observation"] = pp.observation[i];
        steps.push_back(std::move(step));
    }
    auto listed = [&](const std::vector<std::size_t> &positions) {
        json out = json::array();
        for (std::size_t p : positions)
            out.push_back({{"index", p}, {"action", foil.observations[p]}});
        return out;
    };
    return {{"steps", steps},
            {"cost", format_rational(*pp.plan.cost)},
            {"used", listed(pp.used)},
            {"discarded", listed(pp.discarded)}};
}

json subset_json(const SubsetReport &set) {
    return {{"indices", set.indices}, {"actions", set.actions}};
}

json conflict_json(const ConflictSet &set) {
    json out = subset_json(set);
    out["cannot_complete"] = set.cannot_complete;
    return out;
}

json edits_json(const EditSet &edits) {
    json out = json::array();
    for (const Edit &e : edits)
        out.push_back(e.render());
    return out;
}

}  // namespace reconcile
