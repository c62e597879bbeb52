#pragma once

#include "reconcile/foil.h"
#include "reconcile/pddl.h"

#include <filesystem>
#include <string>
#include <vector>

namespace fixture {

inline std::filesystem::path dir() { return std::filesystem::path(RECONCILE_DATA_DIR) / "firefight-mini"; }

inline reconcile::ModelPair models() { return reconcile::load_manifest(dir() / "manifest.json"); }

inline const std::string kSmall = "DEPLOY_SMALL_ENGINES_FIRECHIEF_ADMINFIRE_BYENG";
inline const std::string kBig = "DEPLOY_BIG_ENGINES_FIRECHIEF_MESAFIRE_BYENG";
inline const std::string kSocial = "SEND_SOCIAL_MEDIA_BYENG_BYENG";
inline const std::string kAddress = "ADDRESS_MEDIA_FIRECHIEF";

// The commander's alternative, in the order it was proposed.
inline reconcile::Foil pi_prime() { return reconcile::Foil{{kSmall, kBig, kSocial, kAddress}}; }

inline std::vector<std::string> optimal_steps() {
    return {"ASSESS_FIRE_FIRECHIEF_BYENG",
            "SET_UP_COMMAND_POST_FIRECHIEF_BYENG",
            kSmall,
            "EVACUATE_AREA_FIRECHIEF_BYENG",
            kAddress,
            "EXTINGUISH_FIRE_BYENG"};
}

}  // namespace fixture
