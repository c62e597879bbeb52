#pragma once

#include "reconcile/strips.h"

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace reconcile {

struct ParseOptions {
    // Upper bound on candidate ground instantiations over all schemata;
    // exceeding it raises GroundingExplosion before anything is built.
    std::size_t grounding_cap = 200000;
    ModelTag tag = ModelTag::Robot;
};

// Parses the :strips / :typing / :action-costs subset of PDDL and grounds
// it. Ground names are the upper-cased predicate or action name followed by
// its arguments, joined with '_' ("deploy-big-engines firechief mesafire
// byeng" becomes DEPLOY_BIG_ENGINES_FIRECHIEF_MESAFIRE_BYENG). Actions whose
// static preconditions are false in the initial state are dropped.
//
// Errors: SyntaxError (with line/column), UnsupportedFeature,
// GroundingExplosion, NameCollision, InvalidModel.
Model parse_domain_problem(std::string_view domain_text, std::string_view problem_text,
                           const ParseOptions &options = {});

struct SerializedModel {
    std::string domain;
    std::string problem;
};

// Emits the model as zero-arity schemata. Reparsing gives a structurally
// equal model.
SerializedModel serialize_model(const Model &model, std::string_view name = "model");

struct Manifest {
    std::filesystem::path robot_domain;
    std::filesystem::path robot_problem;
    std::filesystem::path human_domain;
    std::filesystem::path human_problem;
    std::map<std::string, std::string> metadata;
};

struct ModelPair {
    Model robot;
    Model human;
    Manifest manifest;
};

// Reads the JSON manifest; relative paths resolve against the manifest's
// directory. Both models come back over the same sorted fluent vocabulary.
// Errors: ManifestError, InitGoalMismatch, VocabularyMismatch, plus
// anything parse_domain_problem raises.
ModelPair load_manifest(const std::filesystem::path &path, const ParseOptions &options = {});

// Aligns two already-parsed models the same way load_manifest does.
ModelPair align_models(const Model &robot, const Model &human);

std::string read_file(const std::filesystem::path &path);

// One action per line followed by "; cost = <rational>" (or
// "; cost = infinity" for an infeasible plan).
std::string format_plan(const Plan &plan);

// Action list reader shared by foil and plan files: one name per line,
// '#' and ';' start comments, blank lines ignored. "(deploy a b)" is
// accepted and normalized to DEPLOY_A_B.
std::vector<std::string> parse_action_list(std::string_view text);

std::string ground_name(std::string_view head, const std::vector<std::string> &args);

}  // namespace reconcile
