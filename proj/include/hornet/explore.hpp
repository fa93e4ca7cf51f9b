#pragma once

#include "hornet/oracle.hpp"
#include "hornet/program.hpp"

#include <set>
#include <string>
#include <vector>

namespace hornet {

enum class ExploreMode { horn, dual };
enum class ExploreAgent { recursor, advisor, rater };

struct ExplorationConfig {
    std::string initiator;
    int max_depth = 1;
    ExploreMode mode = ExploreMode::horn;
    ExploreAgent agent = ExploreAgent::recursor;
    double rater_threshold = 50.0; // used only by the rater agent
    int max_branching = 5;
    // Emit one horn clause per accepted item instead of one conjunctive
    // clause per expansion.
    bool disjunctive_horn = false;
};

struct ExplorationStep {
    int depth = 0;
    std::string goal;
    std::vector<std::string> accepted;
    std::vector<std::string> rejected; // kept for audit, never in the program
};

struct ExplorationTrace {
    std::vector<ExplorationStep> steps;
    std::set<std::string> visited; // no goal is expanded twice

    std::string to_json(const std::string& initiator) const;
};

struct ExplorationResult {
    Program program;
    ExplorationTrace trace;
};

/// Raised on oracle failure mid-exploration; carries the partial trace.
class ExploreError : public std::runtime_error {
public:
    ExploreError(const std::string& what, ExplorationTrace partial)
        : std::runtime_error(what), partial_trace(std::move(partial)) {}

    ExplorationTrace partial_trace;
};

/// Depth-first goal expansion through an oracle, breadth-capped at
/// max_branching per goal. Accepted items form one clause per expansion;
/// frontier items at the depth limit become facts (horn: i :- true,
/// dual: i => false). A goal already expanded is referenced but not
/// re-expanded, which cuts oracle loops. Emission order is all expansion
/// clauses in visit order followed by all frontier facts in visit order.
ExplorationResult explore(const ExplorationConfig& cfg, Oracle& oracle);

struct SavedArtifacts {
    std::string program_path;
    std::string trace_path;
    std::string model_path;
};

/// Writes <slug>.pro, <slug>_trace.json and <slug>_model.pro under out_dir,
/// where slug is derived deterministically from the initiator. The model is
/// printed one quoted fact per line under a header comment.
SavedArtifacts save_artifacts(const ExplorationConfig& cfg,
                              const ExplorationResult& result,
                              const Model& model,
                              const SymbolTable& model_symbols,
                              const std::string& out_dir);

std::string slugify(const std::string& text);

} // namespace hornet
