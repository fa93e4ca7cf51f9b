#include "hornet/explore.hpp"

#include "hornet/parser.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>

namespace hornet {

namespace {

struct Expansion {
    const ExplorationConfig& cfg;
    Oracle& oracle;
    Program program; // clauses filled in visit order; facts appended at the end
    std::vector<HornClause> horn_facts;
    std::vector<DualHornClause> dual_facts;
    ExplorationTrace trace;

    bool keep(const std::string& item, const std::vector<std::string>& path) {
        if (cfg.agent == ExploreAgent::recursor)
            return true;
        OracleRequest rate_req{Purpose::rate, item, path, {}};
        double rating = *oracle.ask(rate_req).rating;
        // The advisor is a fixed yes/no oracle; the rater applies the
        // configured threshold.
        double threshold =
            cfg.agent == ExploreAgent::advisor ? 50.0 : cfg.rater_threshold;
        return accept(rating, threshold);
    }

    void emit_frontier(AtomId goal) {
        if (cfg.mode == ExploreMode::horn)
            horn_facts.push_back({goal, {kTrueAtom}});
        else
            dual_facts.push_back({goal, {kFalseAtom}});
    }

    void emit_clause(AtomId goal, const std::vector<AtomId>& items) {
        if (cfg.mode == ExploreMode::horn) {
            if (cfg.disjunctive_horn) {
                for (AtomId item : items)
                    program.horn.push_back({goal, {item}});
            } else {
                program.horn.push_back({goal, items});
            }
        } else {
            program.dual.push_back({goal, items});
        }
    }

    void expand(const std::string& goal, int depth, std::vector<std::string>& path) {
        trace.visited.insert(goal);
        AtomId goal_id = program.symbols.intern(goal);

        if (depth >= cfg.max_depth) {
            emit_frontier(goal_id);
            return;
        }

        OracleRequest req{Purpose::expand, goal, path, {}};
        std::vector<std::string> items = oracle.ask(req).items;
        if (static_cast<int>(items.size()) > cfg.max_branching)
            items.resize(cfg.max_branching);

        ExplorationStep step;
        step.depth = depth;
        step.goal = goal;
        path.push_back(goal);
        for (const std::string& item : items) {
            if (keep(item, path))
                step.accepted.push_back(item);
            else
                step.rejected.push_back(item);
        }

        if (!step.accepted.empty()) {
            std::vector<AtomId> ids;
            ids.reserve(step.accepted.size());
            for (const std::string& item : step.accepted)
                ids.push_back(program.symbols.intern(item));
            emit_clause(goal_id, ids);
        }
        std::vector<std::string> accepted = step.accepted;
        trace.steps.push_back(std::move(step));

        // Goals already expanded are referenced in the clause above but
        // never re-expanded; this cuts oracle loops.
        for (const std::string& item : accepted)
            if (!trace.visited.count(item))
                expand(item, depth + 1, path);
        path.pop_back();
    }
};

} // namespace

ExplorationResult explore(const ExplorationConfig& cfg, Oracle& oracle) {
    if (SymbolTable::trim(cfg.initiator).empty())
        throw std::invalid_argument("initiator must be non-empty");

    Expansion ex{cfg, oracle, {}, {}, {}, {}};
    ex.program.kind = cfg.mode == ExploreMode::horn ? ProgramKind::horn : ProgramKind::dual;

    std::vector<std::string> path;
    try {
        ex.expand(std::string(SymbolTable::trim(cfg.initiator)), 0, path);
    } catch (const OracleError& e) {
        throw ExploreError(e.what(), std::move(ex.trace));
    }

    if (cfg.max_depth > 0 && ex.program.clause_count() == 0)
        throw ExploreError("zero accepted items at the root goal", std::move(ex.trace));

    // Expansion clauses first, then the frontier facts, matching the
    // presentation order of generated programs.
    for (auto& f : ex.horn_facts)
        ex.program.horn.push_back(std::move(f));
    for (auto& f : ex.dual_facts)
        ex.program.dual.push_back(std::move(f));

    return {std::move(ex.program), std::move(ex.trace)};
}

std::string ExplorationTrace::to_json(const std::string& initiator) const {
    nlohmann::ordered_json doc;
    doc["initiator"] = initiator;
    doc["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : steps) {
        nlohmann::ordered_json step;
        step["depth"] = s.depth;
        step["goal"] = s.goal;
        step["accepted"] = s.accepted;
        step["rejected"] = s.rejected;
        doc["steps"].push_back(std::move(step));
    }
    return doc.dump(2) + "\n";
}

std::string slugify(const std::string& text) {
    std::string slug;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            slug.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        else if (!slug.empty() && slug.back() != '_')
            slug.push_back('_');
    }
    while (!slug.empty() && slug.back() == '_')
        slug.pop_back();
    if (slug.size() > 48)
        slug.resize(48);
    return slug.empty() ? "exploration" : slug;
}

SavedArtifacts save_artifacts(const ExplorationConfig& cfg,
                              const ExplorationResult& result,
                              const Model& model,
                              const SymbolTable& model_symbols,
                              const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string slug = slugify(cfg.initiator);

    SavedArtifacts paths;
    paths.program_path = (fs::path(out_dir) / (slug + ".pro")).string();
    paths.trace_path = (fs::path(out_dir) / (slug + "_trace.json")).string();
    paths.model_path = (fs::path(out_dir) / (slug + "_model.pro")).string();

    auto write_file = [](const std::string& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + path);
        out << content;
    };

    write_file(paths.program_path, serialize_program(result.program));
    write_file(paths.trace_path, result.trace.to_json(cfg.initiator));

    std::string model_text = "% minimal model of " + quote_atom(cfg.initiator) + "\n";
    for (AtomId a : model.non_reserved())
        model_text += quote_atom(model_symbols.text(a)) + ".\n";
    write_file(paths.model_path, model_text);
    return paths;
}

} // namespace hornet
