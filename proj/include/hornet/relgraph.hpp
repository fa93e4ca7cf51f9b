#pragma once

#include "hornet/oracle.hpp"
#include "hornet/program.hpp"

#include <string>
#include <unordered_set>
#include <vector>

namespace hornet {

// Labels: ":" for implication, "is" for generalization, otherwise a verb.
struct RelEdge {
    std::string source;
    std::string label;
    std::string target;

    friend bool operator==(const RelEdge&, const RelEdge&) = default;
};

struct SVOTriple {
    std::string subject;
    std::string verb;
    std::string object;

    friend bool operator==(const SVOTriple&, const SVOTriple&) = default;
};

// body -> ":" -> head per horn clause, premise -> ":" -> consequent per
// dual clause; reserved atoms are excluded. When model is given, both
// endpoints must be in its true atoms (ids relative to p.symbols).
std::vector<RelEdge> implication_edges(const Program& p,
                                       const Model* model = nullptr);
// Same, filtering by atom text instead (used when the model was computed
// over a different symbol table, e.g. a contraposed program).
std::vector<RelEdge> implication_edges(const Program& p,
                                       const std::unordered_set<std::string>& keep);

// One purpose=generalize request per batch; each reply line "X is Y"
// becomes an "is" edge, unparseable lines are counted into *skipped.
std::vector<RelEdge> generalization_edges(const std::vector<std::string>& atoms,
                                          Oracle& oracle,
                                          std::size_t* skipped = nullptr);

// purpose=svo request; reply lines "subject | verb | object".
std::vector<SVOTriple> svo_triples(const std::string& sentence, Oracle& oracle,
                                   std::size_t* skipped = nullptr);

std::string svo_to_json(const std::vector<SVOTriple>& triples);
std::vector<SVOTriple> svo_from_json(const std::string& text);

enum class GraphFormat { dot, json };

// Deterministic export; node order is first appearance.
std::string export_graph(const std::vector<RelEdge>& edges, GraphFormat format);

std::vector<RelEdge> edges_from_json(const std::string& text);

} // namespace hornet
