#pragma once

#include "hornet/atoms.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace hornet {

enum class ProgramKind { horn, dual };

// head :- b1, ..., bn.   A fact is stored as head :- ["true"];
// head == "false" encodes an integrity constraint.
struct HornClause {
    AtomId head;
    std::vector<AtomId> body; // non-empty

    friend bool operator==(const HornClause&, const HornClause&) = default;
};

// premise => c1; ...; cn.   A negated fact is premise => ["false"].
struct DualHornClause {
    AtomId premise;
    std::vector<AtomId> consequents; // non-empty

    friend bool operator==(const DualHornClause&, const DualHornClause&) = default;
};

/// A homogeneous clause list plus its interning table. Immutable after
/// construction and safe to share across threads.
struct Program {
    ProgramKind kind = ProgramKind::horn;
    std::vector<HornClause> horn;
    std::vector<DualHornClause> dual;
    SymbolTable symbols;

    std::size_t clause_count() const {
        return kind == ProgramKind::horn ? horn.size() : dual.size();
    }
};

enum class SatStatus { satisfiable, unsatisfiable };

/// Result of a solver run: the set of true atoms (ascending id, "true"
/// always included, "false" included iff unsatisfiable) plus status.
/// proved_goal is set when a goal-driven run stopped early.
struct Model {
    std::vector<AtomId> true_atoms; // sorted ascending
    SatStatus status = SatStatus::satisfiable;
    std::optional<AtomId> proved_goal;

    bool contains(AtomId a) const {
        return std::binary_search(true_atoms.begin(), true_atoms.end(), a);
    }

    // The model restricted to non-reserved atoms; this is what solvers
    // report to users and what engine-equivalence checks compare.
    std::vector<AtomId> non_reserved() const {
        std::vector<AtomId> out;
        out.reserve(true_atoms.size());
        for (AtomId a : true_atoms)
            if (!is_reserved(a))
                out.push_back(a);
        return out;
    }

    bool same_result(const Model& other) const {
        return status == other.status && non_reserved() == other.non_reserved();
    }
};

} // namespace hornet
