#pragma once

#include "hornet/program.hpp"

#include <optional>

namespace hornet {

struct SolverOptions {
    // Discard the model (keep only the status) when an integrity
    // constraint fires. Off by default: the model is reported alongside
    // the unsatisfiable status.
    bool strict_integrity = false;
    // Stop as soon as this atom is derived; the returned model is then a
    // sound subset of the least model with proved_goal set.
    std::optional<AtomId> stop_at_goal;
};

/// Least-model computation by counting propagation: each clause tracks how
/// many distinct body atoms are still unproven and fires when the count
/// reaches zero. Total work is linear in the sum of clause sizes.
///
/// Integrity constraints (head "false") never feed propagation; they only
/// flip the status. Within one propagation step a pending goal proof wins
/// over a pending constraint firing.
///
/// A run owns its counters; concurrent runs over the same Program are safe.
Model minimal_model(const Program& p, const SolverOptions& opts = {});

// goal must be interned in p (throws std::invalid_argument otherwise).
// Equivalent to membership in the least model, with early exit.
bool prove(const Program& p, AtomId goal);
bool prove(const Program& p, std::string_view goal_text);

} // namespace hornet
