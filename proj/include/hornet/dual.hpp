#pragma once

#include "hornet/program.hpp"

#include <unordered_map>
#include <utility>

namespace hornet {

/// Maps every source atom of a dual program to its "falsified" counterpart
/// in the compiled horn program. Counterpart names are the source text
/// prefixed with "false:"; the counterpart of "false" itself is "true".
struct FalsificationMap {
    // source atom id (dual program) -> counterpart id (horn program)
    std::unordered_map<AtomId, AtomId> forward;

    AtomId counterpart(AtomId source) const { return forward.at(source); }

    static std::string counterpart_name(std::string_view source_text);
    // Strips the "false:" prefix; nullopt for "true" and unprefixed names.
    static std::optional<std::string> source_name(std::string_view counterpart_text);
};

/// Contrapositive compilation: premise => c1; ...; cn becomes
/// F(premise) :- F(c1), ..., F(cn) with F(false) = true, so a negated fact
/// premise => false compiles to the fact F(premise) :- true. The output is
/// always a definite program; its minimal model is the set of falsified
/// atoms. Pure function, linear in program size.
std::pair<Program, FalsificationMap> contrapose(const Program& dual_program);

// True iff goal is falsified: compile, then check F(goal) against the
// fixpoint solver. goal must occur in the program (std::invalid_argument).
bool falsify(const Program& dual_program, AtomId goal);
bool falsify(const Program& dual_program, std::string_view goal_text);

} // namespace hornet
