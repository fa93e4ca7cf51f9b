#include "hornet/dual.hpp"

#include "hornet/fixpoint.hpp"

#include <stdexcept>

namespace hornet {

std::string FalsificationMap::counterpart_name(std::string_view source_text) {
    if (source_text == "false")
        return "true";
    return "false:" + std::string(source_text);
}

std::optional<std::string> FalsificationMap::source_name(std::string_view counterpart_text) {
    if (counterpart_text == "true")
        return "false";
    constexpr std::string_view prefix = "false:";
    if (counterpart_text.substr(0, prefix.size()) == prefix)
        return std::string(counterpart_text.substr(prefix.size()));
    return std::nullopt;
}

std::pair<Program, FalsificationMap> contrapose(const Program& dual_program) {
    if (dual_program.kind != ProgramKind::dual)
        throw std::invalid_argument("contrapose requires a dual program");

    Program out;
    out.kind = ProgramKind::horn;
    FalsificationMap map;

    auto counterpart = [&](AtomId source) {
        auto it = map.forward.find(source);
        if (it != map.forward.end())
            return it->second;
        AtomId id = out.symbols.intern(
            FalsificationMap::counterpart_name(dual_program.symbols.text(source)));
        map.forward.emplace(source, id);
        return id;
    };

    // premise => c1; ...; cn  becomes  F(premise) :- F(c1), ..., F(cn).
    // F(false) = true, so a negated fact compiles directly to a fact.
    for (const DualHornClause& c : dual_program.dual) {
        HornClause h;
        h.head = counterpart(c.premise);
        h.body.reserve(c.consequents.size());
        for (AtomId consequent : c.consequents)
            h.body.push_back(counterpart(consequent));
        out.horn.push_back(std::move(h));
    }
    return {std::move(out), std::move(map)};
}

bool falsify(const Program& dual_program, AtomId goal) {
    if (goal >= dual_program.symbols.size())
        throw std::invalid_argument("goal does not occur in the program");
    auto [compiled, map] = contrapose(dual_program);
    auto it = map.forward.find(goal);
    if (it == map.forward.end())
        return false; // goal never touched by any clause: nothing falsifies it
    return prove(compiled, it->second);
}

bool falsify(const Program& dual_program, std::string_view goal_text) {
    auto goal = dual_program.symbols.find(goal_text);
    if (!goal)
        throw std::invalid_argument("goal does not occur in the program: " +
                                    std::string(goal_text));
    return falsify(dual_program, *goal);
}

} // namespace hornet
