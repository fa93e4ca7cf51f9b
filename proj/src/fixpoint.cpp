#include "hornet/fixpoint.hpp"

#include <algorithm>
#include <stdexcept>

namespace hornet {

namespace {

// Per-run counting state. Watch lists are flattened into one CSR-style
// buffer so a million-clause program stays cache friendly.
struct Counters {
    std::vector<std::uint32_t> remaining;   // per clause: distinct unproven body atoms
    std::vector<std::size_t> watch_start;   // per atom, into watch_clause
    std::vector<std::uint32_t> watch_clause;
};

Counters build_counters(const Program& p) {
    const std::size_t n_atoms = p.symbols.size();
    const std::size_t n_clauses = p.horn.size();

    Counters ct;
    ct.remaining.assign(n_clauses, 0);
    std::vector<std::size_t> degree(n_atoms, 0);

    // Duplicate body atoms count once: counting must match the set
    // semantics of the logical body.
    std::vector<AtomId> scratch;
    auto distinct_body = [&scratch](const HornClause& c) -> const std::vector<AtomId>& {
        scratch.assign(c.body.begin(), c.body.end());
        std::sort(scratch.begin(), scratch.end());
        scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
        return scratch;
    };

    for (std::size_t i = 0; i < n_clauses; ++i) {
        for (AtomId b : distinct_body(p.horn[i]))
            ++degree[b];
    }
    ct.watch_start.assign(n_atoms + 1, 0);
    for (std::size_t a = 0; a < n_atoms; ++a)
        ct.watch_start[a + 1] = ct.watch_start[a] + degree[a];
    ct.watch_clause.resize(ct.watch_start[n_atoms]);

    std::vector<std::size_t> fill(ct.watch_start.begin(), ct.watch_start.end() - 1);
    for (std::size_t i = 0; i < n_clauses; ++i) {
        const auto& body = distinct_body(p.horn[i]);
        ct.remaining[i] = static_cast<std::uint32_t>(body.size());
        for (AtomId b : body)
            ct.watch_clause[fill[b]++] = static_cast<std::uint32_t>(i);
    }
    return ct;
}

} // namespace

Model minimal_model(const Program& p, const SolverOptions& opts) {
    if (p.kind != ProgramKind::horn)
        throw std::invalid_argument("minimal_model requires a horn program");
    if (opts.stop_at_goal && *opts.stop_at_goal >= p.symbols.size())
        throw std::invalid_argument("stop_at_goal is not an atom of the program");

    const std::size_t n_atoms = p.symbols.size();
    Counters ct = build_counters(p);

    std::vector<std::uint8_t> truth(n_atoms, 0);
    std::vector<AtomId> queue;
    queue.reserve(n_atoms);
    bool unsat = false;
    std::optional<AtomId> proved_goal;

    truth[kTrueAtom] = 1;
    queue.push_back(kTrueAtom);

    auto finalize = [&]() {
        Model m;
        m.status = unsat ? SatStatus::unsatisfiable : SatStatus::satisfiable;
        m.proved_goal = proved_goal;
        if (unsat)
            truth[kFalseAtom] = 1;
        if (unsat && opts.strict_integrity) {
            // Draconian discard: only the reserved atoms survive.
            m.true_atoms = {kTrueAtom, kFalseAtom};
            return m;
        }
        for (AtomId a = 0; a < n_atoms; ++a)
            if (truth[a])
                m.true_atoms.push_back(a);
        return m;
    };

    if (opts.stop_at_goal && *opts.stop_at_goal == kTrueAtom) {
        proved_goal = kTrueAtom;
        return finalize();
    }

    std::vector<std::uint32_t> fired;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        AtomId a = queue[qi];
        fired.clear();
        for (std::size_t w = ct.watch_start[a]; w < ct.watch_start[a + 1]; ++w) {
            std::uint32_t clause = ct.watch_clause[w];
            if (--ct.remaining[clause] == 0)
                fired.push_back(clause);
        }
        // A goal proof in this step wins over a constraint firing in it.
        if (opts.stop_at_goal) {
            for (std::uint32_t clause : fired) {
                if (p.horn[clause].head == *opts.stop_at_goal) {
                    if (*opts.stop_at_goal == kFalseAtom)
                        unsat = true; // proving "false" is the contradiction itself
                    else
                        truth[*opts.stop_at_goal] = 1;
                    proved_goal = *opts.stop_at_goal;
                    return finalize();
                }
            }
        }
        for (std::uint32_t clause : fired) {
            AtomId head = p.horn[clause].head;
            if (head == kFalseAtom) {
                // Integrity constraint: flag it, never propagate "false".
                unsat = true;
            } else if (!truth[head]) {
                truth[head] = 1;
                queue.push_back(head);
            }
        }
    }
    return finalize();
}

bool prove(const Program& p, AtomId goal) {
    if (goal >= p.symbols.size())
        throw std::invalid_argument("unknown goal atom");
    SolverOptions opts;
    opts.stop_at_goal = goal;
    return minimal_model(p, opts).proved_goal.has_value();
}

bool prove(const Program& p, std::string_view goal_text) {
    auto goal = p.symbols.find(goal_text);
    if (!goal)
        throw std::invalid_argument("unknown goal atom: " + std::string(goal_text));
    return prove(p, *goal);
}

} // namespace hornet
