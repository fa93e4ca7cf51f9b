#include "hornet/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace hornet {

namespace {

// A clause with "false" in its body can never fire in any engine; it is
// dropped before encoding so the matrix semantics match the fixpoint
// solver exactly.
bool is_dead(const HornClause& c) {
    return std::find(c.body.begin(), c.body.end(), kFalseAtom) != c.body.end();
}

} // namespace

MatrixProgram encode(const Program& p) {
    if (p.kind != ProgramKind::horn)
        throw std::invalid_argument("encode requires a horn program");

    const std::size_t n_atoms = p.symbols.size();

    std::vector<std::uint32_t> live;
    live.reserve(p.horn.size());
    for (std::uint32_t i = 0; i < p.horn.size(); ++i)
        if (!is_dead(p.horn[i]))
            live.push_back(i);

    // Clause indices grouped by head, in program order.
    std::vector<std::vector<std::uint32_t>> by_head(n_atoms);
    for (std::uint32_t i : live)
        by_head[p.horn[i].head].push_back(i);

    MatrixProgram m;
    m.atom_count = n_atoms;
    m.dim = n_atoms;
    for (AtomId h = 0; h < n_atoms; ++h)
        if (by_head[h].size() > 1)
            m.dim += by_head[h].size();

    // Row construction: row r defines column r. Conjunctive rows carry
    // weight 1/k per body entry; disjunctive rows weight 1.0 per clause.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(m.dim);
    std::size_t next_aux = n_atoms;
    for (AtomId h = 0; h < n_atoms; ++h) {
        const auto& defs = by_head[h];
        if (defs.empty())
            continue;
        if (defs.size() == 1) {
            const auto& body = p.horn[defs[0]].body;
            const double w = 1.0 / static_cast<double>(body.size());
            for (AtomId b : body)
                rows[h].emplace_back(b, w);
        } else {
            for (std::uint32_t ci : defs) {
                const auto& body = p.horn[ci].body;
                const double w = 1.0 / static_cast<double>(body.size());
                for (AtomId b : body)
                    rows[next_aux].emplace_back(b, w);
                rows[h].emplace_back(static_cast<std::uint32_t>(next_aux), 1.0);
                m.aux_owner.push_back(h);
                ++next_aux;
            }
        }
    }

    m.row_start.assign(m.dim + 1, 0);
    for (std::size_t r = 0; r < m.dim; ++r)
        m.row_start[r + 1] = m.row_start[r] + rows[r].size();
    m.col.reserve(m.row_start[m.dim]);
    m.weight.reserve(m.row_start[m.dim]);
    for (const auto& row : rows) {
        for (auto [c, w] : row) {
            m.col.push_back(c);
            m.weight.push_back(w);
        }
    }

    m.v0.assign(m.dim, 0);
    m.v0[kTrueAtom] = 1;
    return m;
}

std::vector<std::uint8_t> tp_step(const MatrixProgram& m,
                                  const std::vector<std::uint8_t>& v) {
    if (v.size() != m.dim)
        throw std::invalid_argument("tp_step: vector dimension mismatch");

    std::vector<std::uint8_t> out(v); // monotone join with the input
    for (std::size_t r = 0; r < m.dim; ++r) {
        if (out[r])
            continue;
        double sum = 0.0;
        for (std::size_t e = m.row_start[r]; e < m.row_start[r + 1]; ++e)
            if (v[m.col[e]])
                sum += m.weight[e];
        if (sum >= 1.0 - kFireEpsilon)
            out[r] = 1;
    }
    return out;
}

std::vector<std::uint8_t> tp_fix(const MatrixProgram& m) {
    std::vector<std::uint8_t> v = m.v0;
    for (std::size_t i = 0; i < m.dim; ++i) {
        std::vector<std::uint8_t> next = tp_step(m, v);
        if (next == v)
            return v;
        v = std::move(next);
    }
    // An ascending 0/1 chain of length dim+1 must repeat.
    std::vector<std::uint8_t> next = tp_step(m, v);
    if (next == v)
        return v;
    throw std::logic_error("tp_fix failed to converge within dim iterations");
}

Model decode(const MatrixProgram& m, const std::vector<std::uint8_t>& v) {
    if (v.size() != m.dim)
        throw std::invalid_argument("decode: vector dimension mismatch");
    Model model;
    model.status = v[kFalseAtom] ? SatStatus::unsatisfiable : SatStatus::satisfiable;
    for (std::size_t a = 0; a < m.atom_count; ++a)
        if (v[a])
            model.true_atoms.push_back(static_cast<AtomId>(a));
    return model;
}

Model solve_matrix(const Program& p) {
    MatrixProgram m = encode(p);
    return decode(m, tp_fix(m));
}

} // namespace hornet
