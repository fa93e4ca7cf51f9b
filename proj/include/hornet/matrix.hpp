#pragma once

#include "hornet/program.hpp"

#include <cstddef>
#include <vector>

namespace hornet {

/// Sparse encoding of a horn program for minimal-model computation by
/// iterated thresholded matrix-vector products over 0/1 vectors.
///
/// Column layout: columns [0, atom_count) are the program's atoms (column
/// index == AtomId); auxiliary columns for multi-clause heads follow.
/// Row r defines column r:
///   - an atom with one defining clause of body size k gets a conjunctive
///     row with k entries of weight 1/k;
///   - an atom with m > 1 defining clauses gets m auxiliary columns, one
///     conjunctive row per clause targeting its auxiliary column, and a
///     disjunctive row of m weight-1.0 entries targeting the atom's column.
/// A row fires when its dot product with the current vector reaches
/// 1 - epsilon; the result is joined pointwise with the input vector, so
/// iterates form an ascending chain.
struct MatrixProgram {
    std::size_t dim = 0;        // atom_count + auxiliary columns
    std::size_t atom_count = 0; // columns below this are atoms

    // Compressed sparse rows; row_start has dim + 1 entries.
    std::vector<std::size_t> row_start;
    std::vector<std::uint32_t> col;
    std::vector<double> weight;

    std::vector<std::uint8_t> v0;      // 1 exactly at col("true")
    std::vector<AtomId> aux_owner;     // aux column - atom_count -> head atom

    std::size_t entry_count() const { return col.size(); }
};

// Threshold slack absorbing 1/k summation error (e.g. 3 * (1/3) < 1).
inline constexpr double kFireEpsilon = 1e-9;

MatrixProgram encode(const Program& p);

// One thresholded step, joined with v (output >= v pointwise).
// Throws std::invalid_argument on dimension mismatch.
std::vector<std::uint8_t> tp_step(const MatrixProgram& m,
                                  const std::vector<std::uint8_t>& v);

// Iterate tp_step from v0 until exact vector equality; monotonicity bounds
// the chain by dim steps.
std::vector<std::uint8_t> tp_fix(const MatrixProgram& m);

// Read a fixpoint vector back into a Model; auxiliary columns are dropped
// and v[col("false")] decides the status.
Model decode(const MatrixProgram& m, const std::vector<std::uint8_t>& v);

// encode + tp_fix + decode.
Model solve_matrix(const Program& p);

} // namespace hornet
