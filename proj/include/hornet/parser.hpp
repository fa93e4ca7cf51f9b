#pragma once

#include "hornet/program.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hornet {

/// Raised on any malformed program text; carries a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int column)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Prolog-like clause syntax:
//   'quoted atom' :- 'b1', 'b2'.     horn rule ("" escapes a quote as '')
//   fact.                            horn fact, normalized to fact :- 'true'.
//   'p' => 'c1'; 'c2'.               dual clause
//   'p' => 'false'.                  negated dual fact
//   % comment to end of line
// Unquoted atoms match [a-z][A-Za-z0-9_]*. The program kind is inferred from
// the first clause unless kind_hint forces it; mixing kinds is an error.
Program parse_program(std::string_view text,
                      std::optional<ProgramKind> kind_hint = std::nullopt);

// JSON exchange format: a non-empty array of [head, [b1, ..., bk]] entries,
// all strings; facts appear as [h, ["true"]]. Always produces a horn program.
Program load_json_program(std::string_view text);

// Canonical text form: one clause per line, every atom single-quoted.
// parse_program(serialize_program(p)) reproduces p's clause structure.
std::string serialize_program(const Program& p);

std::string serialize_clause(const HornClause& c, const SymbolTable& symbols);
std::string serialize_clause(const DualHornClause& c, const SymbolTable& symbols);

// 'single-quoted' form with internal quotes doubled.
std::string quote_atom(std::string_view text);

} // namespace hornet
