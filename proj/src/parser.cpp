#include "hornet/parser.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <sstream>

namespace hornet {

namespace {

enum class Tok { atom, neck, arrow, comma, semi, dot, end };

struct Token {
    Tok kind;
    std::string text; // atom text
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_layout();
        int line = line_, col = col_;
        if (eof())
            return {Tok::end, "", line, col};
        char c = peek();
        if (c == '.') {
            get();
            return {Tok::dot, "", line, col};
        }
        if (c == ',') {
            get();
            return {Tok::comma, "", line, col};
        }
        if (c == ';') {
            get();
            return {Tok::semi, "", line, col};
        }
        if (c == ':') {
            get();
            if (!eof() && peek() == '-') {
                get();
                return {Tok::neck, "", line, col};
            }
            throw ParseError("expected '-' after ':'", line_, col_);
        }
        if (c == '=') {
            get();
            if (!eof() && peek() == '>') {
                get();
                return {Tok::arrow, "", line, col};
            }
            throw ParseError("expected '>' after '='", line_, col_);
        }
        if (c == '\'')
            return quoted_atom(line, col);
        if (std::islower(static_cast<unsigned char>(c)))
            return bare_atom(line, col);
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

private:
    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    char get() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_layout() {
        while (!eof()) {
            char c = peek();
            if (c == '%') {
                while (!eof() && peek() != '\n')
                    get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }

    Token quoted_atom(int line, int col) {
        get(); // opening quote
        std::string text;
        while (true) {
            if (eof())
                throw ParseError("unterminated quote", line, col);
            char c = peek();
            if (c == '\n')
                throw ParseError("raw newline inside quoted atom", line_, col_);
            get();
            if (c == '\'') {
                if (!eof() && peek() == '\'') { // '' escapes a quote
                    get();
                    text.push_back('\'');
                    continue;
                }
                break;
            }
            text.push_back(c);
        }
        return {Tok::atom, text, line, col};
    }

    Token bare_atom(int line, int col) {
        std::string text;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                text.push_back(get());
            else
                break;
        }
        return {Tok::atom, text, line, col};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// One clause in neutral form, before the program kind is settled.
struct RawClause {
    enum class Shape { fact, horn, dual };
    Shape shape;
    Token head;
    std::vector<Token> items;
};

std::vector<RawClause> read_clauses(std::string_view text) {
    Lexer lex(text);
    std::vector<RawClause> clauses;
    Token t = lex.next();
    while (t.kind != Tok::end) {
        if (t.kind != Tok::atom)
            throw ParseError("expected an atom at the start of a clause", t.line, t.column);
        RawClause clause;
        clause.head = t;

        Token sep = lex.next();
        if (sep.kind == Tok::dot) {
            clause.shape = RawClause::Shape::fact;
            clauses.push_back(std::move(clause));
            t = lex.next();
            continue;
        }
        if (sep.kind != Tok::neck && sep.kind != Tok::arrow)
            throw ParseError("expected '.', ':-' or '=>' after clause head", sep.line, sep.column);
        bool horn = sep.kind == Tok::neck;
        clause.shape = horn ? RawClause::Shape::horn : RawClause::Shape::dual;

        while (true) {
            Token item = lex.next();
            if (item.kind != Tok::atom)
                throw ParseError(horn ? "expected a body atom" : "expected a consequent atom",
                                 item.line, item.column);
            clause.items.push_back(item);
            Token after = lex.next();
            if (after.kind == Tok::dot)
                break;
            if (horn && after.kind == Tok::comma)
                continue;
            if (!horn && after.kind == Tok::semi)
                continue;
            if (after.kind == Tok::neck || after.kind == Tok::arrow ||
                after.kind == Tok::comma || after.kind == Tok::semi)
                throw ParseError("mixed connectives in one clause", after.line, after.column);
            if (after.kind == Tok::end)
                throw ParseError("missing final '.'", after.line, after.column);
            throw ParseError("expected '.', ',' or ';'", after.line, after.column);
        }
        clauses.push_back(std::move(clause));
        t = lex.next();
    }
    return clauses;
}

AtomId intern_at(SymbolTable& symbols, const Token& tok) {
    try {
        return symbols.intern(tok.text);
    } catch (const std::invalid_argument&) {
        throw ParseError("empty atom", tok.line, tok.column);
    }
}

} // namespace

Program parse_program(std::string_view text, std::optional<ProgramKind> kind_hint) {
    std::vector<RawClause> raw = read_clauses(text);
    if (raw.empty())
        throw ParseError("empty program", 1, 1);

    ProgramKind kind;
    if (kind_hint) {
        kind = *kind_hint;
    } else {
        // First connective seen decides; a bare fact counts as horn.
        kind = raw.front().shape == RawClause::Shape::dual ? ProgramKind::dual
                                                           : ProgramKind::horn;
    }

    Program p;
    p.kind = kind;
    for (const RawClause& c : raw) {
        if (kind == ProgramKind::horn && c.shape == RawClause::Shape::dual)
            throw ParseError("mixed connectives: dual clause in a horn program",
                             c.head.line, c.head.column);
        if (kind == ProgramKind::dual && c.shape != RawClause::Shape::dual)
            throw ParseError("mixed connectives: horn clause in a dual program",
                             c.head.line, c.head.column);

        AtomId head = intern_at(p.symbols, c.head);
        if (kind == ProgramKind::horn) {
            if (head == kTrueAtom)
                throw ParseError("reserved atom 'true' cannot be a clause head",
                                 c.head.line, c.head.column);
            HornClause clause;
            clause.head = head;
            if (c.shape == RawClause::Shape::fact) {
                clause.body.push_back(kTrueAtom);
            } else {
                for (const Token& item : c.items)
                    clause.body.push_back(intern_at(p.symbols, item));
            }
            p.horn.push_back(std::move(clause));
        } else {
            if (head == kFalseAtom)
                throw ParseError("reserved atom 'false' cannot be a premise",
                                 c.head.line, c.head.column);
            DualHornClause clause;
            clause.premise = head;
            for (const Token& item : c.items)
                clause.consequents.push_back(intern_at(p.symbols, item));
            p.dual.push_back(std::move(clause));
        }
    }
    return p;
}

Program load_json_program(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Map the byte offset back to a line/column diagnostic.
        int line = 1, col = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(std::string("malformed JSON: ") + e.what(), line, col);
    }

    if (!doc.is_array())
        throw ParseError("JSON program must be an array of [head, body] entries", 1, 1);
    if (doc.empty())
        throw ParseError("empty program", 1, 1);

    Program p;
    p.kind = ProgramKind::horn;
    std::size_t entry_no = 0;
    for (const auto& entry : doc) {
        ++entry_no;
        auto fail = [&](const std::string& msg) -> ParseError {
            return ParseError("entry " + std::to_string(entry_no) + ": " + msg, 1, 1);
        };
        if (!entry.is_array() || entry.size() != 2)
            throw fail("expected a 2-element [head, body] entry");
        if (!entry[0].is_string())
            throw fail("head must be a string");
        if (!entry[1].is_array() || entry[1].empty())
            throw fail("body must be a non-empty list of strings");

        auto intern_checked = [&](const std::string& s) {
            try {
                return p.symbols.intern(s);
            } catch (const std::invalid_argument&) {
                throw fail("empty atom");
            }
        };
        HornClause clause;
        clause.head = intern_checked(entry[0].get<std::string>());
        if (clause.head == kTrueAtom)
            throw fail("reserved atom 'true' cannot be a clause head");
        for (const auto& b : entry[1]) {
            if (!b.is_string())
                throw fail("body atom must be a string");
            clause.body.push_back(intern_checked(b.get<std::string>()));
        }
        p.horn.push_back(std::move(clause));
    }
    return p;
}

std::string quote_atom(std::string_view text) {
    std::string out;
    out.reserve(text.size() + 2);
    out.push_back('\'');
    for (char c : text) {
        if (c == '\'')
            out.push_back('\'');
        out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

std::string serialize_clause(const HornClause& c, const SymbolTable& symbols) {
    std::string out = quote_atom(symbols.text(c.head));
    out += " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (i)
            out += ", ";
        out += quote_atom(symbols.text(c.body[i]));
    }
    out += '.';
    return out;
}

std::string serialize_clause(const DualHornClause& c, const SymbolTable& symbols) {
    std::string out = quote_atom(symbols.text(c.premise));
    out += " => ";
    for (std::size_t i = 0; i < c.consequents.size(); ++i) {
        if (i)
            out += "; ";
        out += quote_atom(symbols.text(c.consequents[i]));
    }
    out += '.';
    return out;
}

std::string serialize_program(const Program& p) {
    std::string out;
    if (p.kind == ProgramKind::horn) {
        for (const HornClause& c : p.horn) {
            out += serialize_clause(c, p.symbols);
            out += '\n';
        }
    } else {
        for (const DualHornClause& c : p.dual) {
            out += serialize_clause(c, p.symbols);
            out += '\n';
        }
    }
    return out;
}

} // namespace hornet
