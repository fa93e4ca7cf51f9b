#include "hornet/dcg.hpp"

#include "hornet/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace hornet {

namespace {

// Long answers may arrive wrapped over several lines; they are joined to a
// single line before any comparison or interning.
std::string collapse_ws(const std::string& text) {
    std::string out;
    bool in_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty())
            out.push_back(' ');
        in_space = false;
        out.push_back(c);
    }
    return out;
}

std::string join_items(const std::vector<std::string>& items) {
    std::string joined;
    for (const auto& item : items) {
        if (!joined.empty())
            joined.push_back(' ');
        joined += item;
    }
    return joined;
}

struct TreeBuilder {
    int depth_limit;
    Oracle& oracle;
    QABuildStats* stats;

    QANode build(const std::string& question, int depth,
                 std::vector<std::string>& path_questions,
                 std::vector<std::string>& path_answers) {
        QANode node;
        node.question = question;
        if (depth >= depth_limit) {
            node.state = QANode::State::open;
            return node;
        }

        OracleRequest answer_req{Purpose::answer, question, path_questions, {}};
        std::string answer = collapse_ws(join_items(oracle.ask(answer_req).items));

        if (std::find(path_answers.begin(), path_answers.end(), answer) !=
            path_answers.end()) {
            // Paths stay free of repeated answers; the duplicate goes to
            // its own bin instead of the grammar.
            node.state = QANode::State::repeated_answer;
            node.answer = answer;
            return node;
        }
        node.state = QANode::State::answered;
        node.answer = answer;

        path_questions.push_back(question);
        path_answers.push_back(answer);
        OracleRequest follow_req{Purpose::followups, question, path_questions, {}};
        for (const std::string& raw : oracle.ask(follow_req).items) {
            std::string follow = collapse_ws(raw);
            if (std::find(path_questions.begin(), path_questions.end(), follow) !=
                path_questions.end()) {
                if (stats)
                    stats->dropped_loops.push_back(follow); // loop cut
                continue;
            }
            node.children.push_back(build(follow, depth + 1, path_questions, path_answers));
        }
        path_questions.pop_back();
        path_answers.pop_back();
        return node;
    }
};

} // namespace

QANode build_qatree(const std::string& initiator, int depth, Oracle& oracle,
                    QABuildStats* stats) {
    if (depth < 0)
        throw std::invalid_argument("depth must be non-negative");
    TreeBuilder builder{depth, oracle, stats};
    std::vector<std::string> qs, as;
    return builder.build(collapse_ws(initiator), 0, qs, as);
}

// ---------------------------------------------------------------- grammar

namespace {

struct GrammarBuilder {
    DCGGrammar g;
    std::map<std::string, int> answer_index;
    std::map<std::string, std::size_t> opens_index;
    // Per answered node, in q-index order: its answer terminal and the
    // q-indices of its answered children.
    std::vector<std::pair<int, std::vector<int>>> node_rules;

    int intern_answer(const std::string& text) {
        auto it = answer_index.find(text);
        if (it != answer_index.end())
            return it->second;
        int id = static_cast<int>(g.answer_texts.size());
        g.answer_texts.push_back(text);
        answer_index.emplace(text, id);
        return id;
    }

    void count_open(const std::string& question) {
        auto it = opens_index.find(question);
        if (it != opens_index.end()) {
            ++g.opens[it->second].second;
            return;
        }
        opens_index.emplace(question, g.opens.size());
        g.opens.emplace_back(question, 1);
    }

    // Preorder pass: q-indices over answered nodes, a-indices by first
    // occurrence; open and repeated-answer nodes feed their bins only.
    std::optional<int> visit(const QANode& node) {
        switch (node.state) {
        case QANode::State::open:
            count_open(node.question);
            return std::nullopt;
        case QANode::State::repeated_answer:
            g.repeated_answers.push_back(node.answer.value_or(""));
            return std::nullopt;
        case QANode::State::answered:
            break;
        }
        int q = static_cast<int>(g.question_texts.size());
        g.question_texts.push_back(node.question);
        node_rules.emplace_back(intern_answer(*node.answer), std::vector<int>{});

        for (const QANode& child : node.children)
            if (std::optional<int> child_q = visit(child))
                node_rules[q].second.push_back(*child_q);
        return q;
    }

    // Emission pass: rules grouped by nonterminal in q-index order. An
    // answered node without answered children ends its branch with a
    // terminal-only rule.
    void emit_rules() {
        for (int q = 0; q < static_cast<int>(node_rules.size()); ++q) {
            const auto& [answer, children] = node_rules[q];
            if (children.empty())
                g.rules.push_back({q, answer, std::nullopt});
            else
                for (int child : children)
                    g.rules.push_back({q, answer, child});
        }
    }
};

} // namespace

DCGGrammar tree_to_dcg(const QANode& root) {
    GrammarBuilder builder;
    builder.visit(root);
    builder.emit_rules();
    return std::move(builder.g);
}

// --------------------------------------------------------------- rendering

namespace {

std::string prolog_quote(const std::string& text) {
    std::string out = "'";
    for (char c : text) {
        if (c == '\'')
            out += "''";
        else
            out.push_back(c);
    }
    out += "'";
    return out;
}

constexpr const char* kDriver =
    "go:-q0(Xs,[]),nl,member(X,Xs),write(X),nl,nl,fail.";

} // namespace

std::string render_dcg(const DCGGrammar& g) {
    std::ostringstream out;
    for (const DcgRule& r : g.rules) {
        out << 'q' << r.lhs << "-->q" << r.lhs << "_,a" << r.answer << '_';
        if (r.next)
            out << ",q" << *r.next;
        out << ".\n";
    }
    out << '\n';
    for (std::size_t i = 0; i < g.question_texts.size(); ++i)
        out << 'q' << i << "_-->[" << prolog_quote("Q: " + g.question_texts[i]) << "].\n";
    out << '\n';
    for (std::size_t i = 0; i < g.answer_texts.size(); ++i)
        out << 'a' << i << "_-->[" << prolog_quote("A: " + g.answer_texts[i]) << "].\n";
    out << '\n';
    for (const auto& [question, count] : g.opens)
        out << "opens(" << prolog_quote(question) << ',' << count << ").\n";
    for (const auto& answer : g.repeated_answers)
        out << "repeated_answer(" << prolog_quote(answer) << ").\n";
    out << '\n' << kDriver << '\n';
    return out.str();
}

// ------------------------------------------------------------------ reader

namespace {

struct LineParser {
    const std::string& line;
    std::size_t pos = 0;
    int line_no;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_no, static_cast<int>(pos) + 1);
    }

    bool eat(std::string_view lit) {
        if (line.compare(pos, lit.size(), lit) == 0) {
            pos += lit.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view lit) {
        if (!eat(lit))
            fail("expected '" + std::string(lit) + "'");
    }

    int number() {
        std::size_t start = pos;
        while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos])))
            ++pos;
        if (pos == start)
            fail("expected a number");
        return std::stoi(line.substr(start, pos - start));
    }

    std::string quoted() {
        expect("'");
        std::string text;
        while (true) {
            if (pos >= line.size())
                fail("unterminated quote");
            char c = line[pos++];
            if (c == '\'') {
                if (pos < line.size() && line[pos] == '\'') {
                    ++pos;
                    text.push_back('\'');
                    continue;
                }
                return text;
            }
            text.push_back(c);
        }
    }
};

} // namespace

DCGGrammar parse_dcg(const std::string& text) {
    DCGGrammar g;
    std::map<int, std::string> questions, answers;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty())
            continue;
        LineParser p{line, 0, line_no};
        if (line.rfind("go:-", 0) == 0)
            continue;
        if (p.eat("opens(")) {
            std::string q = p.quoted();
            p.expect(",");
            int count = p.number();
            p.expect(").");
            g.opens.emplace_back(std::move(q), count);
            continue;
        }
        if (p.eat("repeated_answer(")) {
            g.repeated_answers.push_back(p.quoted());
            p.expect(").");
            continue;
        }
        if (p.eat("q")) {
            int idx = p.number();
            if (p.eat("_-->[")) { // question terminal
                questions[idx] = p.quoted();
                p.expect("].");
                continue;
            }
            p.expect("-->q");
            int lhs2 = p.number();
            if (lhs2 != idx)
                p.fail("rule terminal must match its nonterminal");
            p.expect("_,a");
            DcgRule rule;
            rule.lhs = idx;
            rule.answer = p.number();
            p.expect("_");
            if (p.eat(",q"))
                rule.next = p.number();
            p.expect(".");
            g.rules.push_back(rule);
            continue;
        }
        if (p.eat("a")) {
            int idx = p.number();
            p.expect("_-->[");
            answers[idx] = p.quoted();
            p.expect("].");
            continue;
        }
        p.fail("unrecognized grammar line");
    }

    auto strip_prefix = [&](std::map<int, std::string>& table, std::string_view prefix,
                            std::vector<std::string>& out) {
        int expect_idx = 0;
        for (auto& [idx, t] : table) {
            if (idx != expect_idx++)
                throw ParseError("non-contiguous terminal indices", 1, 1);
            if (t.rfind(prefix, 0) != 0)
                throw ParseError("terminal text missing its prefix", 1, 1);
            out.push_back(t.substr(prefix.size()));
        }
    };
    strip_prefix(questions, "Q: ", g.question_texts);
    strip_prefix(answers, "A: ", g.answer_texts);
    return g;
}

// -------------------------------------------------------------- generation

std::vector<std::vector<std::string>> generate_language(const DCGGrammar& g) {
    // Rules grouped by nonterminal, in emission order.
    std::map<int, std::vector<const DcgRule*>> by_lhs;
    for (const DcgRule& r : g.rules)
        by_lhs[r.lhs].push_back(&r);

    std::vector<std::vector<std::string>> sentences;
    std::vector<std::string> prefix;

    auto terminal_q = [&](int i) { return "Q: " + g.question_texts.at(i); };
    auto terminal_a = [&](int i) { return "A: " + g.answer_texts.at(i); };

    auto gen = [&](auto&& self, int q) -> void {
        auto it = by_lhs.find(q);
        if (it == by_lhs.end())
            return; // dead nonterminal: nothing generated down this branch
        for (const DcgRule* r : it->second) {
            prefix.push_back(terminal_q(r->lhs));
            prefix.push_back(terminal_a(r->answer));
            if (r->next)
                self(self, *r->next);
            else
                sentences.push_back(prefix);
            prefix.pop_back();
            prefix.pop_back();
        }
    };
    if (!g.rules.empty())
        gen(gen, 0);
    return sentences;
}

} // namespace hornet
