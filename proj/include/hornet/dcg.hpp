#pragma once

#include "hornet/oracle.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hornet {

/// A node of the question/answer tree. Frontier nodes at the depth limit
/// stay open; a node whose answer duplicates one already on its root path
/// is cut and only contributes to the repeated-answer bin.
struct QANode {
    enum class State { answered, open, repeated_answer };

    std::string question;
    std::optional<std::string> answer; // absent iff state == open
    State state = State::open;
    std::vector<QANode> children;
};

struct QABuildStats {
    // Loop-inducing follow-ups dropped during the build; these are logged
    // here and never counted as open questions.
    std::vector<std::string> dropped_loops;
};

/// Recursive build: each node below the depth limit is answered
/// (purpose=answer) and then expanded through its follow-up questions
/// (purpose=followups). A follow-up equal to any question on the current
/// path is dropped; answers are whitespace-collapsed before comparison.
QANode build_qatree(const std::string& initiator, int depth, Oracle& oracle,
                    QABuildStats* stats = nullptr);

// q_lhs --> q_lhs_, a_answer_ [, q_next].
struct DcgRule {
    int lhs = 0;
    int answer = 0;
    std::optional<int> next;

    friend bool operator==(const DcgRule&, const DcgRule&) = default;
};

/// A grammar generating a finite language: the rule graph is a DAG rooted
/// at q0, terminals carry the question/answer texts, opens/2 counts the
/// questions left open at the depth limit across all branches.
struct DCGGrammar {
    std::vector<DcgRule> rules;
    std::vector<std::string> question_texts; // index i -> text behind q<i>_
    std::vector<std::string> answer_texts;   // index j -> text behind a<j>_
    std::vector<std::pair<std::string, int>> opens; // first-occurrence order
    std::vector<std::string> repeated_answers;

    friend bool operator==(const DCGGrammar&, const DCGGrammar&) = default;
};

/// Compile a tree to a grammar: q-indices in preorder over answered nodes,
/// a-indices in first-occurrence order; one rule per answered child, a
/// terminal-only rule for answered nodes without answered children.
DCGGrammar tree_to_dcg(const QANode& root);

/// Prolog-loadable text: rules, 'Q: '/'A: ' terminal productions, opens/2
/// and repeated_answer/1 facts, and the go/0 generation driver.
std::string render_dcg(const DCGGrammar& g);

/// Reads render_dcg output back into a structurally equal grammar.
/// Throws ParseError on malformed input.
DCGGrammar parse_dcg(const std::string& text);

/// Enumerate every root-to-leaf terminal sequence in rule order. Sentences
/// alternate Q-terminals and A-terminals; termination is guaranteed by the
/// DAG invariant.
std::vector<std::vector<std::string>> generate_language(const DCGGrammar& g);

} // namespace hornet
