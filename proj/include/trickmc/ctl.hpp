#pragma once

#include "trickmc/trick.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trickmc {

// Temporal formula over the atoms p ("last card matches the hidden card")
// and empty ("terminal checkpoint, single card left").
class Formula {
public:
    enum class Kind { p, empty, negation, conjunction, disjunction, af, ag, ef, eg };

    static Formula atom_p();
    static Formula atom_empty();
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula af(Formula f);
    static Formula ag(Formula f);
    static Formula ef(Formula f);
    static Formula eg(Formula f);

    Kind kind() const noexcept { return kind_; }
    // Operand of unary kinds, left operand of binary kinds.
    const Formula& lhs() const { return *lhs_; }
    const Formula& rhs() const { return *rhs_; }

    bool is_temporal() const noexcept { return kind_ >= Kind::af; }

    // Fully parenthesized surface syntax accepted by parse_formula.
    std::string to_string() const;

    friend bool operator==(const Formula& lhs, const Formula& rhs);

private:
    Formula(Kind kind, std::shared_ptr<const Formula> lhs, std::shared_ptr<const Formula> rhs)
        : kind_(kind), lhs_(std::move(lhs)), rhs_(std::move(rhs))
    {
    }

    Kind kind_;
    std::shared_ptr<const Formula> lhs_;
    std::shared_ptr<const Formula> rhs_;
};

class FormulaError : public std::runtime_error {
public:
    FormulaError(std::size_t column, const std::string& message)
        : std::runtime_error("formula column " + std::to_string(column) + ": " + message), column_(column)
    {
    }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

// `p`, `empty`, `!f`, `f & g`, `f | g`, `AF f`, `AG f`, `EF f`, `EG f`,
// parentheses. Prefix operators bind tighter than `&`, which binds tighter
// than `|`.
Formula parse_formula(std::string_view text);

// One branch of the execution tree: the checkpoint observations of one path.
struct Branch {
    ChoiceBinding binding;
    Card hidden = Card::a;
    std::vector<CheckpointState> nodes;
    bool final_answer = false;
    std::size_t op_count = 0;
};

// Virtual root (no valuation) with one branch per complete binding, in
// enumeration order.
struct CheckpointTree {
    std::vector<Branch> branches;

    std::size_t size() const noexcept { return branches.size(); }
    std::size_t total_ops() const noexcept;
    std::size_t max_path_ops() const noexcept;
};

CheckpointTree build_tree(const TrickProgram& program, SlotMode mode = SlotMode::internal_gaps);

struct Evidence {
    enum class Kind { witness, counterexample };

    Kind kind = Kind::witness;
    std::size_t branch_index = 0;
    // Cited checkpoint; absent when the whole branch is the evidence (EG
    // witness, AF counterexample).
    std::optional<std::size_t> node_index;
    Branch branch;
};

struct Verdict {
    bool value = false;
    std::size_t m = 0;
    std::optional<Evidence> evidence;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bounded-path semantics over each branch's finite checkpoint sequence.
// Evidence is attached to top-level EF/EG verdicts that hold and AF/AG
// verdicts that fail: earliest checkpoint on the first qualifying branch.
Verdict eval(const CheckpointTree& tree, const Formula& formula);

// Truth of `formula` at node `index` of `branch`.
bool holds_at(const Branch& branch, std::size_t index, const Formula& formula);

// Per branch, the number of checkpoints where `formula` holds.
std::vector<std::size_t> count_satisfying(const CheckpointTree& tree, const Formula& formula);

struct Explanation {
    std::string text;
    Json json;
};

// Throws EvalError when the verdict carries no evidence.
Explanation explain(const Verdict& verdict, const Formula& formula);

Json to_json(const Evidence& evidence);

}  // namespace trickmc
