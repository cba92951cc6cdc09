#include "trickmc/ctl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace trickmc {

Formula Formula::atom_p() { return Formula(Kind::p, nullptr, nullptr); }
Formula Formula::atom_empty() { return Formula(Kind::empty, nullptr, nullptr); }

Formula Formula::negation(Formula f)
{
    return Formula(Kind::negation, std::make_shared<const Formula>(std::move(f)), nullptr);
}
Formula Formula::conjunction(Formula lhs, Formula rhs)
{
    return Formula(Kind::conjunction, std::make_shared<const Formula>(std::move(lhs)),
                   std::make_shared<const Formula>(std::move(rhs)));
}
Formula Formula::disjunction(Formula lhs, Formula rhs)
{
    return Formula(Kind::disjunction, std::make_shared<const Formula>(std::move(lhs)),
                   std::make_shared<const Formula>(std::move(rhs)));
}
Formula Formula::af(Formula f) { return Formula(Kind::af, std::make_shared<const Formula>(std::move(f)), nullptr); }
Formula Formula::ag(Formula f) { return Formula(Kind::ag, std::make_shared<const Formula>(std::move(f)), nullptr); }
Formula Formula::ef(Formula f) { return Formula(Kind::ef, std::make_shared<const Formula>(std::move(f)), nullptr); }
Formula Formula::eg(Formula f) { return Formula(Kind::eg, std::make_shared<const Formula>(std::move(f)), nullptr); }

bool operator==(const Formula& lhs, const Formula& rhs)
{
    if (lhs.kind_ != rhs.kind_) return false;
    if ((lhs.lhs_ == nullptr) != (rhs.lhs_ == nullptr) || (lhs.rhs_ == nullptr) != (rhs.rhs_ == nullptr)) {
        return false;
    }
    if (lhs.lhs_ && !(*lhs.lhs_ == *rhs.lhs_)) return false;
    if (lhs.rhs_ && !(*lhs.rhs_ == *rhs.rhs_)) return false;
    return true;
}

namespace {

void render(std::ostringstream& out, const Formula& f, bool nested)
{
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::p: out << "p"; return;
    case K::empty: out << "empty"; return;
    case K::negation:
        out << "!";
        render(out, f.lhs(), true);
        return;
    case K::af: out << "AF "; break;
    case K::ag: out << "AG "; break;
    case K::ef: out << "EF "; break;
    case K::eg: out << "EG "; break;
    case K::conjunction:
    case K::disjunction:
        if (nested) out << "(";
        render(out, f.lhs(), true);
        out << (f.kind() == K::conjunction ? " & " : " | ");
        render(out, f.rhs(), true);
        if (nested) out << ")";
        return;
    }
    render(out, f.lhs(), true);
}

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    Formula run()
    {
        Formula f = disjunction();
        skip_space();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw FormulaError(pos_ + 1, message); }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char ch)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    Formula disjunction()
    {
        Formula f = conjunction();
        while (eat('|')) f = Formula::disjunction(std::move(f), conjunction());
        return f;
    }

    Formula conjunction()
    {
        Formula f = unary();
        while (eat('&')) f = Formula::conjunction(std::move(f), unary());
        return f;
    }

    Formula unary()
    {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of formula");
        if (eat('!')) return Formula::negation(unary());
        if (eat('(')) {
            Formula f = disjunction();
            if (!eat(')')) fail(pos_ < text_.size() ? "expected ')'" : "unexpected end of formula, expected ')'");
            return f;
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view word = text_.substr(start, pos_ - start);
        if (word == "p") return Formula::atom_p();
        if (word == "empty") return Formula::atom_empty();
        if (word == "AF") return Formula::af(unary());
        if (word == "AG") return Formula::ag(unary());
        if (word == "EF") return Formula::ef(unary());
        if (word == "EG") return Formula::eg(unary());
        pos_ = start;
        if (word.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        fail("unknown operator or atom '" + std::string(word) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

bool any_node(const Branch& branch, std::size_t from, const Formula& f)
{
    for (std::size_t i = from; i < branch.nodes.size(); ++i) {
        if (holds_at(branch, i, f)) return true;
    }
    return false;
}

bool all_nodes(const Branch& branch, std::size_t from, const Formula& f)
{
    for (std::size_t i = from; i < branch.nodes.size(); ++i) {
        if (!holds_at(branch, i, f)) return false;
    }
    return true;
}

std::optional<std::size_t> first_node(const Branch& branch, const Formula& f, bool wanted)
{
    for (std::size_t i = 0; i < branch.nodes.size(); ++i) {
        if (holds_at(branch, i, f) == wanted) return i;
    }
    return std::nullopt;
}

// At the virtual root atoms are false and temporal operators quantify over
// branches, starting at each branch's first checkpoint.
bool holds_at_root(const CheckpointTree& tree, const Formula& f)
{
    using K = Formula::Kind;
    const auto& branches = tree.branches;
    switch (f.kind()) {
    case K::p:
    case K::empty: return false;
    case K::negation: return !holds_at_root(tree, f.lhs());
    case K::conjunction: return holds_at_root(tree, f.lhs()) && holds_at_root(tree, f.rhs());
    case K::disjunction: return holds_at_root(tree, f.lhs()) || holds_at_root(tree, f.rhs());
    case K::af:
        return std::all_of(branches.begin(), branches.end(), [&](const Branch& b) { return any_node(b, 0, f.lhs()); });
    case K::ag:
        return std::all_of(branches.begin(), branches.end(), [&](const Branch& b) { return all_nodes(b, 0, f.lhs()); });
    case K::ef:
        return std::any_of(branches.begin(), branches.end(), [&](const Branch& b) { return any_node(b, 0, f.lhs()); });
    case K::eg:
        return std::any_of(branches.begin(), branches.end(), [&](const Branch& b) { return all_nodes(b, 0, f.lhs()); });
    }
    return false;
}

std::optional<Evidence> find_evidence(const CheckpointTree& tree, const Formula& f, bool value)
{
    using K = Formula::Kind;
    const auto& branches = tree.branches;
    for (std::size_t b = 0; b < branches.size(); ++b) {
        const Branch& branch = branches[b];
        if (f.kind() == K::ef && value) {
            if (auto node = first_node(branch, f.lhs(), true)) return Evidence{Evidence::Kind::witness, b, node, branch};
        } else if (f.kind() == K::eg && value) {
            if (all_nodes(branch, 0, f.lhs())) return Evidence{Evidence::Kind::witness, b, std::nullopt, branch};
        } else if (f.kind() == K::ag && !value) {
            if (auto node = first_node(branch, f.lhs(), false)) {
                return Evidence{Evidence::Kind::counterexample, b, node, branch};
            }
        } else if (f.kind() == K::af && !value) {
            if (!any_node(branch, 0, f.lhs())) {
                return Evidence{Evidence::Kind::counterexample, b, std::nullopt, branch};
            }
        } else {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::string mark(bool value) { return value ? "T" : "F"; }

}  // namespace

std::string Formula::to_string() const
{
    std::ostringstream out;
    render(out, *this, false);
    return out.str();
}

Formula parse_formula(std::string_view text) { return FormulaParser(text).run(); }

bool holds_at(const Branch& branch, std::size_t index, const Formula& f)
{
    using K = Formula::Kind;
    const CheckpointState& node = branch.nodes.at(index);
    switch (f.kind()) {
    case K::p: return node.p;
    case K::empty: return node.empty;
    case K::negation: return !holds_at(branch, index, f.lhs());
    case K::conjunction: return holds_at(branch, index, f.lhs()) && holds_at(branch, index, f.rhs());
    case K::disjunction: return holds_at(branch, index, f.lhs()) || holds_at(branch, index, f.rhs());
    // A checkpoint inside a branch has exactly one future, so A and E agree.
    case K::af:
    case K::ef: return any_node(branch, index, f.lhs());
    case K::ag:
    case K::eg: return all_nodes(branch, index, f.lhs());
    }
    return false;
}

std::size_t CheckpointTree::total_ops() const noexcept
{
    std::size_t total = 0;
    for (const auto& branch : branches) total += branch.op_count;
    return total;
}

std::size_t CheckpointTree::max_path_ops() const noexcept
{
    std::size_t most = 0;
    for (const auto& branch : branches) most = std::max(most, branch.op_count);
    return most;
}

CheckpointTree build_tree(const TrickProgram& program, SlotMode mode)
{
    CheckpointTree tree;
    for (auto& binding : enumerate_bindings(program, mode)) {
        PathRecord record;
        try {
            record = run_path(program, binding, mode);
        } catch (const TrickError& e) {
            throw TrickError(e.code(), std::string(e.what()) + " [binding " + binding.to_string() + "]");
        }
        tree.branches.push_back(Branch{std::move(record.binding), record.hidden, std::move(record.checkpoints),
                                       record.final_answer, record.actions.size()});
    }
    return tree;
}

Verdict eval(const CheckpointTree& tree, const Formula& formula)
{
    if (tree.branches.empty()) throw EvalError("cannot evaluate a formula over a tree without branches");
    Verdict verdict;
    verdict.m = tree.size();
    verdict.value = holds_at_root(tree, formula);
    verdict.evidence = find_evidence(tree, formula, verdict.value);
    return verdict;
}

std::vector<std::size_t> count_satisfying(const CheckpointTree& tree, const Formula& formula)
{
    std::vector<std::size_t> counts;
    counts.reserve(tree.size());
    for (const auto& branch : tree.branches) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < branch.nodes.size(); ++i) n += holds_at(branch, i, formula) ? 1 : 0;
        counts.push_back(n);
    }
    return counts;
}

Json to_json(const Evidence& evidence)
{
    Json trace = Json::array();
    for (std::size_t i = 0; i < evidence.branch.nodes.size(); ++i) {
        Json node = to_json(evidence.branch.nodes[i]);
        if (evidence.node_index && *evidence.node_index == i) node["cited"] = true;
        trace.push_back(std::move(node));
    }
    Json out{{"kind", evidence.kind == Evidence::Kind::witness ? "witness" : "counterexample"},
             {"branch", evidence.branch_index},
             {"binding", to_json(evidence.branch.binding)},
             {"hidden", std::string(1, to_char(evidence.branch.hidden))}};
    if (evidence.node_index) {
        out["checkpoint"] = evidence.branch.nodes[*evidence.node_index].label;
    } else {
        out["checkpoint"] = nullptr;
    }
    out["trace"] = std::move(trace);
    out["final"] = evidence.branch.final_answer ? "yes" : "no";
    return out;
}

Explanation explain(const Verdict& verdict, const Formula& formula)
{
    if (!verdict.evidence) {
        throw EvalError("verdict for " + formula.to_string() + " carries no witness or counterexample");
    }
    const Evidence& evidence = *verdict.evidence;
    const Branch& branch = evidence.branch;
    std::ostringstream text;
    text << (evidence.kind == Evidence::Kind::witness ? "witness" : "counterexample") << " for "
         << formula.to_string() << ": branch " << evidence.branch_index + 1 << " of " << verdict.m << '\n';
    text << "  binding: " << branch.binding.to_string() << '\n';
    text << "  hidden:  " << to_char(branch.hidden) << '\n';
    for (std::size_t i = 0; i < branch.nodes.size(); ++i) {
        const auto& node = branch.nodes[i];
        text << "  checkpoint " << node.label << ": [" << node.deck.to_string() << "] p=" << mark(node.p)
             << " empty=" << mark(node.empty);
        if (evidence.node_index && *evidence.node_index == i) text << "   <==";
        text << '\n';
    }
    text << "  final: " << (branch.final_answer ? "yes" : "no") << '\n';
    return Explanation{text.str(), to_json(evidence)};
}

}  // namespace trickmc
