#include "trickmc/trick.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace trickmc {

std::string_view to_string(ChoiceKind kind) noexcept
{
    switch (kind) {
    case ChoiceKind::name_length: return "name_length";
    case ChoiceKind::native_place: return "native_place";
    case ChoiceKind::gender: return "gender";
    case ChoiceKind::insert_slot: return "insert_slot";
    }
    return "?";
}

std::string_view to_string(SlotMode mode) noexcept
{
    switch (mode) {
    case SlotMode::internal_gaps: return "internal_gaps";
    case SlotMode::exclude_adjacent: return "exclude_adjacent";
    case SlotMode::unrestricted: return "unrestricted";
    }
    return "?";
}

std::optional<SlotMode> parse_slot_mode(std::string_view text) noexcept
{
    for (SlotMode mode : {SlotMode::internal_gaps, SlotMode::exclude_adjacent, SlotMode::unrestricted}) {
        if (text == to_string(mode)) return mode;
    }
    return std::nullopt;
}

std::vector<int> slot_domain(SlotMode mode, std::size_t remaining)
{
    const int r = static_cast<int>(remaining);
    int lo = 0;
    int hi = r;
    switch (mode) {
    case SlotMode::internal_gaps: lo = 1, hi = r - 1; break;
    case SlotMode::exclude_adjacent: lo = 2, hi = r - 2; break;
    case SlotMode::unrestricted: break;
    }
    std::vector<int> slots;
    for (int s = lo; s <= hi; ++s) slots.push_back(s);
    return slots;
}

bool operator==(const Repeat& lhs, const Repeat& rhs) { return lhs.times == rhs.times && lhs.body == rhs.body; }
bool operator==(const IfGenderMale& lhs, const IfGenderMale& rhs) { return lhs.body == rhs.body; }
bool operator==(const Instruction& lhs, const Instruction& rhs) { return lhs.node == rhs.node; }

ChoiceKind kind_for_name(std::string_view name) noexcept
{
    if (name == "gender") return ChoiceKind::gender;
    if (name == "native") return ChoiceKind::native_place;
    return ChoiceKind::name_length;
}

bool is_identifier(std::string_view text) noexcept
{
    if (text.empty() || std::isdigit(static_cast<unsigned char>(text[0]))) return false;
    return std::all_of(text.begin(), text.end(),
                       [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

bool is_reserved_word(std::string_view text) noexcept
{
    static constexpr std::string_view kReserved[] = {
        "deck",        "choice", "in",      "internal",   "rotate",     "move_block",        "slot",
        "take_hidden", "drop",   "repeat",  "if_male",    "checkpoint", "move_first_to_end", "final_check",
    };
    return std::find(std::begin(kReserved), std::end(kReserved), text) != std::end(kReserved);
}

const ChoiceVar* TrickProgram::find_choice(std::string_view name) const noexcept
{
    for (const auto& choice : choices) {
        if (choice.name == name) return &choice;
    }
    return nullptr;
}

//---------------------------------------------------------------------------
// validation

namespace {

const ChoiceVar* gender_choice(const TrickProgram& program) noexcept
{
    for (const auto& choice : program.choices) {
        if (choice.kind == ChoiceKind::gender) return &choice;
    }
    return nullptr;
}

class Validator {
public:
    explicit Validator(const TrickProgram& program) : program_(program) {}

    void run()
    {
        check_choices();
        const Block& top = program_.instructions;
        if (top.empty() || !std::holds_alternative<FinalCheck>(top.back().node)) {
            fail(top.empty() ? std::nullopt : std::optional<std::size_t>(top.size() - 1),
                 "FinalCheck must be the last instruction");
        }
        for (index_ = 0; index_ < top.size(); ++index_) visit(top[index_], /*nested=*/false);
        if (!seen_hidden_) fail(std::nullopt, "TakeHidden missing");
        for (const auto& choice : program_.choices) {
            if (choice.kind == ChoiceKind::insert_slot && slot_uses_[choice.name] != 1) {
                fail(std::nullopt, "insert_slot choice '" + choice.name +
                                       "' must be the slot of exactly one top-level move_block");
            }
        }
    }

private:
    [[noreturn]] void fail(std::optional<std::size_t> index, const std::string& message) const
    {
        throw ValidationError(index, message);
    }
    [[noreturn]] void fail(const std::string& message) const { fail(index_, message); }

    void check_choices()
    {
        if (program_.initial_deck.empty()) fail(std::nullopt, "deck must not be empty");
        std::set<std::string> names;
        std::size_t genders = 0;
        for (const auto& choice : program_.choices) {
            if (choice.name.empty()) fail(std::nullopt, "choice without a name");
            if (!names.insert(choice.name).second) fail(std::nullopt, "duplicate choice '" + choice.name + "'");
            if (!is_identifier(choice.name) || is_reserved_word(choice.name)) {
                fail(std::nullopt, "'" + choice.name + "' is not a usable choice name");
            }
            if (choice.kind != ChoiceKind::insert_slot && choice.kind != kind_for_name(choice.name)) {
                fail(std::nullopt, "choice '" + choice.name + "' must have kind " +
                                       std::string(to_string(kind_for_name(choice.name))));
            }
            if (choice.kind == ChoiceKind::insert_slot && kind_for_name(choice.name) != ChoiceKind::name_length) {
                fail(std::nullopt, "'" + choice.name + "' cannot name an insert_slot choice");
            }
            if (choice.kind == ChoiceKind::insert_slot) {
                if (!choice.domain.empty()) {
                    fail(std::nullopt, "insert_slot choice '" + choice.name + "' takes its domain from the deck");
                }
                slot_uses_[choice.name] = 0;
                continue;
            }
            if (choice.domain.empty()) fail(std::nullopt, "choice '" + choice.name + "' has an empty domain");
            std::set<int> seen;
            for (int v : choice.domain) {
                if (v < 0) fail(std::nullopt, "choice '" + choice.name + "' has a negative value");
                if (!seen.insert(v).second) fail(std::nullopt, "choice '" + choice.name + "' repeats a value");
                if (choice.kind == ChoiceKind::gender && v != 1 && v != 2) {
                    fail(std::nullopt, "gender values must be 1 (male) or 2 (female)");
                }
                if (choice.kind == ChoiceKind::native_place && (v < 1 || v > 3)) {
                    fail(std::nullopt, "native place values must be 1, 2 or 3");
                }
            }
            if (choice.kind == ChoiceKind::gender) ++genders;
        }
        if (genders > 1) fail(std::nullopt, "more than one gender choice");
    }

    void check_operand(const Operand& operand, bool is_slot, bool nested)
    {
        if (const int* literal = std::get_if<int>(&operand)) {
            if (*literal < 0) fail("negative literal");
            return;
        }
        const auto& name = std::get<std::string>(operand);
        const ChoiceVar* choice = program_.find_choice(name);
        if (choice == nullptr) fail("undeclared choice '" + name + "'");
        if (choice->kind == ChoiceKind::insert_slot) {
            if (!is_slot || nested) {
                fail("insert_slot choice '" + name + "' may only be the slot of a top-level move_block");
            }
            ++slot_uses_[name];
        }
    }

    void visit(const Instruction& instruction, bool nested)
    {
        std::visit(
            [&](const auto& op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, Rotate> || std::is_same_v<T, Drop>) {
                    check_operand(op.count, false, nested);
                } else if constexpr (std::is_same_v<T, MoveBlock>) {
                    check_operand(op.block_len, false, nested);
                    check_operand(op.slot, true, nested);
                } else if constexpr (std::is_same_v<T, TakeHidden>) {
                    if (nested) fail("TakeHidden must be a top-level instruction");
                    if (seen_hidden_) fail("TakeHidden appears more than once");
                    seen_hidden_ = true;
                } else if constexpr (std::is_same_v<T, Repeat>) {
                    if (op.times < 0) fail("negative repeat count");
                    for (const auto& inner : op.body) visit(inner, true);
                } else if constexpr (std::is_same_v<T, IfGenderMale>) {
                    if (gender_choice(program_) == nullptr) fail("if_male requires a gender choice");
                    for (const auto& inner : op.body) visit(inner, true);
                } else if constexpr (std::is_same_v<T, Checkpoint>) {
                    if (!seen_hidden_) fail("TakeHidden must precede every Checkpoint");
                } else if constexpr (std::is_same_v<T, FinalCheck>) {
                    if (nested || index_ + 1 != program_.instructions.size()) {
                        fail("FinalCheck must be the last instruction");
                    }
                }
            },
            instruction.node);
    }

    const TrickProgram& program_;
    std::size_t index_ = 0;
    bool seen_hidden_ = false;
    std::map<std::string, int> slot_uses_;
};

}  // namespace

void validate(const TrickProgram& program) { Validator(program).run(); }

//---------------------------------------------------------------------------
// bindings

ChoiceBinding::ChoiceBinding(std::initializer_list<std::pair<std::string, int>> entries)
{
    for (const auto& [name, value] : entries) set(name, value);
}

void ChoiceBinding::set(const std::string& name, int value)
{
    for (auto& entry : entries_) {
        if (entry.first == name) {
            entry.second = value;
            return;
        }
    }
    entries_.emplace_back(name, value);
}

std::optional<int> ChoiceBinding::get(std::string_view name) const noexcept
{
    for (const auto& entry : entries_) {
        if (entry.first == name) return entry.second;
    }
    return std::nullopt;
}

ChoiceBinding ChoiceBinding::in_declaration_order(const TrickProgram& program) const
{
    ChoiceBinding ordered;
    for (const auto& choice : program.choices) {
        if (auto value = get(choice.name)) ordered.set(choice.name, *value);
    }
    for (const auto& [name, value] : entries_) {
        if (!ordered.contains(name)) ordered.set(name, value);
    }
    return ordered;
}

std::string ChoiceBinding::to_string() const
{
    std::string out;
    for (const auto& [name, value] : entries_) {
        if (!out.empty()) out += ' ';
        out += name + "=" + std::to_string(value);
    }
    return out;
}

std::string Action::label() const
{
    switch (kind) {
    case Kind::rotate1: return "rotate1";
    case Kind::move_block: return "moveblock(" + std::to_string(block_len) + "," + std::to_string(slot) + ")";
    case Kind::take_hidden: return "takehidden";
    case Kind::drop1: return "drop1";
    case Kind::move_first_to_end: return "movefirsttoend";
    }
    return "?";
}

//---------------------------------------------------------------------------
// execution

namespace {

// Thrown internally to unwind when an unbound choice is needed.
struct Suspend {};

class Interpreter {
public:
    Interpreter(const TrickProgram& program, const ChoiceBinding& binding, SlotMode mode, PathProgress& out)
        : program_(program), binding_(binding), mode_(mode), out_(out)
    {
    }

    void run()
    {
        out_.deck = program_.initial_deck;
        try {
            exec(program_.instructions);
        } catch (const Suspend&) {
            return;
        }
        for (const auto& choice : program_.choices) {
            if (!binding_.contains(choice.name)) {
                out_.pending = PendingChoice{choice.name, choice.kind, choice.domain};
                return;
            }
        }
    }

private:
    [[noreturn]] static void malformed(const std::string& message)
    {
        throw TrickError(TrickError::Code::malformed_program, message);
    }

    // Value of `operand`; `live` is the set of values acceptable at this point
    // (nullptr when any declared value is acceptable).
    int resolve(const Operand& operand, const std::vector<int>* live)
    {
        if (const int* literal = std::get_if<int>(&operand)) {
            if (live != nullptr && std::find(live->begin(), live->end(), *literal) == live->end()) {
                malformed("literal slot " + std::to_string(*literal) + " is not available on a deck of " +
                          std::to_string(out_.deck.size()) + " cards");
            }
            return *literal;
        }
        const auto& name = std::get<std::string>(operand);
        const ChoiceVar* choice = program_.find_choice(name);
        if (choice == nullptr) malformed("undeclared choice '" + name + "'");
        if (choice->kind == ChoiceKind::insert_slot && live == nullptr) {
            malformed("insert_slot choice '" + name + "' used outside a move_block slot");
        }
        const std::vector<int>& domain = choice->kind == ChoiceKind::insert_slot ? *live : choice->domain;
        auto value = binding_.get(name);
        if (!value) {
            out_.pending = PendingChoice{name, choice->kind, domain};
            throw Suspend{};
        }
        const bool in_domain = std::find(domain.begin(), domain.end(), *value) != domain.end();
        const bool in_live = live == nullptr || std::find(live->begin(), live->end(), *value) != live->end();
        if (!in_domain || !in_live) {
            throw TrickError(TrickError::Code::invalid_binding,
                             "value " + std::to_string(*value) + " is not available for '" + name + "'");
        }
        return *value;
    }

    void emit(Action action) { out_.actions.push_back(action); }

    void drop_one()
    {
        if (out_.deck.size() <= 1) malformed("drop would empty the deck");
        out_.deck = tail(out_.deck);
        emit({Action::Kind::drop1});
    }

    void exec(const Block& block)
    {
        for (const auto& instruction : block) exec(instruction);
    }

    void exec(const Instruction& instruction)
    {
        std::visit([&](const auto& op) { step(op); }, instruction.node);
    }

    void step(const Rotate& op)
    {
        const int count = resolve(op.count, nullptr);
        for (int i = 0; i < count; ++i) {
            out_.deck = rotate_left(out_.deck, 1);
            emit({Action::Kind::rotate1});
        }
    }

    void step(const MoveBlock& op)
    {
        const int block_len = resolve(op.block_len, nullptr);
        if (block_len < 1 || static_cast<std::size_t>(block_len) >= out_.deck.size()) {
            malformed("cannot move a block of " + std::to_string(block_len) + " cards within a deck of " +
                      std::to_string(out_.deck.size()));
        }
        const auto live = slot_domain(mode_, out_.deck.size() - static_cast<std::size_t>(block_len));
        const int slot = resolve(op.slot, &live);
        out_.deck = move_block(out_.deck, static_cast<std::size_t>(block_len), static_cast<std::size_t>(slot));
        emit({Action::Kind::move_block, block_len, slot});
    }

    void step(const TakeHidden&)
    {
        if (out_.deck.size() <= 1) malformed("taking the hidden card would empty the deck");
        out_.hidden = out_.deck.front();
        out_.deck = tail(out_.deck);
        emit({Action::Kind::take_hidden});
    }

    void step(const Drop& op)
    {
        const int count = resolve(op.count, nullptr);
        for (int i = 0; i < count; ++i) drop_one();
    }

    void step(const MoveFirstToEnd&)
    {
        out_.deck = move_first_to_end(out_.deck);
        emit({Action::Kind::move_first_to_end});
    }

    void step(const Repeat& op)
    {
        for (int i = 0; i < op.times; ++i) exec(op.body);
    }

    void step(const IfGenderMale& op)
    {
        const ChoiceVar* gender = gender_choice(program_);
        if (gender == nullptr) malformed("if_male without a gender choice");
        if (resolve(Operand{gender->name}, nullptr) == 1) exec(op.body);
    }

    void step(const Checkpoint& op)
    {
        if (!out_.hidden) malformed("checkpoint before the hidden card is taken");
        out_.checkpoints.push_back({op.label, out_.deck, out_.deck.back() == *out_.hidden, false});
    }

    void step(const FinalCheck&)
    {
        if (!out_.hidden) malformed("final check without a hidden card");
        out_.final_answer = out_.deck.size() == 1 && out_.deck.front() == *out_.hidden;
        if (!out_.checkpoints.empty()) {
            auto& last = out_.checkpoints.back();
            last.empty = last.deck.size() == 1;
        }
    }

    const TrickProgram& program_;
    const ChoiceBinding& binding_;
    SlotMode mode_;
    PathProgress& out_;
};

void check_bound_values(const TrickProgram& program, const ChoiceBinding& binding)
{
    for (const auto& [name, value] : binding.entries()) {
        const ChoiceVar* choice = program.find_choice(name);
        if (choice == nullptr) {
            throw TrickError(TrickError::Code::invalid_binding, "unknown choice '" + name + "'");
        }
        if (choice->kind != ChoiceKind::insert_slot &&
            std::find(choice->domain.begin(), choice->domain.end(), value) == choice->domain.end()) {
            throw TrickError(TrickError::Code::invalid_binding,
                             "value " + std::to_string(value) + " is not in the domain of '" + name + "'");
        }
    }
}

}  // namespace

PathProgress advance(const TrickProgram& program, const ChoiceBinding& partial, SlotMode mode)
{
    check_bound_values(program, partial);
    PathProgress progress;
    Interpreter(program, partial, mode, progress).run();
    return progress;
}

PathRecord run_path(const TrickProgram& program, const ChoiceBinding& binding, SlotMode mode)
{
    for (const auto& choice : program.choices) {
        if (!binding.contains(choice.name)) {
            throw TrickError(TrickError::Code::invalid_binding, "no value for choice '" + choice.name + "'");
        }
    }
    PathProgress progress = advance(program, binding, mode);
    if (!progress.complete() || !progress.final_answer || !progress.hidden) {
        throw TrickError(TrickError::Code::malformed_program, "path did not reach the final check");
    }
    PathRecord record;
    record.binding = binding.in_declaration_order(program);
    record.hidden = *progress.hidden;
    record.actions = std::move(progress.actions);
    record.checkpoints = std::move(progress.checkpoints);
    record.final_answer = *progress.final_answer;
    return record;
}

std::vector<ChoiceBinding> enumerate_bindings(const TrickProgram& program, SlotMode mode)
{
    std::vector<ChoiceBinding> found;
    std::vector<ChoiceBinding> stack{ChoiceBinding{}};
    while (!stack.empty()) {
        ChoiceBinding partial = std::move(stack.back());
        stack.pop_back();
        PathProgress progress = advance(program, partial, mode);
        if (progress.complete()) {
            found.push_back(partial.in_declaration_order(program));
            continue;
        }
        const auto& pending = *progress.pending;
        for (auto it = pending.domain.rbegin(); it != pending.domain.rend(); ++it) {
            ChoiceBinding next = partial;
            next.set(pending.name, *it);
            stack.push_back(std::move(next));
        }
    }

    // Consumption order can differ from declaration order; sort by declaration.
    auto key = [&](const ChoiceBinding& binding) {
        std::vector<long> k;
        for (const auto& choice : program.choices) {
            const int value = *binding.get(choice.name);
            if (choice.kind == ChoiceKind::insert_slot) {
                k.push_back(value);
            } else {
                k.push_back(std::find(choice.domain.begin(), choice.domain.end(), value) - choice.domain.begin());
            }
        }
        return k;
    };
    std::vector<std::pair<std::vector<long>, ChoiceBinding>> keyed;
    keyed.reserve(found.size());
    for (auto& binding : found) keyed.emplace_back(key(binding), std::move(binding));
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
    std::vector<ChoiceBinding> result;
    result.reserve(keyed.size());
    for (auto& entry : keyed) result.push_back(std::move(entry.second));
    return result;
}

std::vector<std::string> action_word(const PathRecord& record)
{
    std::vector<std::string> word;
    word.reserve(record.actions.size());
    for (const auto& action : record.actions) word.push_back(action.label());
    return word;
}

TrickProgram builtin_shousuigongcishi()
{
    TrickProgram program;
    program.initial_deck = Deck::canonical();
    program.choices = {
        {"n1", ChoiceKind::name_length, {2, 3}},
        {"slot2", ChoiceKind::insert_slot, {}},
        {"native", ChoiceKind::native_place, {1, 2, 3}},
        {"slot4", ChoiceKind::insert_slot, {}},
        {"gender", ChoiceKind::gender, {1, 2}},
    };
    program.instructions = {
        Rotate{"n1"},                                                      // 1
        MoveBlock{3, "slot2"},                                             // 2
        TakeHidden{},                                                      // 3
        MoveBlock{"native", "slot4"},                                      // 4
        Checkpoint{4},
        Drop{"gender"},                                                    // 5
        Checkpoint{5},
        Repeat{7, {MoveFirstToEnd{}}},                                     // 6
        Checkpoint{6},
        Repeat{4, {MoveFirstToEnd{}, Drop{1}}},                            // 7
        Checkpoint{7},
        IfGenderMale{{MoveFirstToEnd{}, Drop{1}}},                         // 8
        Checkpoint{8},
        Checkpoint{9},                                                     // 9
        FinalCheck{},
    };
    return program;
}

std::optional<int> parse_choice_value(ChoiceKind kind, std::string_view text) noexcept
{
    if (kind == ChoiceKind::native_place) {
        if (text == "southerner") return 1;
        if (text == "northerner") return 2;
        if (text == "unknown") return 3;
    }
    if (kind == ChoiceKind::gender) {
        if (text == "male") return 1;
        if (text == "female") return 2;
    }
    if (text.empty() || text.size() > 9) return std::nullopt;
    int value = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9') return std::nullopt;
        value = value * 10 + (ch - '0');
    }
    return value;
}

std::string choice_value_label(ChoiceKind kind, int value)
{
    if (kind == ChoiceKind::native_place) {
        switch (value) {
        case 1: return "southerner";
        case 2: return "northerner";
        case 3: return "unknown";
        default: break;
        }
    }
    if (kind == ChoiceKind::gender) {
        if (value == 1) return "male";
        if (value == 2) return "female";
    }
    return std::to_string(value);
}

Json to_json(const ChoiceBinding& binding)
{
    Json out = Json::object();
    for (const auto& [name, value] : binding.entries()) out[name] = value;
    return out;
}

Json to_json(const CheckpointState& state)
{
    return Json{{"label", state.label}, {"deck", state.deck.to_string()}, {"p", state.p}, {"empty", state.empty}};
}

Json to_json(const PathRecord& record)
{
    Json checkpoints = Json::array();
    for (const auto& state : record.checkpoints) checkpoints.push_back(to_json(state));
    Json actions = Json::array();
    for (const auto& label : action_word(record)) actions.push_back(label);
    return Json{{"binding", to_json(record.binding)},
                {"hidden", std::string(1, to_char(record.hidden))},
                {"checkpoints", std::move(checkpoints)},
                {"final", record.final_answer ? "yes" : "no"},
                {"actions", std::move(actions)}};
}

}  // namespace trickmc
