#pragma once

#include "trickmc/deck.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace trickmc {

using Json = nlohmann::ordered_json;

enum class ChoiceKind { name_length, native_place, gender, insert_slot };

std::string_view to_string(ChoiceKind kind) noexcept;

// Non-slot choices take their kind from their name: `gender`, `native`, or
// anything else (a name-length style count).
ChoiceKind kind_for_name(std::string_view name) noexcept;

bool is_identifier(std::string_view text) noexcept;
// Keywords of the .trick format; not usable as choice names.
bool is_reserved_word(std::string_view text) noexcept;

// Which gaps an insert_slot choice may pick once the block is lifted out of
// the deck and `r` cards remain.
//   internal_gaps     1 .. r-1  (never at the very front or back)
//   exclude_adjacent  2 .. r-2  (also not next to the front or back)
//   unrestricted      0 .. r    (front and back allowed; negative controls)
enum class SlotMode { internal_gaps, exclude_adjacent, unrestricted };

std::string_view to_string(SlotMode mode) noexcept;
std::optional<SlotMode> parse_slot_mode(std::string_view text) noexcept;

// Live slot values for a block move leaving `remaining` cards behind.
std::vector<int> slot_domain(SlotMode mode, std::size_t remaining);

struct ChoiceVar {
    std::string name;
    ChoiceKind kind = ChoiceKind::name_length;
    // Empty for insert_slot: the domain is resolved against the live deck.
    std::vector<int> domain;

    friend bool operator==(const ChoiceVar&, const ChoiceVar&) = default;
};

// Literal count or the name of a declared choice.
using Operand = std::variant<int, std::string>;

struct Instruction;
using Block = std::vector<Instruction>;

struct Rotate {
    Operand count;
    friend bool operator==(const Rotate&, const Rotate&) = default;
};
struct MoveBlock {
    Operand block_len;
    Operand slot;
    friend bool operator==(const MoveBlock&, const MoveBlock&) = default;
};
struct TakeHidden {
    friend bool operator==(const TakeHidden&, const TakeHidden&) = default;
};
struct Drop {
    Operand count;
    friend bool operator==(const Drop&, const Drop&) = default;
};
struct MoveFirstToEnd {
    friend bool operator==(const MoveFirstToEnd&, const MoveFirstToEnd&) = default;
};
struct Repeat {
    int times = 0;
    Block body;
};
struct IfGenderMale {
    Block body;
};
struct Checkpoint {
    int label = 0;
    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};
struct FinalCheck {
    friend bool operator==(const FinalCheck&, const FinalCheck&) = default;
};

struct Instruction {
    using Node = std::variant<Rotate, MoveBlock, TakeHidden, Drop, MoveFirstToEnd, Repeat, IfGenderMale,
                              Checkpoint, FinalCheck>;
    Node node;

    template <typename T>
        requires(!std::is_same_v<std::remove_cvref_t<T>, Instruction>)
    Instruction(T op) : node(std::move(op))
    {
    }
};

bool operator==(const Repeat& lhs, const Repeat& rhs);
bool operator==(const IfGenderMale& lhs, const IfGenderMale& rhs);
bool operator==(const Instruction& lhs, const Instruction& rhs);

struct TrickProgram {
    Deck initial_deck = Deck::canonical();
    std::vector<ChoiceVar> choices;
    Block instructions;

    const ChoiceVar* find_choice(std::string_view name) const noexcept;

    friend bool operator==(const TrickProgram&, const TrickProgram&) = default;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(std::optional<std::size_t> instruction_index, const std::string& message)
        : std::runtime_error(message), index_(instruction_index)
    {
    }

    // Top-level instruction the problem was found at, when there is one.
    std::optional<std::size_t> instruction_index() const noexcept { return index_; }

private:
    std::optional<std::size_t> index_;
};

// Throws ValidationError when a static program invariant is broken.
void validate(const TrickProgram& program);

class TrickError : public std::runtime_error {
public:
    enum class Code { invalid_binding, malformed_program };

    TrickError(Code code, const std::string& message) : std::runtime_error(message), code_(code) {}

    Code code() const noexcept { return code_; }

private:
    Code code_;
};

// Choice name -> value, kept in the order values were assigned.
class ChoiceBinding {
public:
    ChoiceBinding() = default;
    ChoiceBinding(std::initializer_list<std::pair<std::string, int>> entries);

    void set(const std::string& name, int value);
    std::optional<int> get(std::string_view name) const noexcept;
    bool contains(std::string_view name) const noexcept { return get(name).has_value(); }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<std::pair<std::string, int>>& entries() const noexcept { return entries_; }

    // Same values, reordered to follow the program's declaration order.
    ChoiceBinding in_declaration_order(const TrickProgram& program) const;

    // "n1=2 slot2=1 ..."
    std::string to_string() const;

    friend bool operator==(const ChoiceBinding&, const ChoiceBinding&) = default;

private:
    std::vector<std::pair<std::string, int>> entries_;
};

struct Action {
    enum class Kind { rotate1, move_block, take_hidden, drop1, move_first_to_end };

    Kind kind = Kind::rotate1;
    int block_len = 0;
    int slot = 0;

    // rotate1, moveblock(3,1), takehidden, drop1, movefirsttoend
    std::string label() const;

    friend bool operator==(const Action&, const Action&) = default;
};

struct CheckpointState {
    int label = 0;
    Deck deck;
    bool p = false;
    bool empty = false;

    friend bool operator==(const CheckpointState&, const CheckpointState&) = default;
};

struct PathRecord {
    ChoiceBinding binding;
    Card hidden = Card::a;
    std::vector<Action> actions;
    std::vector<CheckpointState> checkpoints;
    bool final_answer = false;

    std::size_t op_count() const noexcept { return actions.size(); }

    friend bool operator==(const PathRecord&, const PathRecord&) = default;
};

struct PendingChoice {
    std::string name;
    ChoiceKind kind = ChoiceKind::name_length;
    std::vector<int> domain;
};

// Execution state of a path under a possibly incomplete binding. Execution
// stops at the first choice that is needed and not yet bound; choices never
// consumed by an instruction are requested after the final check, in
// declaration order.
struct PathProgress {
    Deck deck;
    std::optional<Card> hidden;
    std::vector<Action> actions;
    std::vector<CheckpointState> checkpoints;
    std::optional<PendingChoice> pending;
    std::optional<bool> final_answer;

    bool complete() const noexcept { return !pending.has_value(); }
};

PathProgress advance(const TrickProgram& program, const ChoiceBinding& partial,
                     SlotMode mode = SlotMode::internal_gaps);

PathRecord run_path(const TrickProgram& program, const ChoiceBinding& binding,
                    SlotMode mode = SlotMode::internal_gaps);

// Every complete binding, ordered lexicographically by (declaration order,
// domain order).
std::vector<ChoiceBinding> enumerate_bindings(const TrickProgram& program,
                                              SlotMode mode = SlotMode::internal_gaps);

std::vector<std::string> action_word(const PathRecord& record);

// The nine-step torn-card routine over (a, b, c, d, a, b, c, d).
TrickProgram builtin_shousuigongcishi();

// Labels accepted for native_place / gender values ("southerner" -> 1, ...).
std::optional<int> parse_choice_value(ChoiceKind kind, std::string_view text) noexcept;
std::string choice_value_label(ChoiceKind kind, int value);

Json to_json(const ChoiceBinding& binding);
Json to_json(const CheckpointState& state);
Json to_json(const PathRecord& record);

}  // namespace trickmc
