#pragma once

#include "trickmc/trick.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trickmc {

using StateId = int;
using Label = std::string;

struct Edge {
    StateId from = 0;
    StateId to = 0;
    Label label;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// (alphabet, states, start states, transitions)
struct TransitionTable {
    std::set<Label> alphabet;
    std::set<StateId> states;
    std::set<StateId> start;
    std::vector<Edge> edges;

    friend bool operator==(const TransitionTable&, const TransitionTable&) = default;
};

// Finite automaton whose letters are magician actions.
struct MagicAutomaton {
    TransitionTable table;
    std::set<StateId> final;

    friend bool operator==(const MagicAutomaton&, const MagicAutomaton&) = default;
};

// s0 -a1-> s1 -a2-> ... -an-> sn
struct Run {
    std::vector<StateId> states;
    std::vector<Label> word;

    friend bool operator==(const Run&, const Run&) = default;
};

class AutomatonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws AutomatonError when a start/final state or an edge refers to an
// undeclared state or letter.
void validate(const MagicAutomaton& automaton);

// An accepting run for `word` if one exists. Letters outside the alphabet
// reject immediately; an automaton without start or final states accepts
// nothing.
std::optional<Run> accepts(const MagicAutomaton& automaton, std::span<const Label> word);

// Run is a well-formed run of the table: starts in S0, one state more than
// letters, every step is an edge.
bool is_run_of(const TransitionTable& table, const Run& run);
bool is_accepting_run(const MagicAutomaton& automaton, const Run& run);

// Prefix tree of the given words; every word end is final.
MagicAutomaton automaton_from_words(std::span<const std::vector<Label>> words);

// Accepts exactly the action words of the program's enumerated paths.
MagicAutomaton trick_to_automaton(const TrickProgram& program, SlotMode mode = SlotMode::internal_gaps);

Json to_json(const MagicAutomaton& automaton);
MagicAutomaton automaton_from_json(const Json& json);

//---------------------------------------------------------------------------
// Turing machine over single-character symbols, tape unbounded to the right.

enum class Move { left, right };

struct Rule {
    char write = '_';
    Move move = Move::right;
    std::string next;
};

struct MagicTuringMachine {
    std::set<std::string> states;
    std::set<char> alphabet;
    std::string initial;
    // Partial: the machine halts when no rule matches (state, symbol).
    std::map<std::pair<std::string, char>, Rule> delta;
    std::vector<char> tape;
    std::size_t head = 0;
    std::size_t step_budget = 0;
    char blank = '_';
};

struct MtmResult {
    bool halted = false;
    std::vector<char> tape;
    std::size_t steps = 0;
    std::string state;
    std::size_t head = 0;

    // Tape with trailing blanks removed, symbols separated by spaces.
    std::string tape_text(char blank = '_') const;
};

// Throws AutomatonError on undeclared states or symbols.
void validate(const MagicTuringMachine& machine);

MtmResult mtm_run(const MagicTuringMachine& machine);

}  // namespace trickmc
