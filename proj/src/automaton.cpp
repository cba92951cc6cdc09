#include "trickmc/automaton.hpp"

#include <algorithm>

namespace trickmc {

void validate(const MagicAutomaton& automaton)
{
    const auto& table = automaton.table;
    auto declared = [&](StateId s) { return table.states.count(s) != 0; };
    for (StateId s : table.start) {
        if (!declared(s)) throw AutomatonError("start state " + std::to_string(s) + " is not declared");
    }
    for (StateId s : automaton.final) {
        if (!declared(s)) throw AutomatonError("final state " + std::to_string(s) + " is not declared");
    }
    for (const auto& edge : table.edges) {
        if (!declared(edge.from) || !declared(edge.to)) {
            throw AutomatonError("edge " + std::to_string(edge.from) + " -> " + std::to_string(edge.to) +
                                 " uses an undeclared state");
        }
        if (table.alphabet.count(edge.label) == 0) {
            throw AutomatonError("edge label '" + edge.label + "' is not in the alphabet");
        }
    }
}

std::optional<Run> accepts(const MagicAutomaton& automaton, std::span<const Label> word)
{
    const auto& table = automaton.table;
    if (table.start.empty() || automaton.final.empty()) return std::nullopt;
    for (const auto& letter : word) {
        if (table.alphabet.count(letter) == 0) return std::nullopt;
    }

    std::map<std::pair<StateId, Label>, std::vector<StateId>> successors;
    for (const auto& edge : table.edges) successors[{edge.from, edge.label}].push_back(edge.to);

    // layers[i] maps each state reachable after i letters to its predecessor.
    std::vector<std::map<StateId, StateId>> layers(word.size() + 1);
    for (StateId s : table.start) layers[0].emplace(s, s);
    for (std::size_t i = 0; i < word.size(); ++i) {
        for (const auto& [state, _] : layers[i]) {
            auto it = successors.find({state, word[i]});
            if (it == successors.end()) continue;
            for (StateId next : it->second) layers[i + 1].emplace(next, state);
        }
        if (layers[i + 1].empty()) return std::nullopt;
    }

    for (const auto& [state, _] : layers.back()) {
        if (automaton.final.count(state) == 0) continue;
        Run run;
        run.word.assign(word.begin(), word.end());
        run.states.resize(word.size() + 1);
        StateId current = state;
        for (std::size_t i = word.size() + 1; i-- > 0;) {
            run.states[i] = current;
            current = layers[i].at(current);
        }
        return run;
    }
    return std::nullopt;
}

bool is_run_of(const TransitionTable& table, const Run& run)
{
    if (run.states.size() != run.word.size() + 1) return false;
    if (table.start.count(run.states.front()) == 0) return false;
    for (std::size_t i = 0; i < run.word.size(); ++i) {
        const Edge step{run.states[i], run.states[i + 1], run.word[i]};
        if (std::find(table.edges.begin(), table.edges.end(), step) == table.edges.end()) return false;
    }
    return true;
}

bool is_accepting_run(const MagicAutomaton& automaton, const Run& run)
{
    return is_run_of(automaton.table, run) && automaton.final.count(run.states.back()) != 0;
}

MagicAutomaton automaton_from_words(std::span<const std::vector<Label>> words)
{
    MagicAutomaton automaton;
    auto& table = automaton.table;
    table.states.insert(0);
    table.start.insert(0);
    std::map<std::pair<StateId, Label>, StateId> child;
    StateId next_id = 1;
    for (const auto& word : words) {
        StateId state = 0;
        for (const auto& letter : word) {
            table.alphabet.insert(letter);
            auto [it, inserted] = child.try_emplace({state, letter}, next_id);
            if (inserted) {
                table.states.insert(next_id);
                table.edges.push_back({state, next_id, letter});
                ++next_id;
            }
            state = it->second;
        }
        automaton.final.insert(state);
    }
    return automaton;
}

MagicAutomaton trick_to_automaton(const TrickProgram& program, SlotMode mode)
{
    std::vector<std::vector<Label>> words;
    for (const auto& binding : enumerate_bindings(program, mode)) {
        words.push_back(action_word(run_path(program, binding, mode)));
    }
    return automaton_from_words(words);
}

Json to_json(const MagicAutomaton& automaton)
{
    Json edges = Json::array();
    for (const auto& edge : automaton.table.edges) {
        edges.push_back(Json{{"from", edge.from}, {"to", edge.to}, {"label", edge.label}});
    }
    return Json{{"alphabet", automaton.table.alphabet},
                {"states", automaton.table.states},
                {"start", automaton.table.start},
                {"final", automaton.final},
                {"edges", std::move(edges)}};
}

MagicAutomaton automaton_from_json(const Json& json)
{
    MagicAutomaton automaton;
    try {
        for (const auto& s : json.at("states")) automaton.table.states.insert(s.get<StateId>());
        for (const auto& s : json.at("start")) automaton.table.start.insert(s.get<StateId>());
        for (const auto& s : json.at("final")) automaton.final.insert(s.get<StateId>());
        for (const auto& e : json.at("edges")) {
            automaton.table.edges.push_back(
                {e.at("from").get<StateId>(), e.at("to").get<StateId>(), e.at("label").get<Label>()});
        }
        if (json.contains("alphabet")) {
            for (const auto& a : json.at("alphabet")) automaton.table.alphabet.insert(a.get<Label>());
        } else {
            for (const auto& e : automaton.table.edges) automaton.table.alphabet.insert(e.label);
        }
    } catch (const nlohmann::json::exception& e) {
        throw AutomatonError(std::string("malformed automaton JSON: ") + e.what());
    }
    validate(automaton);
    return automaton;
}

//---------------------------------------------------------------------------

std::string MtmResult::tape_text(char blank) const
{
    std::size_t end = tape.size();
    while (end > 0 && tape[end - 1] == blank) --end;
    std::string out;
    for (std::size_t i = 0; i < end; ++i) {
        if (i > 0) out += ' ';
        out += tape[i];
    }
    return out;
}

void validate(const MagicTuringMachine& machine)
{
    if (machine.states.count(machine.initial) == 0) {
        throw AutomatonError("initial state '" + machine.initial + "' is not declared");
    }
    if (machine.alphabet.count(machine.blank) == 0) throw AutomatonError("blank symbol is not in the alphabet");
    for (const auto& [key, rule] : machine.delta) {
        if (machine.states.count(key.first) == 0 || machine.states.count(rule.next) == 0) {
            throw AutomatonError("rule uses an undeclared state");
        }
        if (machine.alphabet.count(key.second) == 0 || machine.alphabet.count(rule.write) == 0) {
            throw AutomatonError("rule uses a symbol outside the alphabet");
        }
    }
    for (char symbol : machine.tape) {
        if (machine.alphabet.count(symbol) == 0) throw AutomatonError("tape symbol outside the alphabet");
    }
}

MtmResult mtm_run(const MagicTuringMachine& machine)
{
    validate(machine);
    MtmResult result;
    result.tape = machine.tape;
    result.state = machine.initial;
    result.head = machine.head;
    while (true) {
        if (result.head >= result.tape.size()) result.tape.resize(result.head + 1, machine.blank);
        auto it = machine.delta.find({result.state, result.tape[result.head]});
        if (it == machine.delta.end()) {
            result.halted = true;
            return result;
        }
        if (result.steps == machine.step_budget) return result;
        const Rule& rule = it->second;
        result.tape[result.head] = rule.write;
        if (rule.move == Move::right) {
            ++result.head;
        } else if (result.head > 0) {
            --result.head;
        }
        result.state = rule.next;
        ++result.steps;
    }
}

}  // namespace trickmc
