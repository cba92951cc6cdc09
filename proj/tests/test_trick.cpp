#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reference.hpp"
#include "trickmc/trick.hpp"

#include <set>

using namespace trickmc;

namespace {

ChoiceBinding male_binding() { return {{"n1", 2}, {"slot2", 1}, {"native", 1}, {"slot4", 1}, {"gender", 1}}; }

std::vector<bool> p_values(const PathRecord& record)
{
    std::vector<bool> out;
    for (const auto& cp : record.checkpoints) out.push_back(cp.p);
    return out;
}

TrickError::Code trick_code(auto&& fn)
{
    try {
        fn();
    } catch (const TrickError& e) {
        return e.code();
    }
    FAIL("no TrickError thrown");
    return TrickError::Code::malformed_program;
}

std::string validation_message(const TrickProgram& program)
{
    try {
        validate(program);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("built-in program shape")
{
    const TrickProgram program = builtin_shousuigongcishi();
    CHECK(program.initial_deck.to_string() == "a b c d a b c d");
    REQUIRE(program.choices.size() == 5);
    std::set<ChoiceKind> kinds;
    for (const auto& c : program.choices) kinds.insert(c.kind);
    CHECK(kinds.size() == 4);
    CHECK(program.find_choice("n1")->domain == std::vector<int>{2, 3});
    CHECK(std::holds_alternative<FinalCheck>(program.instructions.back().node));
    CHECK_NOTHROW(validate(program));
}

TEST_CASE("run_path on the male and female reference bindings")
{
    const TrickProgram program = builtin_shousuigongcishi();
    const PathRecord male = run_path(program, male_binding());
    CHECK(male.final_answer);
    CHECK(to_char(male.hidden) == 'b');
    CHECK(p_values(male) == std::vector<bool>{true, true, false, false, true, true});
    REQUIRE(male.checkpoints.size() == 6);
    CHECK(male.checkpoints[0].deck.to_string() == "d c a c d a b");
    CHECK(male.checkpoints[1].deck.to_string() == "c a c d a b");
    CHECK(male.checkpoints[2].deck.to_string() == "a c d a b c");
    CHECK(male.checkpoints[3].deck.to_string() == "b a");
    CHECK(male.checkpoints[4].deck.to_string() == "b");
    CHECK(male.checkpoints[5].empty);
    CHECK_FALSE(male.checkpoints[4].empty);

    ChoiceBinding female = male_binding();
    female.set("gender", 2);
    const PathRecord record = run_path(program, female);
    CHECK(record.final_answer);
    CHECK(p_values(record) == std::vector<bool>{true, true, false, true, true, true});
    CHECK(record.checkpoints[1].deck.to_string() == "a c d a b");
    CHECK(record.checkpoints[2].deck.to_string() == "d a b a c");
    CHECK(record.checkpoints[3].deck.to_string() == "b");
}

TEST_CASE("action word of the male path")
{
    const auto word = action_word(run_path(builtin_shousuigongcishi(), male_binding()));
    REQUIRE(word.size() >= 4);
    CHECK(word[0] == "rotate1");
    CHECK(word[1] == "rotate1");
    CHECK(word[2] == "moveblock(3,1)");
    CHECK(word[3] == "takehidden");
}

TEST_CASE("every binding agrees with the hand-written replay")
{
    const TrickProgram program = builtin_shousuigongcishi();
    const auto bindings = enumerate_bindings(program);
    const auto paths = reference::all_paths();
    REQUIRE(bindings.size() == 2 * 4 * 12 * 2);
    REQUIRE(paths.size() == bindings.size());
    std::set<std::vector<std::string>> words;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto& ref = paths[i];
        const ChoiceBinding expected{
            {"n1", ref.n1}, {"slot2", ref.slot2}, {"native", ref.native}, {"slot4", ref.slot4}, {"gender", ref.gender}};
        CHECK(bindings[i] == expected);
        const PathRecord record = run_path(program, bindings[i]);
        CHECK(to_char(record.hidden) == ref.hidden);
        CHECK(record.final_answer == ref.yes);
        REQUIRE(record.checkpoints.size() == ref.decks.size());
        for (std::size_t k = 0; k < ref.decks.size(); ++k) {
            CHECK(record.checkpoints[k].deck.to_string() == reference::deck_text(ref.decks[k]));
            CHECK(record.checkpoints[k].p == (ref.decks[k].back() == ref.hidden));
        }
        words.insert(action_word(record));
    }
    CHECK(words.size() == bindings.size());
}

TEST_CASE("every path answers yes, with 4 or 5 matching checkpoints")
{
    const TrickProgram program = builtin_shousuigongcishi();
    for (const auto& binding : enumerate_bindings(program)) {
        const PathRecord record = run_path(program, binding);
        CHECK(record.final_answer);
        const auto p = p_values(record);
        const auto matches = static_cast<std::size_t>(std::count(p.begin(), p.end(), true));
        CHECK(matches == (binding.get("gender") == 1 ? 4u : 5u));
    }
}

TEST_CASE("enumeration counts under other configurations")
{
    TrickProgram program = builtin_shousuigongcishi();
    CHECK(enumerate_bindings(program, SlotMode::exclude_adjacent).size() == 48);
    CHECK(enumerate_bindings(program, SlotMode::unrestricted).size() == 2 * 6 * (7 + 6 + 5) * 2);

    program.choices[0].domain = {2};
    program.choices[4].domain = {1};
    CHECK(enumerate_bindings(program).size() == 48);

    // Literal slot 1 for the first insertion, southerner, male: only slot4 is free.
    TrickProgram fixed = builtin_shousuigongcishi();
    fixed.choices.erase(fixed.choices.begin() + 1);
    fixed.choices[0].domain = {2};
    fixed.choices[1].domain = {1};
    fixed.choices[3].domain = {1};
    std::get<MoveBlock>(fixed.instructions[1].node).slot = 1;
    CHECK_NOTHROW(validate(fixed));
    CHECK(enumerate_bindings(fixed).size() == 5);

    TrickProgram no_choices;
    no_choices.initial_deck = Deck::parse("a b c");
    no_choices.instructions = {TakeHidden{}, Checkpoint{1}, FinalCheck{}};
    CHECK(enumerate_bindings(no_choices).size() == 1);
}

TEST_CASE("enumeration is ordered by declaration order and domain order")
{
    const auto bindings = enumerate_bindings(builtin_shousuigongcishi());
    CHECK(bindings.front().to_string() == "n1=2 slot2=1 native=1 slot4=1 gender=1");
    CHECK(bindings[1].to_string() == "n1=2 slot2=1 native=1 slot4=1 gender=2");
    CHECK(bindings.back().to_string() == "n1=3 slot2=4 native=3 slot4=3 gender=2");
}

TEST_CASE("advance suspends on each pending choice in order")
{
    const TrickProgram program = builtin_shousuigongcishi();
    ChoiceBinding partial;
    std::vector<std::string> order;
    while (true) {
        const PathProgress progress = advance(program, partial);
        if (progress.complete()) {
            CHECK(progress.final_answer == true);
            break;
        }
        order.push_back(progress.pending->name);
        partial.set(progress.pending->name, progress.pending->domain.front());
    }
    CHECK(order == std::vector<std::string>{"n1", "slot2", "native", "slot4", "gender"});

    const PathProgress first = advance(program, {});
    CHECK(first.deck == Deck::canonical());
    CHECK(first.pending->kind == ChoiceKind::name_length);

    const PathProgress at_slot = advance(program, {{"n1", 2}});
    CHECK(at_slot.pending->domain == std::vector<int>{1, 2, 3, 4});
    CHECK(at_slot.deck.to_string() == "c d a b c d a b");
    CHECK(at_slot.actions.size() == 2);
}

TEST_CASE("invalid bindings")
{
    const TrickProgram program = builtin_shousuigongcishi();
    CHECK(trick_code([&] { run_path(program, {{"n1", 4}}); }) == TrickError::Code::invalid_binding);
    CHECK(trick_code([&] { run_path(program, {{"n1", 2}}); }) == TrickError::Code::invalid_binding);
    CHECK(trick_code([&] { run_path(program, {{"zzz", 1}}); }) == TrickError::Code::invalid_binding);
    ChoiceBinding bad_slot = male_binding();
    bad_slot.set("slot2", 5);
    CHECK(trick_code([&] { run_path(program, bad_slot); }) == TrickError::Code::invalid_binding);
    CHECK_NOTHROW(run_path(program, bad_slot, SlotMode::unrestricted));
}

TEST_CASE("malformed programs at run time")
{
    TrickProgram program;
    program.initial_deck = Deck::parse("a");
    program.instructions = {TakeHidden{}};
    CHECK(trick_code([&] { run_path(program, {}); }) == TrickError::Code::malformed_program);

    program.initial_deck = Deck::parse("a b c");
    program.instructions = {TakeHidden{}, Drop{2}};
    CHECK(trick_code([&] { run_path(program, {}); }) == TrickError::Code::malformed_program);

    program.instructions = {TakeHidden{}, MoveBlock{2, 1}};
    CHECK(trick_code([&] { run_path(program, {}); }) == TrickError::Code::malformed_program);
}

TEST_CASE("static validation")
{
    TrickProgram program;
    program.initial_deck = Deck::parse("a b");
    program.instructions = {FinalCheck{}};
    CHECK(validation_message(program).find("TakeHidden missing") != std::string::npos);

    program.instructions = {TakeHidden{}, TakeHidden{}, FinalCheck{}};
    CHECK(validation_message(program).find("more than once") != std::string::npos);

    program.instructions = {Checkpoint{1}, TakeHidden{}, FinalCheck{}};
    CHECK(validation_message(program).find("precede") != std::string::npos);

    program.instructions = {TakeHidden{}, FinalCheck{}, Checkpoint{1}};
    CHECK(validation_message(program).find("last") != std::string::npos);
    program.instructions = {TakeHidden{}, Checkpoint{1}};
    CHECK(validation_message(program).find("last") != std::string::npos);

    program.instructions = {TakeHidden{}, Rotate{std::string("n")}, FinalCheck{}};
    CHECK_FALSE(validation_message(program).empty());

    program.instructions = {TakeHidden{}, IfGenderMale{{MoveFirstToEnd{}}}, FinalCheck{}};
    CHECK_FALSE(validation_message(program).empty());

    program.instructions = {TakeHidden{}, FinalCheck{}};
    program.choices = {{"s", ChoiceKind::insert_slot, {}}};
    CHECK(validation_message(program).find("insert_slot") != std::string::npos);

    program.choices = {{"gender", ChoiceKind::gender, {1, 3}}};
    CHECK_FALSE(validation_message(program).empty());
    program.choices = {{"native", ChoiceKind::native_place, {}}};
    CHECK_FALSE(validation_message(program).empty());
    program.choices = {{"n", ChoiceKind::name_length, {2, 2}}};
    CHECK_FALSE(validation_message(program).empty());
    program.choices = {{"n", ChoiceKind::name_length, {2}}, {"n", ChoiceKind::name_length, {3}}};
    CHECK_FALSE(validation_message(program).empty());
    program.choices = {{"repeat", ChoiceKind::name_length, {2}}};
    CHECK_FALSE(validation_message(program).empty());
    program.choices = {{"gender", ChoiceKind::name_length, {1}}};
    CHECK_FALSE(validation_message(program).empty());
}

TEST_CASE("choice value labels")
{
    CHECK(parse_choice_value(ChoiceKind::native_place, "southerner") == 1);
    CHECK(parse_choice_value(ChoiceKind::native_place, "northerner") == 2);
    CHECK(parse_choice_value(ChoiceKind::native_place, "unknown") == 3);
    CHECK(parse_choice_value(ChoiceKind::gender, "male") == 1);
    CHECK(parse_choice_value(ChoiceKind::gender, "female") == 2);
    CHECK(parse_choice_value(ChoiceKind::name_length, "3") == 3);
    CHECK_FALSE(parse_choice_value(ChoiceKind::name_length, "male"));
    CHECK_FALSE(parse_choice_value(ChoiceKind::gender, "x"));
    CHECK(choice_value_label(ChoiceKind::gender, 2) == "female");
    CHECK(choice_value_label(ChoiceKind::insert_slot, 4) == "4");
}

TEST_CASE("path record JSON")
{
    const Json json = to_json(run_path(builtin_shousuigongcishi(), male_binding()));
    CHECK(json["final"] == "yes");
    CHECK(json["hidden"] == "b");
    CHECK(json["checkpoints"].size() == 6);
    CHECK(json["checkpoints"][2]["p"] == false);
    CHECK(json["binding"]["n1"] == 2);
}
