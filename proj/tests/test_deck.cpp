#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trickmc/deck.hpp"

using namespace trickmc;

namespace {

Deck d(const char* text) { return Deck::parse(text); }

DeckError::Code code_of(auto&& fn)
{
    try {
        fn();
    } catch (const DeckError& e) {
        return e.code();
    }
    FAIL("no DeckError thrown");
    return DeckError::Code::bad_symbol;
}

}  // namespace

TEST_CASE("canonical deck and rendering")
{
    CHECK(Deck::canonical().to_string() == "a b c d a b c d");
    CHECK(Deck::canonical().counts() == std::array<std::size_t, 4>{2, 2, 2, 2});
    CHECK(d("").empty());
    CHECK(d("  a   b ").to_string() == "a b");
    CHECK(code_of([] { d("a e"); }) == DeckError::Code::bad_symbol);
    CHECK(code_of([] { d("ab"); }) == DeckError::Code::bad_symbol);
    CHECK(is_card_symbol("c"));
    CHECK_FALSE(is_card_symbol("x"));
    CHECK_FALSE(is_card_symbol("ab"));
}

TEST_CASE("front and back of an empty deck throw")
{
    CHECK(code_of([] { Deck{}.front(); }) == DeckError::Code::empty_deck);
    CHECK(code_of([] { Deck{}.back(); }) == DeckError::Code::empty_deck);
}

TEST_CASE("rotate_left")
{
    CHECK(rotate_left(Deck::canonical(), 2) == d("c d a b c d a b"));
    CHECK(rotate_left(Deck::canonical(), 0) == Deck::canonical());
    CHECK(rotate_left(d("a b"), 7) == d("b a"));
    CHECK(rotate_left(Deck{}, 3).empty());
    for (std::size_t k = 0; k < 20; ++k) CHECK(rotate_left(Deck::canonical(), k).counts() == Deck::canonical().counts());
}

TEST_CASE("tail")
{
    CHECK(tail(d("a b")) == d("b"));
    CHECK(tail(d("d")).empty());
    CHECK(tail(d("c d a c d a b")) == d("d a c d a b"));
    CHECK(code_of([] { tail(Deck{}); }) == DeckError::Code::empty_deck);
}

TEST_CASE("move_first_to_end")
{
    CHECK(move_first_to_end(d("a b c")) == d("b c a"));
    CHECK(move_first_to_end(d("d")) == d("d"));
    CHECK(move_first_to_end(d("c d")) == d("d c"));
    CHECK(code_of([] { move_first_to_end(Deck{}); }) == DeckError::Code::empty_deck);
}

TEST_CASE("internal_slot_count")
{
    CHECK(internal_slot_count(5) == 4);
    CHECK(internal_slot_count(1) == 0);
    CHECK(internal_slot_count(6) == 5);
    CHECK(internal_slot_count(0) == 0);
}

TEST_CASE("move_block_internal")
{
    CHECK(move_block_internal(Deck::canonical(), 3, 1) == d("d a b c a b c d"));
    // After the 4th of the 5 remaining cards: the final d stays last.
    CHECK(move_block_internal(Deck::canonical(), 3, 4) == d("d a b c a b c d"));
    CHECK(move_block_internal(Deck::canonical(), 3, 2) == d("d a a b c b c d"));
    CHECK(code_of([] { move_block_internal(d("a b c"), 2, 1); }) == DeckError::Code::slot_out_of_range);
    CHECK(code_of([] { move_block_internal(Deck::canonical(), 3, 0); }) == DeckError::Code::slot_out_of_range);
    CHECK(code_of([] { move_block_internal(Deck::canonical(), 3, 5); }) == DeckError::Code::slot_out_of_range);
    CHECK(code_of([] { move_block_internal(Deck::canonical(), 0, 1); }) == DeckError::Code::bad_block_length);
    CHECK(code_of([] { move_block_internal(Deck::canonical(), 8, 1); }) == DeckError::Code::bad_block_length);
}

TEST_CASE("move_block allows both ends and preserves the multiset")
{
    CHECK(move_block(d("a b c d"), 2, 0) == d("a b c d"));
    CHECK(move_block(d("a b c d"), 2, 2) == d("c d a b"));
    for (std::size_t len = 1; len < 8; ++len) {
        for (std::size_t slot = 0; slot <= 8 - len; ++slot) {
            CHECK(move_block(Deck::canonical(), len, slot).counts() == Deck::canonical().counts());
        }
    }
}
