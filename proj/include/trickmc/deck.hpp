#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trickmc {

// One half of a torn card. The two halves of a pair carry the same symbol.
enum class Card : char { a = 'a', b = 'b', c = 'c', d = 'd' };

inline constexpr std::array<Card, 4> kAllCards = {Card::a, Card::b, Card::c, Card::d};

char to_char(Card card) noexcept;
bool is_card_symbol(std::string_view text) noexcept;

class DeckError : public std::runtime_error {
public:
    enum class Code { empty_deck, slot_out_of_range, bad_block_length, bad_symbol };

    DeckError(Code code, const std::string& message) : std::runtime_error(message), code_(code) {}

    Code code() const noexcept { return code_; }

private:
    Code code_;
};

Card card_from_char(char symbol);

// Immutable ordered sequence of cards; every operation below returns a new deck.
class Deck {
public:
    Deck() = default;
    explicit Deck(std::vector<Card> cards) : cards_(std::move(cards)) {}
    Deck(std::initializer_list<Card> cards) : cards_(cards) {}

    // (a, b, c, d, a, b, c, d)
    static Deck canonical();

    // Space separated symbols, e.g. "a b c d".
    static Deck parse(std::string_view text);

    std::size_t size() const noexcept { return cards_.size(); }
    bool empty() const noexcept { return cards_.empty(); }
    std::span<const Card> cards() const noexcept { return cards_; }

    Card front() const;
    Card back() const;

    std::string to_string() const;

    // Symbol multiplicities indexed a..d.
    std::array<std::size_t, 4> counts() const noexcept;

    friend bool operator==(const Deck&, const Deck&) = default;

private:
    std::vector<Card> cards_;
};

Deck rotate_left(const Deck& deck, std::size_t k);
Deck tail(const Deck& deck);
Deck move_first_to_end(const Deck& deck);

// Gaps strictly between `remaining_len` cards.
std::size_t internal_slot_count(std::size_t remaining_len) noexcept;

// Lifts the first `block_len` cards, keeps them in order, and reinserts them
// after the `insert_after`-th of the remaining cards (0 = front, remaining = back).
Deck move_block(const Deck& deck, std::size_t block_len, std::size_t insert_after);

// move_block restricted to the internal gaps: 1 <= slot <= remaining - 1.
Deck move_block_internal(const Deck& deck, std::size_t block_len, std::size_t slot);

}  // namespace trickmc
