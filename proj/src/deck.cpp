#include "trickmc/deck.hpp"

#include <algorithm>
#include <sstream>

namespace trickmc {

char to_char(Card card) noexcept { return static_cast<char>(card); }

bool is_card_symbol(std::string_view text) noexcept
{
    return text.size() == 1 && text[0] >= 'a' && text[0] <= 'd';
}

Card card_from_char(char symbol)
{
    if (symbol < 'a' || symbol > 'd') {
        throw DeckError(DeckError::Code::bad_symbol, std::string("not a card symbol: '") + symbol + "'");
    }
    return static_cast<Card>(symbol);
}

Deck Deck::canonical()
{
    return Deck{Card::a, Card::b, Card::c, Card::d, Card::a, Card::b, Card::c, Card::d};
}

Deck Deck::parse(std::string_view text)
{
    std::vector<Card> cards;
    std::istringstream in{std::string(text)};
    std::string word;
    while (in >> word) {
        if (!is_card_symbol(word)) {
            throw DeckError(DeckError::Code::bad_symbol, "not a card symbol: '" + word + "'");
        }
        cards.push_back(card_from_char(word[0]));
    }
    return Deck(std::move(cards));
}

Card Deck::front() const
{
    if (cards_.empty()) throw DeckError(DeckError::Code::empty_deck, "front of an empty deck");
    return cards_.front();
}

Card Deck::back() const
{
    if (cards_.empty()) throw DeckError(DeckError::Code::empty_deck, "back of an empty deck");
    return cards_.back();
}

std::string Deck::to_string() const
{
    std::string out;
    for (Card card : cards_) {
        if (!out.empty()) out += ' ';
        out += to_char(card);
    }
    return out;
}

std::array<std::size_t, 4> Deck::counts() const noexcept
{
    std::array<std::size_t, 4> counts{};
    for (Card card : cards_) ++counts[static_cast<std::size_t>(to_char(card) - 'a')];
    return counts;
}

Deck rotate_left(const Deck& deck, std::size_t k)
{
    if (deck.empty()) return deck;
    std::vector<Card> cards(deck.cards().begin(), deck.cards().end());
    std::rotate(cards.begin(), cards.begin() + static_cast<std::ptrdiff_t>(k % cards.size()), cards.end());
    return Deck(std::move(cards));
}

Deck tail(const Deck& deck)
{
    if (deck.empty()) throw DeckError(DeckError::Code::empty_deck, "tail of an empty deck");
    return Deck(std::vector<Card>(deck.cards().begin() + 1, deck.cards().end()));
}

Deck move_first_to_end(const Deck& deck)
{
    if (deck.empty()) throw DeckError(DeckError::Code::empty_deck, "move_first_to_end on an empty deck");
    return rotate_left(deck, 1);
}

std::size_t internal_slot_count(std::size_t remaining_len) noexcept
{
    return remaining_len == 0 ? 0 : remaining_len - 1;
}

Deck move_block(const Deck& deck, std::size_t block_len, std::size_t insert_after)
{
    if (block_len == 0 || block_len >= deck.size()) {
        throw DeckError(DeckError::Code::bad_block_length,
                        "block of " + std::to_string(block_len) + " cards cannot move within a deck of " +
                            std::to_string(deck.size()));
    }
    const auto cards = deck.cards();
    const std::size_t remaining = cards.size() - block_len;
    if (insert_after > remaining) {
        throw DeckError(DeckError::Code::slot_out_of_range,
                        "slot " + std::to_string(insert_after) + " out of range 0.." + std::to_string(remaining));
    }
    std::vector<Card> out;
    out.reserve(cards.size());
    const auto rest = cards.subspan(block_len);
    out.insert(out.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(insert_after));
    out.insert(out.end(), cards.begin(), cards.begin() + static_cast<std::ptrdiff_t>(block_len));
    out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(insert_after), rest.end());
    return Deck(std::move(out));
}

Deck move_block_internal(const Deck& deck, std::size_t block_len, std::size_t slot)
{
    if (block_len == 0 || block_len >= deck.size()) {
        throw DeckError(DeckError::Code::bad_block_length,
                        "block of " + std::to_string(block_len) + " cards cannot move within a deck of " +
                            std::to_string(deck.size()));
    }
    const std::size_t slots = internal_slot_count(deck.size() - block_len);
    if (slot < 1 || slot > slots) {
        throw DeckError(DeckError::Code::slot_out_of_range,
                        "slot " + std::to_string(slot) + " out of range 1.." + std::to_string(slots));
    }
    return move_block(deck, block_len, slot);
}

}  // namespace trickmc
