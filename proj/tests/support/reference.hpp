#pragma once

// Hand-written replay of the torn-card routine on plain character vectors,
// independent of the interpreter in the library.

#include <algorithm>
#include <array>
#include <string>
#include <vector>

namespace reference {

struct Path {
    int n1 = 0, slot2 = 0, native = 0, slot4 = 0, gender = 0;
    char hidden = 0;
    // Decks at checkpoints 4..9.
    std::vector<std::vector<char>> decks;
    std::vector<char> final_hand;
    bool yes = false;
};

inline void move_front_block(std::vector<char>& deck, int len, int after)
{
    std::vector<char> block(deck.begin(), deck.begin() + len);
    deck.erase(deck.begin(), deck.begin() + len);
    deck.insert(deck.begin() + after, block.begin(), block.end());
}

inline void front_to_back(std::vector<char>& deck)
{
    std::rotate(deck.begin(), deck.begin() + 1, deck.end());
}

inline Path play(int n1, int slot2, int native, int slot4, int gender)
{
    Path path{n1, slot2, native, slot4, gender, 0, {}, {}, false};
    std::vector<char> deck{'a', 'b', 'c', 'd', 'a', 'b', 'c', 'd'};
    for (int i = 0; i < n1; ++i) front_to_back(deck);
    move_front_block(deck, 3, slot2);
    path.hidden = deck.front();
    deck.erase(deck.begin());
    move_front_block(deck, native, slot4);
    path.decks.push_back(deck);
    deck.erase(deck.begin(), deck.begin() + gender);
    path.decks.push_back(deck);
    for (int i = 0; i < 7; ++i) front_to_back(deck);
    path.decks.push_back(deck);
    for (int i = 0; i < 4; ++i) {
        front_to_back(deck);
        deck.erase(deck.begin());
    }
    path.decks.push_back(deck);
    if (gender == 1) {
        front_to_back(deck);
        deck.erase(deck.begin());
    }
    path.decks.push_back(deck);
    path.decks.push_back(deck);
    path.final_hand = deck;
    path.yes = deck.size() == 1 && deck.front() == path.hidden;
    return path;
}

// Every path with insertion slots strictly between cards, in nested loop order
// (n1, slot2, native, slot4, gender).
inline std::vector<Path> all_paths()
{
    std::vector<Path> paths;
    for (int n1 : {2, 3}) {
        for (int slot2 = 1; slot2 <= 4; ++slot2) {
            for (int native : {1, 2, 3}) {
                const int remaining = 7 - native;
                for (int slot4 = 1; slot4 <= remaining - 1; ++slot4) {
                    for (int gender : {1, 2}) paths.push_back(play(n1, slot2, native, slot4, gender));
                }
            }
        }
    }
    return paths;
}

inline std::string deck_text(const std::vector<char>& deck)
{
    std::string out;
    for (char c : deck) {
        if (!out.empty()) out += ' ';
        out += c;
    }
    return out;
}

}  // namespace reference
