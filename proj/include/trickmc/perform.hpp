#pragma once

#include "trickmc/trick.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace trickmc {

// Question asked of the spectator for a pending choice.
std::string prompt_text(const PendingChoice& pending);

// Accepted answers for a pending choice, e.g. "male/female" or "1-4".
std::string answer_hint(const PendingChoice& pending);

// Parses an answer (numeric or label) and checks it against the domain.
std::optional<int> accept_answer(const PendingChoice& pending, const std::string& answer);

inline constexpr int kExitAborted = 130;

// Walks a spectator through the trick. Answers are read from `in`, separated
// by commas or whitespace; a rejected answer re-asks the same question. With
// `json` set only the final path record is written. Returns 0 on a match,
// 1 on a mismatch and kExitAborted when input runs out.
int perform(const TrickProgram& program, SlotMode mode, std::istream& in, std::ostream& out, bool json = false);

}  // namespace trickmc
