#include "trickmc/perform.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>

namespace trickmc {

namespace {

class AnswerReader {
public:
    explicit AnswerReader(std::istream& in) : in_(in) {}

    std::optional<std::string> next()
    {
        std::string token;
        char ch = 0;
        while (in_.get(ch)) {
            if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
                if (!token.empty()) return token;
                continue;
            }
            token += ch;
        }
        if (!token.empty()) return token;
        return std::nullopt;
    }

private:
    std::istream& in_;
};

std::string p_marks(const std::vector<CheckpointState>& checkpoints)
{
    std::string out;
    for (const auto& state : checkpoints) {
        if (!out.empty()) out += ' ';
        out += state.p ? 'T' : 'F';
    }
    return out;
}

}  // namespace

std::string prompt_text(const PendingChoice& pending)
{
    switch (pending.kind) {
    case ChoiceKind::name_length: return "how many words in your name?";
    case ChoiceKind::insert_slot: return "after how many cards do you slip the block back in?";
    case ChoiceKind::native_place: return "are you a southerner, a northerner, or unsure?";
    case ChoiceKind::gender: return "are you male or female?";
    }
    return "?";
}

std::string answer_hint(const PendingChoice& pending)
{
    std::string out;
    for (int value : pending.domain) {
        if (!out.empty()) out += '/';
        out += choice_value_label(pending.kind, value);
    }
    return out;
}

std::optional<int> accept_answer(const PendingChoice& pending, const std::string& answer)
{
    auto value = parse_choice_value(pending.kind, answer);
    if (!value || std::find(pending.domain.begin(), pending.domain.end(), *value) == pending.domain.end()) {
        return std::nullopt;
    }
    return value;
}

int perform(const TrickProgram& program, SlotMode mode, std::istream& in, std::ostream& out, bool json)
{
    AnswerReader reader(in);
    ChoiceBinding binding;
    PathProgress progress = advance(program, binding, mode);
    std::size_t shown_checkpoints = 0;
    if (!json) out << "deck: " << progress.deck.to_string() << '\n';

    while (!progress.complete()) {
        const PendingChoice& pending = *progress.pending;
        std::optional<int> value;
        while (!value) {
            if (!json) out << pending.name << ": " << prompt_text(pending) << " [" << answer_hint(pending) << "] ";
            auto answer = reader.next();
            if (!answer) {
                if (!json) out << "\naborted: no more input\n";
                return kExitAborted;
            }
            value = accept_answer(pending, *answer);
            if (!json) {
                out << *answer << '\n';
                if (!value) out << "  '" << *answer << "' is not one of " << answer_hint(pending) << '\n';
            }
        }
        binding.set(pending.name, *value);
        const std::size_t shown_actions = progress.actions.size();
        progress = advance(program, binding, mode);
        if (json) continue;
        if (progress.actions.size() > shown_actions) {
            out << "  ";
            for (std::size_t i = shown_actions; i < progress.actions.size(); ++i) {
                out << progress.actions[i].label() << (i + 1 < progress.actions.size() ? " " : "");
            }
            out << '\n';
        }
        for (; shown_checkpoints < progress.checkpoints.size(); ++shown_checkpoints) {
            const auto& state = progress.checkpoints[shown_checkpoints];
            out << "  checkpoint " << state.label << ": [" << state.deck.to_string() << "] p="
                << (state.p ? "true" : "false") << '\n';
        }
        out << "deck: " << progress.deck.to_string() << '\n';
    }

    const PathRecord record = run_path(program, binding, mode);
    if (json) {
        out << to_json(record).dump() << '\n';
    } else {
        out << "checkpoint p: " << p_marks(record.checkpoints) << '\n';
        out << "reveal: " << (record.final_answer ? "match" : "mismatch") << " (hidden "
            << to_char(record.hidden) << ", in hand [" << progress.deck.to_string() << "])\n";
    }
    return record.final_answer ? 0 : 1;
}

}  // namespace trickmc
