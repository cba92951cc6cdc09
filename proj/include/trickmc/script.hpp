#pragma once

// Text format for trick programs (.trick files).
//
//   script  := line* ;  line := comment | stmt
//   stmt    := "deck" symbol+
//            | "choice" ident "in" ( "{" int ("," int)* "}" | "internal" )
//            | "rotate" expr | "move_block" expr "slot" expr | "take_hidden"
//            | "drop" expr | "move_first_to_end"
//            | "repeat" int "{" stmt* "}" | "if_male" "{" stmt* "}"
//            | "checkpoint" int | "final_check"
//   expr    := int | ident ;  comment := "#" any*
//
// Keywords are case-sensitive. Choices must be declared before use. A choice
// whose domain is `internal` is an insertion slot resolved against the live
// deck; a choice named `gender` drives `if_male` and `native` is the native
// place.

#include "trickmc/trick.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace trickmc {

struct ScriptSource {
    std::string text;
    std::string origin = "<inline>";
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message, std::vector<std::string> expected,
               const std::string& origin = "<inline>");

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::vector<std::string> expected_;
};

// Throws ParseError on syntax errors and ValidationError when the program
// breaks a trick invariant. Never returns a partially built program.
TrickProgram parse(const ScriptSource& source);

ScriptSource pretty_print(const TrickProgram& program);

ScriptSource load_script(const std::string& path);

}  // namespace trickmc
