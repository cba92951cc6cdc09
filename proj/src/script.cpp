#include "trickmc/script.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace trickmc {

namespace {

std::string render_error(std::size_t line, std::size_t column, const std::string& message,
                         const std::vector<std::string>& expected, const std::string& origin)
{
    std::string out = origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) {
        out += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
            out += expected[i];
        }
        out += ")";
    }
    return out;
}

enum class TokenKind { word, integer, lbrace, rbrace, comma, end };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

std::string describe(const Token& token)
{
    switch (token.kind) {
    case TokenKind::end: return "end of input";
    case TokenKind::integer: return "integer " + token.text;
    default: return "'" + token.text + "'";
    }
}


const std::vector<std::string> kStatementKeywords = {
    "deck", "choice", "rotate", "move_block", "take_hidden", "drop", "move_first_to_end",
    "repeat", "if_male", "checkpoint", "final_check",
};

class Lexer {
public:
    Lexer(const std::string& text, const std::string& origin) : text_(text), origin_(origin) {}

    std::vector<Token> run()
    {
        std::vector<Token> tokens;
        while (true) {
            skip_space_and_comments();
            Token token;
            token.line = line_;
            token.column = column_;
            if (pos_ >= text_.size()) {
                tokens.push_back(token);
                return tokens;
            }
            const char ch = text_[pos_];
            if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                token.kind = TokenKind::word;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    token.text += take();
                }
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                token.kind = TokenKind::integer;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    token.text += take();
                }
                if (pos_ < text_.size() &&
                    (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    throw ParseError(token.line, token.column, "malformed number", {"integer"}, origin_);
                }
                if (token.text.size() > 9) {
                    throw ParseError(token.line, token.column, "integer too large", {}, origin_);
                }
            } else if (ch == '{' || ch == '}' || ch == ',') {
                token.kind = ch == '{' ? TokenKind::lbrace : ch == '}' ? TokenKind::rbrace : TokenKind::comma;
                token.text = std::string(1, take());
            } else {
                throw ParseError(line_, column_, std::string("unexpected character '") + ch + "'", {}, origin_);
            }
            tokens.push_back(std::move(token));
        }
    }

private:
    char take()
    {
        const char ch = text_[pos_++];
        if (ch == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return ch;
    }

    void skip_space_and_comments()
    {
        while (pos_ < text_.size()) {
            const char ch = text_[pos_];
            if (ch == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                take();
            } else {
                return;
            }
        }
    }

    const std::string& text_;
    const std::string& origin_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, const std::string& origin) : tokens_(std::move(tokens)), origin_(origin) {}

    TrickProgram run()
    {
        while (peek().kind != TokenKind::end) top_statement();
        return std::move(program_);
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    bool at_word(std::string_view word) const { return peek().kind == TokenKind::word && peek().text == word; }

    [[noreturn]] void error_at(const Token& token, const std::string& message,
                               std::vector<std::string> expected) const
    {
        throw ParseError(token.line, token.column, message, std::move(expected), origin_);
    }

    [[noreturn]] void unexpected(std::vector<std::string> expected) const
    {
        error_at(peek(), "unexpected " + describe(peek()), std::move(expected));
    }

    void expect_word(std::string_view word)
    {
        if (!at_word(word)) unexpected({"'" + std::string(word) + "'"});
        next();
    }

    void expect(TokenKind kind, const std::string& what)
    {
        if (peek().kind != kind) unexpected({what});
        next();
    }

    int integer()
    {
        if (peek().kind != TokenKind::integer) unexpected({"integer"});
        return std::stoi(next().text);
    }

    std::string identifier()
    {
        if (peek().kind != TokenKind::word || is_reserved_word(peek().text)) unexpected({"identifier"});
        return next().text;
    }

    Operand expr()
    {
        if (peek().kind == TokenKind::integer) return integer();
        if (peek().kind != TokenKind::word || is_reserved_word(peek().text)) {
            unexpected({"integer", "identifier"});
        }
        const Token token = next();
        if (program_.find_choice(token.text) == nullptr) {
            error_at(token, "undeclared choice '" + token.text + "'", {});
        }
        return token.text;
    }

    void top_statement()
    {
        if (at_word("deck")) {
            const Token keyword = next();
            if (seen_deck_) error_at(keyword, "deck declared twice", {});
            seen_deck_ = true;
            std::vector<Card> cards;
            while (peek().kind == TokenKind::word && is_card_symbol(peek().text)) {
                cards.push_back(card_from_char(next().text[0]));
            }
            if (cards.empty()) unexpected({"card symbol a, b, c or d"});
            program_.initial_deck = Deck(std::move(cards));
            return;
        }
        if (at_word("choice")) {
            next();
            const Token name_token = peek();
            ChoiceVar choice;
            choice.name = identifier();
            if (program_.find_choice(choice.name) != nullptr) {
                error_at(name_token, "choice '" + choice.name + "' declared twice", {});
            }
            expect_word("in");
            if (at_word("internal")) {
                next();
                choice.kind = ChoiceKind::insert_slot;
            } else {
                choice.kind = kind_for_name(choice.name);
                expect(TokenKind::lbrace, "'{' or 'internal'");
                choice.domain.push_back(integer());
                while (peek().kind == TokenKind::comma) {
                    next();
                    choice.domain.push_back(integer());
                }
                expect(TokenKind::rbrace, "',' or '}'");
            }
            program_.choices.push_back(std::move(choice));
            return;
        }
        program_.instructions.push_back(statement());
    }

    Block block()
    {
        expect(TokenKind::lbrace, "'{'");
        Block body;
        while (peek().kind != TokenKind::rbrace) {
            if (peek().kind == TokenKind::end) unexpected({"'}'"});
            if (at_word("deck") || at_word("choice")) {
                error_at(peek(), "declarations are only allowed at top level", {});
            }
            body.push_back(statement());
        }
        next();
        return body;
    }

    Instruction statement()
    {
        if (peek().kind != TokenKind::word || !is_reserved_word(peek().text) || at_word("in") ||
            at_word("slot") || at_word("internal")) {
            unexpected(std::vector<std::string>(kStatementKeywords.begin(), kStatementKeywords.end()));
        }
        const std::string keyword = next().text;
        if (keyword == "rotate") return Rotate{expr()};
        if (keyword == "move_block") {
            Operand block_len = expr();
            expect_word("slot");
            return MoveBlock{std::move(block_len), expr()};
        }
        if (keyword == "take_hidden") return TakeHidden{};
        if (keyword == "drop") return Drop{expr()};
        if (keyword == "move_first_to_end") return MoveFirstToEnd{};
        if (keyword == "repeat") {
            const int times = integer();
            return Repeat{times, block()};
        }
        if (keyword == "if_male") return IfGenderMale{block()};
        if (keyword == "checkpoint") return Checkpoint{integer()};
        if (keyword == "final_check") return FinalCheck{};
        error_at(tokens_[pos_ - 1], "declarations are only allowed at top level", {});
    }

    std::vector<Token> tokens_;
    const std::string& origin_;
    std::size_t pos_ = 0;
    bool seen_deck_ = false;
    TrickProgram program_;
};

std::string render_operand(const Operand& operand)
{
    if (const int* literal = std::get_if<int>(&operand)) return std::to_string(*literal);
    return std::get<std::string>(operand);
}

void print_block(std::ostringstream& out, const Block& block, int depth)
{
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    for (const auto& instruction : block) {
        std::visit(
            [&](const auto& op) {
                using T = std::decay_t<decltype(op)>;
                out << indent;
                if constexpr (std::is_same_v<T, Rotate>) {
                    out << "rotate " << render_operand(op.count) << '\n';
                } else if constexpr (std::is_same_v<T, MoveBlock>) {
                    out << "move_block " << render_operand(op.block_len) << " slot " << render_operand(op.slot)
                        << '\n';
                } else if constexpr (std::is_same_v<T, TakeHidden>) {
                    out << "take_hidden\n";
                } else if constexpr (std::is_same_v<T, Drop>) {
                    out << "drop " << render_operand(op.count) << '\n';
                } else if constexpr (std::is_same_v<T, MoveFirstToEnd>) {
                    out << "move_first_to_end\n";
                } else if constexpr (std::is_same_v<T, Repeat>) {
                    out << "repeat " << op.times << " {\n";
                    print_block(out, op.body, depth + 1);
                    out << indent << "}\n";
                } else if constexpr (std::is_same_v<T, IfGenderMale>) {
                    out << "if_male {\n";
                    print_block(out, op.body, depth + 1);
                    out << indent << "}\n";
                } else if constexpr (std::is_same_v<T, Checkpoint>) {
                    out << "checkpoint " << op.label << '\n';
                } else if constexpr (std::is_same_v<T, FinalCheck>) {
                    out << "final_check\n";
                }
            },
            instruction.node);
    }
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string message, std::vector<std::string> expected,
                       const std::string& origin)
    : std::runtime_error(render_error(line, column, message, expected, origin)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected))
{
}

TrickProgram parse(const ScriptSource& source)
{
    TrickProgram program = Parser(Lexer(source.text, source.origin).run(), source.origin).run();
    try {
        validate(program);
    } catch (const ValidationError& e) {
        std::string where = e.instruction_index() ? "instruction " + std::to_string(*e.instruction_index()) + ": "
                                                  : std::string();
        throw ValidationError(e.instruction_index(), source.origin + ": " + where + e.what());
    }
    return program;
}

ScriptSource pretty_print(const TrickProgram& program)
{
    std::ostringstream out;
    out << "deck " << program.initial_deck.to_string() << '\n';
    for (const auto& choice : program.choices) {
        out << "choice " << choice.name << " in ";
        if (choice.kind == ChoiceKind::insert_slot) {
            out << "internal\n";
            continue;
        }
        out << '{';
        for (std::size_t i = 0; i < choice.domain.size(); ++i) {
            if (i > 0) out << ", ";
            out << choice.domain[i];
        }
        out << "}\n";
    }
    print_block(out, program.instructions, 0);
    return ScriptSource{out.str(), "<pretty>"};
}

ScriptSource load_script(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trick file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return ScriptSource{text.str(), path};
}

}  // namespace trickmc
