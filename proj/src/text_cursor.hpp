#pragma once

// Position-tracking reader shared by the text parsers.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "mactt/error.hpp"

namespace mactt::detail {

class TextCursor {
public:
    explicit TextCursor(std::string_view text, std::size_t line = 1, std::size_t column = 1)
        : text_(text), line_(line), column_(column) {}

    bool at_end() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    std::string_view rest() const { return text_.substr(pos_); }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    bool starts_with(std::string_view s) const { return rest().substr(0, s.size()) == s; }

    bool consume(std::string_view s) {
        if (!starts_with(s)) return false;
        for (std::size_t i = 0; i < s.size(); ++i) advance();
        return true;
    }

    void expect(std::string_view s) {
        skip_space();
        if (!consume(s)) fail("expected '" + std::string(s) + "'");
    }

    std::string identifier() {
        std::string out;
        while (!at_end()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                out.push_back(advance());
            } else {
                break;
            }
        }
        return out;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(line_, column_, message);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace mactt::detail

namespace mactt {
class HFSet;
namespace detail {
/// Reads one HF literal starting at the cursor (leading space skipped).
HFSet read_hfset(TextCursor& cursor);
/// True if the next non-space character can start an HF literal.
bool hfset_starts(const TextCursor& cursor);
}  // namespace detail
}  // namespace mactt
