#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "fil/error.hpp"

namespace fil {

enum class TokenKind {
  identifier,
  number,  // 12
  degree,  // 3/4
  lbrace,
  rbrace,
  lparen,
  rparen,
  comma,
  colon,
  at,
  leq,
  end,
};

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

// Whitespace-insensitive tokenizer shared by the theory and attribute
// implication front ends. '#' starts a comment running to end of line.
// The UTF-8 sequence for the identity symbol is lexed as an identifier.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  bool at_end() const { return current_.kind == TokenKind::end; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  bool accept(TokenKind kind) {
    if (current_.kind != kind) return false;
    advance();
    return true;
  }

  Token expect(TokenKind kind, const char* what) {
    if (current_.kind != kind)
      throw ParseError(std::string("expected ") + what + ", got " + describe(current_),
                       current_.line, current_.column);
    return next();
  }

  void expect_end() {
    if (!at_end())
      throw ParseError("unexpected " + describe(current_), current_.line, current_.column);
  }

 private:
  static std::string describe(const Token& t) {
    return t.kind == TokenKind::end ? std::string("end of input") : "'" + t.text + "'";
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  char at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
    current_ = Token{TokenKind::end, "", line_, col_};
    if (pos_ >= text_.size()) return;

    const std::size_t start = pos_;
    char c = text_[pos_];
    auto single = [&](TokenKind k) {
      bump();
      current_.kind = k;
    };
    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_char(text_[pos_])) bump();
      current_.kind = TokenKind::identifier;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (std::isdigit(static_cast<unsigned char>(at(pos_)))) bump();
      current_.kind = TokenKind::number;
      if (at(pos_) == '/') {
        bump();
        if (!std::isdigit(static_cast<unsigned char>(at(pos_))))
          throw ParseError("malformed degree literal", current_.line, current_.column);
        while (std::isdigit(static_cast<unsigned char>(at(pos_)))) bump();
        current_.kind = TokenKind::degree;
      }
    } else if (text_.substr(pos_, 3) == "\xE2\x8A\xA4") {  // U+22A4
      bump(), bump(), bump();
      col_ -= 2;
      current_.kind = TokenKind::identifier;
    } else if (c == '<' && at(pos_ + 1) == '=') {
      bump(), bump();
      current_.kind = TokenKind::leq;
    } else {
      switch (c) {
        case '{': single(TokenKind::lbrace); break;
        case '}': single(TokenKind::rbrace); break;
        case '(': single(TokenKind::lparen); break;
        case ')': single(TokenKind::rparen); break;
        case ',': single(TokenKind::comma); break;
        case ':': single(TokenKind::colon); break;
        case '@': single(TokenKind::at); break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
      }
    }
    current_.text.assign(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_;
};

}  // namespace fil
