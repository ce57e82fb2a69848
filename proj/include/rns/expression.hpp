#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "rns/bigint.hpp"
#include "rns/error.hpp"
#include "rns/moduli.hpp"
#include "rns/rns_int.hpp"

namespace rns {

namespace detail {

// expr := term (('+'|'-') term)*
// term := factor ('*' factor)*
// factor := integer | '(' expr ')'
// Each literal is encoded once; everything after that stays in residues.
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const ModulusSet& ms) : text_(text), ms_(ms) {}

  RnsInt parse() {
    RnsInt value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  RnsInt expr() {
    RnsInt acc = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        acc = add(acc, term());
      } else if (accept('-')) {
        acc = sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  RnsInt term() {
    RnsInt acc = factor();
    for (;;) {
      skip_space();
      if (!accept('*')) return acc;
      acc = mul(acc, factor());
    }
  }

  RnsInt factor() {
    skip_space();
    if (accept('(')) {
      RnsInt inner = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_) fail(pos_ == text_.size() ? "unexpected end of expression"
                                                 : "expected integer or '('");
    return encode(parse_decimal(text_.substr(start, pos_ - start)), ms_);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::ParseError, message + " at offset " + std::to_string(pos_), pos_);
  }

  std::string_view text_;
  const ModulusSet& ms_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Evaluates an integer expression with + - * and parentheses entirely in
/// residue form. No division. Throws ParseError; Error::first() is the offset.
inline RnsInt evaluate(std::string_view expression, const ModulusSet& ms) {
  return detail::ExpressionParser(expression, ms).parse();
}

}  // namespace rns
