// Small recursive-descent parser shared by the scalar and symbol grammars.
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := unary (('*' | '/' | <juxtaposition>) unary)*
//   unary   := '-' unary | power
//   power   := primary ['^' ['-'] digits]
//   primary := number | letter | '(' expr ')'
// Letters are single-character atoms resolved by the caller, so "iA" is i*A
// and "2p" is 2*p. Products keep the written order (the symbol ring is
// noncommutative).
#ifndef HOPFTWIST_EXPR_PARSER_HPP
#define HOPFTWIST_EXPR_PARSER_HPP

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "hopftwist/errors.hpp"
#include "hopftwist/scalars.hpp"

namespace hopftwist::detail {

template <class Ring>
class ExprParser {
 public:
  using AtomFn = std::function<std::optional<Ring>(char)>;

  ExprParser(std::string_view text, AtomFn atom) : s_(text), atom_(std::move(atom)) {}

  Ring parse() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    Ring r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::Parse, why + " at offset " + std::to_string(pos_) + " in \"" +
                                 std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool starts_primary(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  Ring expr() {
    Ring acc(0L);
    bool neg = false;
    char c = peek();
    if (c == '+' || c == '-') {
      neg = (c == '-');
      ++pos_;
    }
    Ring t = term();
    acc = neg ? acc - t : t;
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Ring u = term();
      acc = (c == '+') ? acc + u : acc - u;
    }
    return acc;
  }

  Ring term() {
    Ring acc = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        ++pos_;
        Ring d = unary();
        auto inv = d.inverse();
        if (!inv) fail("division by a non-invertible factor");
        acc = acc * *inv;
      } else if (starts_primary(c)) {
        acc = acc * unary();
      } else {
        break;
      }
    }
    return acc;
  }

  Ring unary() {
    if (peek() == '-') {
      ++pos_;
      return Ring(0L) - unary();
    }
    return power();
  }

  Ring power() {
    Ring base = primary();
    if (peek() != '^') return base;
    ++pos_;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int n = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (!neg) return base.pow(n);
    auto inv = base.inverse();
    if (!inv) fail("negative power of a non-invertible factor");
    return inv->pow(n);
  }

  Ring primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Ring r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      mpq_class q;
      try {
        q = parse_rational(s_.substr(start, pos_ - start));
      } catch (const Error&) {
        fail("bad number");
      }
      return Ring(GaussQ(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      auto r = atom_(c);
      if (!r) fail(std::string("unknown symbol '") + c + "'");
      return *r;
    }
    fail("expected a number, symbol or '('");
  }

  std::string_view s_;
  AtomFn atom_;
  std::size_t pos_ = 0;
};

}  // namespace hopftwist::detail

#endif
