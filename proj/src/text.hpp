#pragma once

// Shared tokenizer and polynomial expression parser for the text grammars.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cad/polynomial.hpp"

namespace cad::text {

enum class Tok { Ident, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, Dot, Rel, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view src);

struct Expr {
  enum class Kind { Number, Var, Add, Sub, Mul, Neg, Pow } kind;
  Rational number;
  std::string name;
  std::uint32_t exponent = 0;
  std::unique_ptr<Expr> lhs, rhs;
  std::size_t pos = 0;
};

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  std::size_t mark() const { return pos_; }
  void reset(std::size_t m) { pos_ = m; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool is_keyword(std::string_view w);

std::unique_ptr<Expr> parse_expr(Cursor& cur);
void collect_vars(const Expr& e, std::vector<std::string>& names);
Polynomial to_polynomial(const Expr& e, const VarOrder& order);

}  // namespace cad::text
