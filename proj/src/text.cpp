#include "text.hpp"

#include <algorithm>
#include <sstream>

#include "cad/error.hpp"

namespace cad::text {

bool is_keyword(std::string_view w) {
  return w == "and" || w == "or" || w == "not" || w == "implies" || w == "iff" || w == "exists" ||
         w == "forall" || w == "true" || w == "false";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c >= 'a' && c <= 'z') {
      while (i < src.size() && ((src[i] >= 'a' && src[i] <= 'z') || (src[i] >= '0' && src[i] <= '9') || src[i] == '_'))
        ++i;
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
      continue;
    }
    if (c >= '0' && c <= '9') {
      while (i < src.size() && src[i] >= '0' && src[i] <= '9') ++i;
      out.push_back({Tok::Number, std::string(src.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '+': out.push_back({Tok::Plus, "+", start}); ++i; continue;
      case '-': out.push_back({Tok::Minus, "-", start}); ++i; continue;
      case '*': out.push_back({Tok::Star, "*", start}); ++i; continue;
      case '/': out.push_back({Tok::Slash, "/", start}); ++i; continue;
      case '^': out.push_back({Tok::Caret, "^", start}); ++i; continue;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      case '.': out.push_back({Tok::Dot, ".", start}); ++i; continue;
      case '=': out.push_back({Tok::Rel, "=", start}); ++i; continue;
      case '!':
        if (i + 1 < src.size() && src[i + 1] == '=') {
          out.push_back({Tok::Rel, "!=", start});
          i += 2;
          continue;
        }
        break;
      case '<':
      case '>':
        if (i + 1 < src.size() && src[i + 1] == '=') {
          out.push_back({Tok::Rel, std::string{c, '='}, start});
          i += 2;
        } else {
          out.push_back({Tok::Rel, std::string{c}, start});
          ++i;
        }
        continue;
      default: break;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

namespace {

std::unique_ptr<Expr> make(Expr::Kind k, std::size_t pos) {
  auto e = std::make_unique<Expr>();
  e->kind = k;
  e->pos = pos;
  return e;
}

std::unique_ptr<Expr> parse_unary(Cursor& cur);

std::unique_ptr<Expr> parse_primary(Cursor& cur) {
  const Token& t = cur.peek();
  if (t.kind == Tok::Number) {
    cur.next();
    auto e = make(Expr::Kind::Number, t.pos);
    Integer num(t.text);
    Integer den = 1;
    if (cur.at(Tok::Slash)) {
      cur.next();
      const Token& d = cur.peek();
      if (d.kind != Tok::Number) throw ParseError(d.pos, "expected denominator");
      cur.next();
      den = Integer(d.text);
      if (den == 0) throw ParseError(d.pos, "zero denominator");
    }
    e->number = Rational(num, den);
    e->number.canonicalize();
    return e;
  }
  if (t.kind == Tok::Ident) {
    if (is_keyword(t.text)) throw ParseError(t.pos, "unexpected keyword '" + t.text + "'");
    cur.next();
    auto e = make(Expr::Kind::Var, t.pos);
    e->name = t.text;
    return e;
  }
  if (t.kind == Tok::LParen) {
    cur.next();
    auto e = parse_expr(cur);
    if (!cur.at(Tok::RParen)) throw ParseError(cur.peek().pos, "expected ')'");
    cur.next();
    return e;
  }
  throw ParseError(t.pos, t.kind == Tok::End ? "unexpected end of input" : "unexpected token '" + t.text + "'");
}

std::unique_ptr<Expr> parse_power(Cursor& cur) {
  auto base = parse_primary(cur);
  if (cur.at(Tok::Caret)) {
    std::size_t pos = cur.peek().pos;
    cur.next();
    const Token& t = cur.peek();
    if (t.kind != Tok::Number) throw ParseError(t.pos, "expected non-negative integer exponent");
    cur.next();
    auto e = make(Expr::Kind::Pow, pos);
    e->exponent = static_cast<std::uint32_t>(std::stoul(t.text));
    e->lhs = std::move(base);
    return e;
  }
  return base;
}

std::unique_ptr<Expr> parse_unary(Cursor& cur) {
  if (cur.at(Tok::Minus)) {
    std::size_t pos = cur.next().pos;
    auto e = make(Expr::Kind::Neg, pos);
    e->lhs = parse_unary(cur);
    return e;
  }
  if (cur.at(Tok::Plus)) {
    cur.next();
    return parse_unary(cur);
  }
  return parse_power(cur);
}

std::unique_ptr<Expr> parse_term(Cursor& cur) {
  auto lhs = parse_unary(cur);
  while (cur.at(Tok::Star)) {
    std::size_t pos = cur.next().pos;
    auto e = make(Expr::Kind::Mul, pos);
    e->lhs = std::move(lhs);
    e->rhs = parse_unary(cur);
    lhs = std::move(e);
  }
  return lhs;
}

}  // namespace

std::unique_ptr<Expr> parse_expr(Cursor& cur) {
  auto lhs = parse_term(cur);
  while (cur.at(Tok::Plus) || cur.at(Tok::Minus)) {
    bool plus = cur.at(Tok::Plus);
    std::size_t pos = cur.next().pos;
    auto e = make(plus ? Expr::Kind::Add : Expr::Kind::Sub, pos);
    e->lhs = std::move(lhs);
    e->rhs = parse_term(cur);
    lhs = std::move(e);
  }
  return lhs;
}

void collect_vars(const Expr& e, std::vector<std::string>& names) {
  if (e.kind == Expr::Kind::Var) {
    if (std::find(names.begin(), names.end(), e.name) == names.end()) names.push_back(e.name);
    return;
  }
  if (e.lhs) collect_vars(*e.lhs, names);
  if (e.rhs) collect_vars(*e.rhs, names);
}

Polynomial to_polynomial(const Expr& e, const VarOrder& order) {
  const std::size_t n = order.size();
  switch (e.kind) {
    case Expr::Kind::Number: return Polynomial::constant(n, e.number);
    case Expr::Kind::Var: {
      auto v = order.find(e.name);
      if (!v) throw ParseError(e.pos, "variable '" + e.name + "' not in ordering");
      return Polynomial::variable(n, *v);
    }
    case Expr::Kind::Add: return to_polynomial(*e.lhs, order) + to_polynomial(*e.rhs, order);
    case Expr::Kind::Sub: return to_polynomial(*e.lhs, order) - to_polynomial(*e.rhs, order);
    case Expr::Kind::Mul: return to_polynomial(*e.lhs, order) * to_polynomial(*e.rhs, order);
    case Expr::Kind::Neg: return -to_polynomial(*e.lhs, order);
    case Expr::Kind::Pow: return to_polynomial(*e.lhs, order).pow(e.exponent);
  }
  return Polynomial(n);
}

}  // namespace cad::text

namespace cad {

std::string to_string(const Polynomial& p, const VarOrder& order) {
  if (p.nvars() > order.size()) fail(ErrorKind::OrderingMismatch, "ordering too short to print polynomial");
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coef;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out << '-';
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = t.exponents.size(); i-- > 0;) {
      if (t.exponents[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += order.name(i);
      if (t.exponents[i] > 1) mono += '^' + std::to_string(t.exponents[i]);
    }
    if (mono.empty()) {
      out << c.get_str();
    } else if (c == 1) {
      out << mono;
    } else {
      out << c.get_str() << '*' << mono;
    }
  }
  return out.str();
}

Polynomial parse_polynomial(std::string_view src, const VarOrder& order) {
  text::Cursor cur(text::tokenize(src));
  auto e = text::parse_expr(cur);
  if (!cur.at(text::Tok::End)) throw ParseError(cur.peek().pos, "trailing input '" + cur.peek().text + "'");
  return text::to_polynomial(*e, order);
}

}  // namespace cad
