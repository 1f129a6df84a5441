#include "hodyn/symcore/parse.hpp"

#include <cctype>
#include <vector>

#include "hodyn/error.hpp"

namespace hodyn::sym {

namespace {

enum class Tok { Uint, Symbol, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Uint, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      while (j < s.size() && s[j] == '\'') ++j;
      out.push_back({Tok::Symbol, std::string(s.substr(i, j - i)), col});
      i = j;
    } else {
      Tok k;
      switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", col);
      }
      out.push_back({k, std::string(1, c), col});
      ++i;
    }
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const VariableContext& ctx) : toks_(std::move(toks)), ctx_(ctx) {}

  Expr parse_all() {
    Expr e = expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().column);
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  Expr expr() {
    Expr acc = term();
    while (true) {
      if (accept(Tok::Plus))
        acc = acc + term();
      else if (accept(Tok::Minus))
        acc = acc - term();
      else
        return acc;
    }
  }

  Expr term() {
    Expr acc = unary();
    while (true) {
      if (accept(Tok::Star)) {
        acc = acc * unary();
      } else if (peek().kind == Tok::Slash) {
        std::size_t col = next().column;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", col);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept(Tok::Minus)) return -unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept(Tok::Caret)) {
      const Token& t = peek();
      if (t.kind != Tok::Uint) throw ParseError("exponent must be an unsigned integer", t.column);
      next();
      if (t.text.size() > 6) throw ParseError("exponent too large", t.column);
      base = base.pow(std::stoi(t.text));
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Uint: {
        next();
        Rational r(mpz_class(t.text));
        if (peek().kind == Tok::Slash && peek(1).kind == Tok::Uint) {
          next();
          const Token& d = next();
          mpz_class den(d.text);
          if (den == 0) throw ParseError("zero denominator in rational literal", d.column);
          r = Rational(mpz_class(t.text), den);
          r.canonicalize();
        }
        return Expr(r);
      }
      case Tok::Symbol: {
        next();
        return symbol(t);
      }
      case Tok::LParen: {
        next();
        Expr e = expr();
        if (!accept(Tok::RParen)) throw ParseError("expected ')'", peek().column);
        return e;
      }
      case Tok::End: throw ParseError("unexpected end of expression", t.column);
      default: throw ParseError("unexpected '" + t.text + "'", t.column);
    }
  }

  Expr symbol(const Token& t) {
    std::size_t primes = 0;
    while (primes < t.text.size() && t.text[t.text.size() - 1 - primes] == '\'') ++primes;
    std::string stem = t.text.substr(0, t.text.size() - primes);
    const Var* v = ctx_.find(stem);
    if (!v) throw ParseError("undeclared identifier '" + stem + "'", t.column);
    if (primes > 0) {
      int allowed = ctx_.max_order(stem);
      if (allowed < 0) throw ParseError("'" + stem + "' does not admit time derivatives", t.column);
      if (static_cast<int>(primes) > allowed)
        throw ParseError("derivative order " + std::to_string(primes) + " of '" + stem +
                             "' exceeds the declared jet order " + std::to_string(allowed),
                         t.column);
    }
    return Expr::variable(t.text);
  }

  std::vector<Token> toks_;
  const VariableContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const VariableContext& ctx) {
  return Parser(tokenize(text), ctx).parse_all();
}

}  // namespace hodyn::sym
