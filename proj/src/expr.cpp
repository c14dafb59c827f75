#include "leviflat/expr.hpp"

#include <cctype>
#include <cstdlib>

namespace leviflat {

namespace {

struct Token {
  enum class Type { Number, Ident, Tilde, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { next(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    next();
    return t;
  }

 private:
  void next() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
        continue;
      }
      break;
    }
    int line = line_, col = col_;
    if (pos_ >= s_.size()) {
      tok_ = {Token::Type::End, "", line, col};
      return;
    }
    char c = s_[pos_];
    auto single = [&](Token::Type t) {
      tok_ = {t, std::string(1, c), line, col};
      ++pos_;
      ++col_;
    };
    switch (c) {
      case '+': single(Token::Type::Plus); return;
      case '-': single(Token::Type::Minus); return;
      case '*': single(Token::Type::Star); return;
      case '/': single(Token::Type::Slash); return;
      case '^': single(Token::Type::Caret); return;
      case '(': single(Token::Type::LParen); return;
      case ')': single(Token::Type::RParen); return;
      case '~': single(Token::Type::Tilde); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      bool seen_dot = false;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
              (s_[pos_] == '.' && !seen_dot))) {
        if (s_[pos_] == '.') seen_dot = true;
        ++pos_;
      }
      std::string text = s_.substr(start, pos_ - start);
      col_ += static_cast<int>(text.size());
      tok_ = {Token::Type::Number, text, line, col};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])))) ++pos_;
      std::string text = s_.substr(start, pos_ - start);
      col_ += static_cast<int>(text.size());
      tok_ = {Token::Type::Ident, text, line, col};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

std::unique_ptr<Expr> make(Expr::Kind k, int line, int col) {
  auto e = std::make_unique<Expr>();
  e->kind = k;
  e->line = line;
  e->col = col;
  return e;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) {}

  std::unique_ptr<Expr> parse() {
    auto e = expr();
    const Token& t = lex_.peek();
    if (t.type != Token::Type::End)
      throw ParseError("unexpected trailing input '" + t.text + "'", t.line, t.col);
    return e;
  }

 private:
  std::unique_ptr<Expr> expr() {
    auto a = term();
    while (true) {
      const Token& t = lex_.peek();
      if (t.type == Token::Type::Plus || t.type == Token::Type::Minus) {
        Token op = lex_.take();
        auto e = make(op.type == Token::Type::Plus ? Expr::Kind::Add : Expr::Kind::Sub,
                      op.line, op.col);
        e->a = std::move(a);
        e->b = term();
        a = std::move(e);
      } else {
        return a;
      }
    }
  }

  std::unique_ptr<Expr> term() {
    auto a = factor();
    while (true) {
      const Token& t = lex_.peek();
      if (t.type == Token::Type::Star || t.type == Token::Type::Slash) {
        Token op = lex_.take();
        auto e = make(op.type == Token::Type::Star ? Expr::Kind::Mul : Expr::Kind::Div,
                      op.line, op.col);
        e->a = std::move(a);
        e->b = factor();
        a = std::move(e);
      } else {
        return a;
      }
    }
  }

  std::unique_ptr<Expr> factor() {
    const Token& t = lex_.peek();
    if (t.type == Token::Type::Minus || t.type == Token::Type::Plus) {
      Token op = lex_.take();
      auto inner = factor();
      if (op.type == Token::Type::Plus) return inner;
      auto e = make(Expr::Kind::Neg, op.line, op.col);
      e->a = std::move(inner);
      return e;
    }
    auto a = atom();
    if (lex_.peek().type == Token::Type::Caret) {
      Token op = lex_.take();
      const Token& num = lex_.peek();
      if (num.type != Token::Type::Number || num.text.find('.') != std::string::npos)
        throw ParseError("'^' requires a nonnegative integer exponent", op.line, op.col);
      Token nt = lex_.take();
      long v = std::strtol(nt.text.c_str(), nullptr, 10);
      if (v < 0) throw ParseError("negative exponent", nt.line, nt.col);
      auto e = make(Expr::Kind::Pow, op.line, op.col);
      e->exponent = static_cast<unsigned>(v);
      e->a = std::move(a);
      return e;
    }
    return a;
  }

  std::unique_ptr<Expr> atom() {
    Token t = lex_.take();
    switch (t.type) {
      case Token::Type::Number: {
        auto e = make(Expr::Kind::Number, t.line, t.col);
        e->value = GQ(rational_from_decimal(t.text));
        return e;
      }
      case Token::Type::LParen: {
        auto e = expr();
        const Token& close = lex_.peek();
        if (close.type != Token::Type::RParen)
          throw ParseError("expected ')'", close.line, close.col);
        lex_.take();
        return e;
      }
      case Token::Type::Tilde: {
        const Token& id = lex_.peek();
        if (id.type != Token::Type::Ident)
          throw ParseError("expected variable after '~'", t.line, t.col);
        Token idt = lex_.take();
        auto [base, idx] = split_var(idt);
        if (base != "z" && base != "w")
          throw ParseError("only ~z<k> / ~w<k> conjugate variables are allowed", idt.line, idt.col);
        if (idx <= 0) throw ParseError("conjugate variable needs an index", idt.line, idt.col);
        auto e = make(Expr::Kind::Var, t.line, t.col);
        e->var = "~z";
        e->index = idx;
        return e;
      }
      case Token::Type::Ident: {
        if (t.text == "i") {
          auto e = make(Expr::Kind::Number, t.line, t.col);
          e->value = GQ::i();
          return e;
        }
        if (t.text == "zeta") {
          auto e = make(Expr::Kind::Var, t.line, t.col);
          e->var = "zeta";
          e->index = 0;
          return e;
        }
        auto [base, idx] = split_var(t);
        if ((base == "z" || base == "x" || base == "y") && idx >= 1) {
          auto e = make(Expr::Kind::Var, t.line, t.col);
          e->var = base;
          e->index = idx;
          return e;
        }
        if (base == "z" && idx == 0) {
          // bare "z": alias for z1 (CR base coordinate)
          auto e = make(Expr::Kind::Var, t.line, t.col);
          e->var = "z";
          e->index = 1;
          return e;
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
      }
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }
  }

  static std::pair<std::string, int> split_var(const Token& t) {
    size_t k = 0;
    while (k < t.text.size() && std::isalpha(static_cast<unsigned char>(t.text[k]))) ++k;
    std::string base = t.text.substr(0, k);
    int idx = 0;
    if (k < t.text.size()) {
      for (size_t j = k; j < t.text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(t.text[j])))
          throw ParseError("bad variable '" + t.text + "'", t.line, t.col);
      }
      idx = std::atoi(t.text.c_str() + k);
    }
    return {base, idx};
  }

  Lexer lex_;
};

}  // namespace

std::unique_ptr<Expr> parse_expression(const std::string& text) {
  return Parser(text).parse();
}

int max_coordinate_index(const Expr& e) {
  int m = 0;
  if (e.kind == Expr::Kind::Var && e.var != "zeta") m = e.index;
  if (e.a) m = std::max(m, max_coordinate_index(*e.a));
  if (e.b) m = std::max(m, max_coordinate_index(*e.b));
  return m;
}

bool uses_zeta(const Expr& e) {
  if (e.kind == Expr::Kind::Var && e.var == "zeta") return true;
  if (e.a && uses_zeta(*e.a)) return true;
  if (e.b && uses_zeta(*e.b)) return true;
  return false;
}

namespace {

BiPoly to_bipoly_rec(const Expr& e, int n) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return BiPoly::constant(n, e.value);
    case Expr::Kind::Var: {
      if (e.var == "zeta")
        throw ParseError("'zeta' is only valid in CR boundary functions", e.line, e.col);
      if (e.index > n) throw ParseError("variable index out of range", e.line, e.col);
      int j = e.index - 1;
      if (e.var == "z") return BiPoly::z(n, j);
      if (e.var == "~z") return BiPoly::zbar(n, j);
      GQ half(1, 2);
      if (e.var == "x")  // (z + ~z)/2
        return (BiPoly::z(n, j) + BiPoly::zbar(n, j)) * half;
      // y = (z - ~z)/(2i) = -i/2 (z - ~z)
      GQ mhalf_i = GQ(0) - GQ::i() * half;
      return (BiPoly::z(n, j) - BiPoly::zbar(n, j)) * mhalf_i;
    }
    case Expr::Kind::Add:
      return to_bipoly_rec(*e.a, n) + to_bipoly_rec(*e.b, n);
    case Expr::Kind::Sub:
      return to_bipoly_rec(*e.a, n) - to_bipoly_rec(*e.b, n);
    case Expr::Kind::Mul:
      return to_bipoly_rec(*e.a, n) * to_bipoly_rec(*e.b, n);
    case Expr::Kind::Div: {
      BiPoly num = to_bipoly_rec(*e.a, n);
      BiPoly den = to_bipoly_rec(*e.b, n);
      if (!den.poly().is_constant())
        throw ParseError("division by a non-constant is not allowed here", e.line, e.col);
      GQ d = den.poly().constant_value();
      if (d.is_zero()) throw ParseError("division by zero", e.line, e.col);
      return num * (GQ(1) / d);
    }
    case Expr::Kind::Neg:
      return -to_bipoly_rec(*e.a, n);
    case Expr::Kind::Pow: {
      BiPoly base = to_bipoly_rec(*e.a, n);
      return BiPoly(n, base.poly().pow(e.exponent));
    }
  }
  throw std::logic_error("unreachable");
}

struct RatValue {
  BiPoly num, den;
};

RatValue to_rational_rec(const Expr& e, int n) {
  auto lift = [&](BiPoly p) { return RatValue{std::move(p), BiPoly::constant(n, GQ(1))}; };
  switch (e.kind) {
    case Expr::Kind::Number:
      return lift(BiPoly::constant(n, e.value));
    case Expr::Kind::Var: {
      if (e.var != "z")
        throw ParseError("first integrals must use holomorphic variables z<k> only", e.line, e.col);
      if (e.index > n) throw ParseError("variable index out of range", e.line, e.col);
      return lift(BiPoly::z(n, e.index - 1));
    }
    case Expr::Kind::Add: {
      RatValue a = to_rational_rec(*e.a, n), b = to_rational_rec(*e.b, n);
      return RatValue{a.num * b.den + b.num * a.den, a.den * b.den};
    }
    case Expr::Kind::Sub: {
      RatValue a = to_rational_rec(*e.a, n), b = to_rational_rec(*e.b, n);
      return RatValue{a.num * b.den - b.num * a.den, a.den * b.den};
    }
    case Expr::Kind::Mul: {
      RatValue a = to_rational_rec(*e.a, n), b = to_rational_rec(*e.b, n);
      return RatValue{a.num * b.num, a.den * b.den};
    }
    case Expr::Kind::Div: {
      RatValue a = to_rational_rec(*e.a, n), b = to_rational_rec(*e.b, n);
      if (b.num.is_zero()) throw ParseError("division by zero", e.line, e.col);
      return RatValue{a.num * b.den, a.den * b.num};
    }
    case Expr::Kind::Neg: {
      RatValue a = to_rational_rec(*e.a, n);
      return RatValue{-a.num, a.den};
    }
    case Expr::Kind::Pow: {
      RatValue a = to_rational_rec(*e.a, n);
      return RatValue{BiPoly(n, a.num.poly().pow(e.exponent)),
                      BiPoly(n, a.den.poly().pow(e.exponent))};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

BiPoly expr_to_bipoly(const Expr& e, int n) { return to_bipoly_rec(e, n); }

RationalFunction expr_to_rational(const Expr& e, int n) {
  RatValue v = to_rational_rec(e, n);
  // Reduce by the gcd to keep derived polynomials small.
  Poly g = Poly::gcd(v.num.poly(), v.den.poly());
  if (!g.is_constant()) {
    v.num = BiPoly(n, *v.num.poly().divide_exact(g));
    v.den = BiPoly(n, *v.den.poly().divide_exact(g));
  }
  return RationalFunction(v.num, v.den);
}

Cx expr_eval(const Expr& e, std::span<const Cx> z, Cx zeta) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.value.to_complex();
    case Expr::Kind::Var: {
      if (e.var == "zeta") return zeta;
      if (e.var == "z") {
        if (e.index < 1 || e.index > static_cast<int>(z.size()))
          throw std::domain_error("base coordinate index out of range in boundary function");
        return z[e.index - 1];
      }
      throw std::domain_error("boundary functions may use z<k> and zeta only");
    }
    case Expr::Kind::Add:
      return expr_eval(*e.a, z, zeta) + expr_eval(*e.b, z, zeta);
    case Expr::Kind::Sub:
      return expr_eval(*e.a, z, zeta) - expr_eval(*e.b, z, zeta);
    case Expr::Kind::Mul:
      return expr_eval(*e.a, z, zeta) * expr_eval(*e.b, z, zeta);
    case Expr::Kind::Div: {
      Cx d = expr_eval(*e.b, z, zeta);
      if (std::abs(d) < 1e-300) throw std::domain_error("division by zero in boundary function");
      return expr_eval(*e.a, z, zeta) / d;
    }
    case Expr::Kind::Neg:
      return -expr_eval(*e.a, z, zeta);
    case Expr::Kind::Pow: {
      Cx b = expr_eval(*e.a, z, zeta);
      Cx r(1, 0);
      for (unsigned k = 0; k < e.exponent; ++k) r *= b;
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

GQ parse_complex_scalar(const std::string& text) {
  // Accept: a, bi, a+bi, a-bi with a,b integer/rational/decimal, b possibly
  // empty ("i" = 1i). Whitespace-free by construction of the callers.
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex literal");

  // Split at the last top-level '+' or '-' that is not the leading sign.
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  auto parse_part = [](std::string part, bool imag) -> mpq_class {
    if (imag) {
      if (part.empty() || part == "+") return mpq_class(1);
      if (part == "-") return mpq_class(-1);
    }
    bool neg = false;
    if (!part.empty() && (part[0] == '+' || part[0] == '-')) {
      neg = part[0] == '-';
      part = part.substr(1);
    }
    mpq_class q = rational_from_decimal(part);
    return neg ? mpq_class(-q) : q;
  };

  bool has_i = !s.empty() && s.back() == 'i';
  if (!has_i) {
    if (split != std::string::npos) {
      // "a+b" without i is malformed
      throw std::invalid_argument("bad complex literal: " + text);
    }
    return GQ(parse_part(s, false));
  }
  std::string body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  if (split == std::string::npos || split >= body.size()) {
    return GQ(mpq_class(0), parse_part(body, true));
  }
  std::string re = body.substr(0, split);
  std::string im = body.substr(split);
  return GQ(parse_part(re, false), parse_part(im, true));
}

std::vector<GQ> parse_point(const std::string& text, int expected_dim) {
  std::vector<GQ> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
    out.push_back(parse_complex_scalar(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (expected_dim > 0 && static_cast<int>(out.size()) != expected_dim)
    throw std::invalid_argument("point has " + std::to_string(out.size()) +
                                " coordinates, expected " + std::to_string(expected_dim));
  return out;
}

}  // namespace leviflat
