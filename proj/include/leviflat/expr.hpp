#ifndef LEVIFLAT_EXPR_HPP
#define LEVIFLAT_EXPR_HPP

#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "leviflat/bipoly.hpp"
#include "leviflat/rational.hpp"

namespace leviflat {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ")"),
        line(line_), col(col_) {}
};

// Expression grammar shared by the .lf defining-function files, the first
// integral flags and the CR boundary functions:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ('-' | '+') factor | atom ('^' INT)?
//   atom   := NUMBER | 'i' | VAR | '(' expr ')'
//   VAR    := z<k> | ~z<k> | ~w<k> | x<k> | y<k> | zeta
//   NUMBER := integer, rational p/q, or decimal literal (taken exactly)
//
// '#' starts a comment until end of line.
struct Expr {
  enum class Kind { Number, Var, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  GQ value;            // Number
  std::string var;     // Var: "z", "~z", "x", "y", "zeta"
  int index = 0;       // Var: 1-based coordinate index (0 for zeta)
  unsigned exponent = 0;  // Pow
  std::unique_ptr<Expr> a, b;
  int line = 0, col = 0;
};

std::unique_ptr<Expr> parse_expression(const std::string& text);

// Highest coordinate index appearing in the expression (z/x/y/~z/~w).
int max_coordinate_index(const Expr& e);
bool uses_zeta(const Expr& e);

// Exact conversion to a BiPoly in n slots. x_k and y_k expand as
// x_k = (z_k + ~z_k)/2, y_k = (z_k - ~z_k)/(2i). Division is allowed only by
// (sub)expressions that reduce to nonzero constants. zeta is rejected.
BiPoly expr_to_bipoly(const Expr& e, int n);

// Conversion to a rational function of the z slots; '/' is allowed with any
// nonzero polynomial denominator, conjugate/x/y variables are rejected.
RationalFunction expr_to_rational(const Expr& e, int n);

// Numeric evaluation with base coordinates z_1..z_n (alias "z" = z_1) and the
// fiber variable zeta. Used for CR boundary data.
Cx expr_eval(const Expr& e, std::span<const Cx> z, Cx zeta);

// "a,b" -> exact complex coordinates; components accept forms like
// 1, -2/3, 0.5, 1+2i, -i, 3i.
std::vector<GQ> parse_point(const std::string& text, int expected_dim);
GQ parse_complex_scalar(const std::string& text);

}  // namespace leviflat

#endif
