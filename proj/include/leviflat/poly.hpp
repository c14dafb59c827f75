#ifndef LEVIFLAT_POLY_HPP
#define LEVIFLAT_POLY_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leviflat/rational.hpp"

namespace leviflat {

using ExpVec = std::vector<uint32_t>;

// Global monomial order: graded lexicographic (total degree first, then lex
// with variable 0 most significant). Fixed once for the whole project so that
// printing and leading terms are canonical.
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

struct SquarefreeParts;

// Sparse multivariate polynomial over the Gaussian rationals with a fixed
// number of variables. Variable semantics (z-slot, conjugate slot, t, p, ...)
// are supplied by the caller; printing takes a name table.
class Poly {
 public:
  using TermMap = std::map<ExpVec, GQ, GrlexLess>;

  explicit Poly(int nvars = 0) : nvars_(nvars) {}

  static Poly constant(int nvars, const GQ& c);
  static Poly variable(int nvars, int var);
  static Poly monomial(int nvars, ExpVec exp, const GQ& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GQ constant_value() const;  // 0 for the zero polynomial
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  int degree(int var) const;     // -1 for the zero polynomial
  int total_degree() const;      // -1 for the zero polynomial

  void add_term(const ExpVec& exp, const GQ& c);

  const GQ& coeff(const ExpVec& exp) const;  // 0 if absent
  // Leading term in the global order.
  const ExpVec& leading_exp() const;
  const GQ& leading_coeff() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const GQ& c);
  friend Poly operator*(Poly a, const GQ& c) { return a *= c; }
  friend Poly operator*(const GQ& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const;
  Poly derivative(int var) const;

  // Substitute every variable by images[v] (all with new_nvars variables).
  Poly compose(int new_nvars, std::span<const Poly> images) const;
  Poly substitute(int var, const Poly& value) const;
  Poly substitute(int var, const GQ& value) const;
  Poly shift(int var, const GQ& c) const;  // var -> var + c

  std::complex<double> eval(std::span<const std::complex<double>> vals) const;
  GQ eval_exact(std::span<const GQ> vals) const;

  // Univariate view with respect to one variable.
  std::vector<Poly> coeffs_wrt(int var) const;  // index = power of var
  Poly coeff_wrt(int var, int k) const;

  // Division with remainder by a single divisor in the global order.
  // For a single divisor, remainder == 0 is equivalent to divisibility.
  std::pair<Poly, Poly> divrem(const Poly& d) const;
  std::optional<Poly> divide_exact(const Poly& d) const;

  // gcd up to units; result is normalized monic in the global order.
  static Poly gcd(Poly a, Poly b);
  static Poly content_wrt(const Poly& p, int var);

  static SquarefreeParts squarefree_wrt(const Poly& p, int var);

  // Sylvester resultant eliminating `var`, computed by fraction-free
  // (Bareiss) elimination. Throws if neither input involves `var`.
  static Poly resultant(const Poly& p, const Poly& q, int var);

  Poly normalized_monic() const;  // divide by the leading coefficient
  double max_coeff_abs() const;

  std::string str(std::span<const std::string> names) const;

 private:
  int nvars_;
  TermMap terms_;
};

}  // namespace leviflat

#endif
