#ifndef LEVIFLAT_BIPOLY_HPP
#define LEVIFLAT_BIPOLY_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "leviflat/poly.hpp"

namespace leviflat {

using Cx = std::complex<double>;
using CxVec = std::vector<Cx>;

// Polynomial in n holomorphic slots z_1..z_n and n conjugate slots.
// Underlying variable layout: var j   = z_{j+1}        (0 <= j < n)
//                             var n+j = conjugate slot (z̄_{j+1}, or w̄_{j+1}
//                                       after complexification).
// Complexification is a relabeling of the conjugate slots, so the same data
// serves both ρ(z, z̄) and ρ(z, w̄); printing picks the view.
class BiPoly {
 public:
  BiPoly() : n_(0), p_(0) {}
  BiPoly(int n, Poly p);

  static BiPoly zero(int n) { return BiPoly(n, Poly(2 * n)); }
  static BiPoly constant(int n, const GQ& c) { return BiPoly(n, Poly::constant(2 * n, c)); }
  static BiPoly z(int n, int j);     // z_{j+1}, 1-based j in [0, n)
  static BiPoly zbar(int n, int j);  // conjugate slot

  int n() const { return n_; }
  const Poly& poly() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }

  // Coefficient-wise transpose-conjugate: coefficient at (I,J) becomes
  // conj(coefficient at (J,I)). P is Hermitian (real-valued on w = z) iff
  // P† = P.
  BiPoly hermitian_transpose() const;
  bool is_hermitian() const { return hermitian_transpose() == *this; }

  BiPoly operator-() const { return BiPoly(n_, -p_); }
  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) { return BiPoly(a.n_, a.p_ + b.p_); }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return BiPoly(a.n_, a.p_ - b.p_); }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) { return BiPoly(a.n_, a.p_ * b.p_); }
  friend BiPoly operator*(const BiPoly& a, const GQ& c) { return BiPoly(a.n_, a.p_ * c); }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.n_ == b.n_ && a.p_ == b.p_; }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

  BiPoly dz(int j) const { return BiPoly(n_, p_.derivative(j)); }
  BiPoly dzbar(int j) const { return BiPoly(n_, p_.derivative(n_ + j)); }

  // Value of the complexified polynomial: conjugate slots receive conj(w).
  Cx eval(std::span<const Cx> z, std::span<const Cx> w) const;
  Cx eval_diag(std::span<const Cx> z) const { return eval(z, z); }
  GQ eval_exact(std::span<const GQ> z, std::span<const GQ> w) const;

  // Fix the conjugate slots to conj(w) exactly; the result only involves the
  // z slots (conjugate exponents all zero).
  BiPoly conj_slots_fixed(std::span<const GQ> w) const;
  // Same with z and conjugate slots swapped roles (fix z := value).
  BiPoly z_slots_fixed(std::span<const GQ> z) const;

  bool depends_on_conj_slots() const;
  bool depends_on_z_slots() const;

  // z -> z + c, conjugate slots -> conjugate + conj(c).
  BiPoly translate(std::span<const GQ> c) const;

  // Crude upper bound for |value| on the ball of radius r; used to form
  // relative residuals.
  double scale(double r) const;

  std::string str(bool complexified = false) const;
  static std::vector<std::string> var_names(int n, bool complexified);

 private:
  int n_;
  Poly p_;
};

// Quotient of two polynomials in the z slots only (no conjugate slots); used
// for first integrals and hull probing.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(BiPoly num, BiPoly den);  // throws if den == 0 or conj slots appear

  static RationalFunction poly(BiPoly num);

  const BiPoly& num() const { return num_; }
  const BiPoly& den() const { return den_; }
  int n() const { return num_.n(); }
  bool is_constant() const;

  Cx eval(std::span<const Cx> z) const;           // throws on pole
  double den_abs(std::span<const Cx> z) const;    // |denominator|

  // Wirtinger derivative numerators: d(num/den)/dz_j = (num_j den - num den_j)/den^2.
  BiPoly deriv_numerator(int j) const;

  std::string str() const;

 private:
  BiPoly num_, den_;
};

}  // namespace leviflat

#endif
