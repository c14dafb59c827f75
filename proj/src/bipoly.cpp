#include "leviflat/bipoly.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace leviflat {

BiPoly::BiPoly(int n, Poly p) : n_(n), p_(std::move(p)) {
  assert(p_.nvars() == 2 * n_);
}

BiPoly BiPoly::z(int n, int j) {
  assert(j >= 0 && j < n);
  return BiPoly(n, Poly::variable(2 * n, j));
}

BiPoly BiPoly::zbar(int n, int j) {
  assert(j >= 0 && j < n);
  return BiPoly(n, Poly::variable(2 * n, n + j));
}

BiPoly BiPoly::hermitian_transpose() const {
  Poly out(2 * n_);
  for (const auto& [e, c] : p_.terms()) {
    ExpVec swapped(2 * n_);
    for (int j = 0; j < n_; ++j) {
      swapped[j] = e[n_ + j];
      swapped[n_ + j] = e[j];
    }
    out.add_term(swapped, c.conj());
  }
  return BiPoly(n_, std::move(out));
}

Cx BiPoly::eval(std::span<const Cx> z, std::span<const Cx> w) const {
  assert(static_cast<int>(z.size()) == n_ && static_cast<int>(w.size()) == n_);
  CxVec vals(2 * n_);
  for (int j = 0; j < n_; ++j) {
    vals[j] = z[j];
    vals[n_ + j] = std::conj(w[j]);
  }
  return p_.eval(vals);
}

GQ BiPoly::eval_exact(std::span<const GQ> z, std::span<const GQ> w) const {
  assert(static_cast<int>(z.size()) == n_ && static_cast<int>(w.size()) == n_);
  std::vector<GQ> vals(2 * n_);
  for (int j = 0; j < n_; ++j) {
    vals[j] = z[j];
    vals[n_ + j] = w[j].conj();
  }
  return p_.eval_exact(vals);
}

BiPoly BiPoly::conj_slots_fixed(std::span<const GQ> w) const {
  assert(static_cast<int>(w.size()) == n_);
  Poly r = p_;
  for (int j = 0; j < n_; ++j) r = r.substitute(n_ + j, w[j].conj());
  return BiPoly(n_, std::move(r));
}

BiPoly BiPoly::z_slots_fixed(std::span<const GQ> z) const {
  assert(static_cast<int>(z.size()) == n_);
  Poly r = p_;
  for (int j = 0; j < n_; ++j) r = r.substitute(j, z[j]);
  return BiPoly(n_, std::move(r));
}

bool BiPoly::depends_on_conj_slots() const {
  for (int j = 0; j < n_; ++j)
    if (p_.degree(n_ + j) > 0) return true;
  return false;
}

bool BiPoly::depends_on_z_slots() const {
  for (int j = 0; j < n_; ++j)
    if (p_.degree(j) > 0) return true;
  return false;
}

BiPoly BiPoly::translate(std::span<const GQ> c) const {
  assert(static_cast<int>(c.size()) == n_);
  Poly r = p_;
  for (int j = 0; j < n_; ++j) {
    r = r.shift(j, c[j]);
    r = r.shift(n_ + j, c[j].conj());
  }
  return BiPoly(n_, std::move(r));
}

double BiPoly::scale(double r) const {
  double rr = std::max(1.0, r);
  double s = 0;
  for (const auto& [e, c] : p_.terms()) {
    uint64_t deg = 0;
    for (uint32_t x : e) deg += x;
    s += c.abs_approx() * std::pow(rr, static_cast<double>(deg));
  }
  return std::max(s, 1e-300);
}

std::vector<std::string> BiPoly::var_names(int n, bool complexified) {
  std::vector<std::string> names(2 * n);
  for (int j = 0; j < n; ++j) {
    names[j] = "z" + std::to_string(j + 1);
    names[n + j] = (complexified ? "~w" : "~z") + std::to_string(j + 1);
  }
  return names;
}

std::string BiPoly::str(bool complexified) const {
  return p_.str(var_names(n_, complexified));
}

RationalFunction::RationalFunction(BiPoly num, BiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.depends_on_conj_slots() || den_.depends_on_conj_slots())
    throw std::domain_error("first integral must be holomorphic: conjugate variables are not allowed");
}

RationalFunction RationalFunction::poly(BiPoly num) {
  int n = num.n();
  return RationalFunction(std::move(num), BiPoly::constant(n, GQ(1)));
}

bool RationalFunction::is_constant() const {
  // num/den constant iff num*den' - num'*den == 0 for all j; cheap check:
  // both constant, or num = c*den.
  for (int j = 0; j < num_.n(); ++j)
    if (!(num_.dz(j) * den_ - den_.dz(j) * num_).is_zero()) return false;
  return true;
}

Cx RationalFunction::eval(std::span<const Cx> z) const {
  CxVec zero(num_.n(), Cx(0, 0));
  Cx d = den_.eval(z, zero);
  if (std::abs(d) < 1e-300) throw std::domain_error("rational function pole");
  return num_.eval(z, zero) / d;
}

double RationalFunction::den_abs(std::span<const Cx> z) const {
  CxVec zero(num_.n(), Cx(0, 0));
  return std::abs(den_.eval(z, zero));
}

BiPoly RationalFunction::deriv_numerator(int j) const {
  return num_.dz(j) * den_ - num_ * den_.dz(j);
}

std::string RationalFunction::str() const {
  BiPoly one = BiPoly::constant(num_.n(), GQ(1));
  if (den_ == one) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace leviflat
