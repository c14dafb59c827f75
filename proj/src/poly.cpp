#include "leviflat/poly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace leviflat {

namespace {

uint64_t exp_total(const ExpVec& e) {
  uint64_t s = 0;
  for (uint32_t x : e) s += x;
  return s;
}

}  // namespace

bool GrlexLess::operator()(const ExpVec& a, const ExpVec& b) const {
  uint64_t da = exp_total(a), db = exp_total(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly Poly::constant(int nvars, const GQ& c) {
  Poly p(nvars);
  if (!c.is_zero()) p.terms_.emplace(ExpVec(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int var) {
  assert(var >= 0 && var < nvars);
  ExpVec e(nvars, 0);
  e[var] = 1;
  return monomial(nvars, std::move(e), GQ(1));
}

Poly Poly::monomial(int nvars, ExpVec exp, const GQ& c) {
  assert(static_cast<int>(exp.size()) == nvars);
  Poly p(nvars);
  if (!c.is_zero()) p.terms_.emplace(std::move(exp), c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && exp_total(terms_.begin()->first) == 0;
}

GQ Poly::constant_value() const {
  if (terms_.empty()) return GQ(0);
  if (!is_constant()) throw std::logic_error("Poly::constant_value on non-constant");
  return terms_.begin()->second;
}

int Poly::degree(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  // The leading term in grlex has the maximal total degree.
  return static_cast<int>(exp_total(terms_.rbegin()->first));
}

void Poly::add_term(const ExpVec& exp, const GQ& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_.emplace(exp, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

const GQ& Poly::coeff(const ExpVec& exp) const {
  static const GQ kZero(0);
  auto it = terms_.find(exp);
  return it == terms_.end() ? kZero : it->second;
}

const ExpVec& Poly::leading_exp() const {
  if (terms_.empty()) throw std::logic_error("leading_exp of zero polynomial");
  return terms_.rbegin()->first;
}

const GQ& Poly::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading_coeff of zero polynomial");
  return terms_.rbegin()->second;
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  assert(nvars_ == o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  assert(nvars_ == o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  assert(a.nvars_ == b.nvars_);
  Poly r(a.nvars_);
  ExpVec e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int v = 0; v < a.nvars_; ++v) e[v] = ea[v] + eb[v];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const GQ& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Poly Poly::pow(unsigned e) const {
  Poly r = constant(nvars_, GQ(1));
  Poly base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    ExpVec d = e;
    d[var] -= 1;
    r.add_term(d, c * GQ(static_cast<long>(e[var])));
  }
  return r;
}

Poly Poly::compose(int new_nvars, std::span<const Poly> images) const {
  assert(static_cast<int>(images.size()) == nvars_);
  // Per-variable power cache up to the maximal exponent actually used.
  std::vector<std::vector<Poly>> powers(nvars_);
  for (int v = 0; v < nvars_; ++v) {
    uint32_t maxe = 0;
    for (const auto& [e, c] : terms_) maxe = std::max(maxe, e[v]);
    powers[v].reserve(maxe + 1);
    powers[v].push_back(Poly::constant(new_nvars, GQ(1)));
    for (uint32_t k = 1; k <= maxe; ++k) powers[v].push_back(powers[v].back() * images[v]);
  }
  Poly r(new_nvars);
  for (const auto& [e, c] : terms_) {
    Poly t = Poly::constant(new_nvars, c);
    for (int v = 0; v < nvars_; ++v)
      if (e[v]) t = t * powers[v][e[v]];
    r += t;
  }
  return r;
}

Poly Poly::substitute(int var, const Poly& value) const {
  assert(value.nvars() == nvars_);
  std::vector<Poly> images;
  images.reserve(nvars_);
  for (int v = 0; v < nvars_; ++v)
    images.push_back(v == var ? value : Poly::variable(nvars_, v));
  return compose(nvars_, images);
}

Poly Poly::substitute(int var, const GQ& value) const {
  return substitute(var, Poly::constant(nvars_, value));
}

Poly Poly::shift(int var, const GQ& c) const {
  if (c.is_zero()) return *this;
  return substitute(var, Poly::variable(nvars_, var) + Poly::constant(nvars_, c));
}

namespace {

std::complex<double> cpow_int(std::complex<double> b, uint32_t e) {
  std::complex<double> r(1.0, 0.0);
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

}  // namespace

std::complex<double> Poly::eval(std::span<const std::complex<double>> vals) const {
  assert(static_cast<int>(vals.size()) == nvars_);
  std::complex<double> s(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (int v = 0; v < nvars_; ++v)
      if (e[v]) t *= cpow_int(vals[v], e[v]);
    s += t;
  }
  return s;
}

GQ Poly::eval_exact(std::span<const GQ> vals) const {
  assert(static_cast<int>(vals.size()) == nvars_);
  GQ s(0);
  for (const auto& [e, c] : terms_) {
    GQ t = c;
    for (int v = 0; v < nvars_; ++v)
      for (uint32_t k = 0; k < e[v]; ++k) t *= vals[v];
    s += t;
  }
  return s;
}

std::vector<Poly> Poly::coeffs_wrt(int var) const {
  int d = degree(var);
  std::vector<Poly> out(static_cast<size_t>(std::max(d, -1) + 1), Poly(nvars_));
  if (d < 0) return out;  // zero polynomial -> empty list
  for (const auto& [e, c] : terms_) {
    ExpVec r = e;
    uint32_t k = r[var];
    r[var] = 0;
    out[k].add_term(r, c);
  }
  return out;
}

Poly Poly::coeff_wrt(int var, int k) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (static_cast<int>(e[var]) != k) continue;
    ExpVec r = e;
    r[var] = 0;
    out.add_term(r, c);
  }
  return out;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
  assert(nvars_ == d.nvars_);
  if (d.is_zero()) throw std::domain_error("Poly::divrem: division by zero polynomial");
  Poly q(nvars_), r(nvars_), p = *this;
  const ExpVec& de = d.leading_exp();
  const GQ& dc = d.leading_coeff();
  while (!p.is_zero()) {
    const ExpVec& pe = p.leading_exp();
    bool divisible = true;
    for (int v = 0; v < nvars_; ++v)
      if (pe[v] < de[v]) {
        divisible = false;
        break;
      }
    if (divisible) {
      ExpVec te(nvars_);
      for (int v = 0; v < nvars_; ++v) te[v] = pe[v] - de[v];
      GQ tc = p.leading_coeff() / dc;
      Poly t = Poly::monomial(nvars_, te, tc);
      q += t;
      p -= t * d;
    } else {
      ExpVec e = pe;
      GQ c = p.leading_coeff();
      r.add_term(e, c);
      p.add_term(e, -c);
    }
  }
  return {q, r};
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  auto [q, r] = divrem(d);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

namespace {

// Pseudo-remainder of a by b with respect to var (deg_var a >= deg_var b >= 0).
Poly pseudo_rem(Poly a, const Poly& b, int var) {
  int db = b.degree(var);
  assert(db >= 0);
  Poly lcb(b.nvars());
  lcb = b.coeff_wrt(var, db);
  int da = a.degree(var);
  while (!a.is_zero() && (da = a.degree(var)) >= db) {
    Poly lca = a.coeff_wrt(var, da);
    Poly shift_mono = Poly::monomial(a.nvars(), [&] {
      ExpVec e(a.nvars(), 0);
      e[var] = static_cast<uint32_t>(da - db);
      return e;
    }(), GQ(1));
    a = lcb * a - lca * shift_mono * b;
    // a now has degree < da in var (the leading coefficients cancel).
  }
  return a;
}

int highest_var(const Poly& p) {
  for (int v = p.nvars() - 1; v >= 0; --v)
    if (p.degree(v) > 0) return v;
  return -1;
}

}  // namespace

Poly Poly::content_wrt(const Poly& p, int var) {
  Poly c(p.nvars());
  for (const Poly& q : p.coeffs_wrt(var)) {
    if (q.is_zero()) continue;
    c = c.is_zero() ? q.normalized_monic() : gcd(c, q);
    if (c.is_constant()) break;
  }
  if (c.is_zero()) return c;
  return c.normalized_monic();
}

Poly Poly::gcd(Poly a, Poly b) {
  if (a.is_zero()) return b.is_zero() ? b : b.normalized_monic();
  if (b.is_zero()) return a.normalized_monic();
  if (a.is_constant() || b.is_constant())
    return Poly::constant(a.nvars(), GQ(1));

  int var = std::max(highest_var(a), highest_var(b));
  assert(var >= 0);

  Poly ca = content_wrt(a, var), cb = content_wrt(b, var);
  Poly pa = *a.divide_exact(ca), pb = *b.divide_exact(cb);
  Poly cont = gcd(ca, cb);

  // Primitive polynomial remainder sequence in `var`.
  Poly P = pa, Q = pb;
  if (P.degree(var) < Q.degree(var)) std::swap(P, Q);
  Poly g(a.nvars());
  while (true) {
    if (Q.is_zero()) {
      g = P;
      break;
    }
    if (Q.degree(var) == 0) {
      // No common factor involving var; the primitive gcd is a unit.
      g = Poly::constant(a.nvars(), GQ(1));
      break;
    }
    Poly R = pseudo_rem(P, Q, var);
    if (!R.is_zero()) {
      Poly cr = content_wrt(R, var);
      R = *R.divide_exact(cr);
    }
    P = Q;
    Q = R;
  }
  if (!g.is_constant()) {
    Poly cg = content_wrt(g, var);
    g = *g.divide_exact(cg);
  }
  return (cont * g).normalized_monic();
}

Poly::Squarefree Poly::squarefree_wrt(const Poly& p, int var) {
  if (p.is_zero()) throw std::domain_error("squarefree_wrt: zero polynomial");
  Squarefree out{Poly(p.nvars()), Poly(p.nvars()), Poly(p.nvars())};
  out.content = content_wrt(p, var);
  Poly prim = *p.divide_exact(out.content);
  Poly d = prim.derivative(var);
  if (d.is_zero()) {
    // Constant in var after content removal.
    out.multiple_part = Poly::constant(p.nvars(), GQ(1));
    out.squarefree = prim.normalized_monic();
    return out;
  }
  out.multiple_part = gcd(prim, d);
  out.squarefree = prim.divide_exact(out.multiple_part)->normalized_monic();
  return out;
}

Poly Poly::resultant(const Poly& p, const Poly& q, int var) {
  int m = p.degree(var), l = q.degree(var);
  if (m < 1 && l < 1)
    throw std::domain_error("resultant: nothing to eliminate (both inputs constant in the variable)");
  if (p.is_zero() || q.is_zero()) return Poly(p.nvars());
  if (m == 0) return p.pow(static_cast<unsigned>(l));
  if (l == 0) return q.pow(static_cast<unsigned>(m));

  std::vector<Poly> pc = p.coeffs_wrt(var);  // ascending
  std::vector<Poly> qc = q.coeffs_wrt(var);
  int n = m + l;
  std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n, Poly(p.nvars())));
  // Rows 0..l-1: coefficients of p, descending, shifted.
  for (int r = 0; r < l; ++r)
    for (int k = 0; k <= m; ++k) M[r][r + k] = pc[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= l; ++k) M[l + r][r + k] = qc[l - k];

  // Bareiss fraction-free elimination; divisions are exact.
  Poly prev = Poly::constant(p.nvars(), GQ(1));
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (M[k][k].is_zero()) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (!M[r][k].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) return Poly(p.nvars());  // singular matrix, resultant 0
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Poly num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        auto d = num.divide_exact(prev);
        assert(d.has_value());
        M[i][j] = std::move(*d);
      }
      M[i][k] = Poly(p.nvars());
    }
    prev = M[k][k];
  }
  Poly det = M[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

Poly Poly::normalized_monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  GQ inv = GQ(1) / leading_coeff();
  r *= inv;
  return r;
}

double Poly::max_coeff_abs() const {
  double m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, c.abs_approx());
  return m;
}

std::string Poly::str(std::span<const std::string> names) const {
  assert(static_cast<int>(names.size()) == nvars_);
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const ExpVec& e = it->first;
    GQ c = it->second;
    bool negatable = (c.im() == 0 && c.re() < 0) || (c.re() == 0 && c.im() < 0);
    if (first) {
      if (negatable) {
        out += "-";
        c = -c;
      }
      first = false;
    } else {
      if (negatable) {
        out += " - ";
        c = -c;
      } else {
        out += " + ";
      }
    }
    std::string mono;
    for (int v = 0; v < nvars_; ++v) {
      if (!e[v]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty()) {
      out += c.str();
      continue;
    }
    if (c.is_one()) {
      out += mono;
    } else {
      bool needs_parens = (c.re() != 0 && c.im() != 0);
      out += needs_parens ? "(" + c.str() + ")" : c.str();
      out += "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace leviflat
