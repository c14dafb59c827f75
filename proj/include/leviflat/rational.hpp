#ifndef LEVIFLAT_RATIONAL_HPP
#define LEVIFLAT_RATIONAL_HPP

#include <complex>
#include <string>

#include <gmpxx.h>

namespace leviflat {

// Exact complex rational a + b*i with a, b in Q. mpq_class keeps each part in
// canonical reduced form (gcd(num,den)=1, den>0), so equality is structural.
class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(long v) : re_(v), im_(0) {}          // NOLINT: implicit on purpose
  GaussianRational(long num, long den);
  GaussianRational(mpq_class re, mpq_class im = mpq_class(0))
      : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational conj() const { return GaussianRational(re_, -im_); }
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);  // throws on /0

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  double abs_approx() const { return std::abs(to_complex()); }

  // Canonical rendering: "a/b", "c/d*i", "a/b+c/d*i", "a/b-c/d*i"; unit
  // imaginary parts print as "i".
  std::string str() const;

 private:
  mpq_class re_, im_;
};

using GQ = GaussianRational;

// Exact rational from a decimal literal such as "0.25" or "-3.1"; integer and
// "p/q" forms are accepted too. Throws std::invalid_argument on junk.
mpq_class rational_from_decimal(const std::string& text);

}  // namespace leviflat

#endif
