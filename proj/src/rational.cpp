#include "leviflat/rational.hpp"

#include <stdexcept>

namespace leviflat {

GaussianRational::GaussianRational(long num, long den) : re_(num, den), im_(0) {
  if (den == 0) throw std::invalid_argument("GaussianRational: zero denominator");
  re_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  mpq_class n2 = o.norm2();
  if (n2 == 0) throw std::domain_error("GaussianRational: division by zero");
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / n2;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / n2;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

namespace {

std::string rat_str(const mpq_class& q) {
  return q.get_str();  // "n" or "n/d", canonical
}

// |q| rendered, with "1" elided in the *i position handled by caller.
std::string imag_str(const mpq_class& q) {
  if (q == 1) return "i";
  if (q == -1) return "-i";
  return rat_str(q) + "*i";
}

}  // namespace

std::string GaussianRational::str() const {
  if (is_zero()) return "0";
  if (im_ == 0) return rat_str(re_);
  if (re_ == 0) return imag_str(im_);
  std::string s = rat_str(re_);
  if (im_ > 0) {
    s += "+";
    s += imag_str(im_);
  } else {
    mpq_class a = -im_;
    s += "-";
    s += (a == 1) ? "i" : rat_str(a) + "*i";
  }
  return s;
}

mpq_class rational_from_decimal(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpq_class q(text);
    q.canonicalize();
    return q;
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    return mpq_class(text);
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac_len = text.size() - dot - 1;
  if (digits == "-" || digits.empty()) throw std::invalid_argument("bad number literal: " + text);
  mpz_class num(digits);
  mpz_class den(1);
  for (size_t k = 0; k < frac_len; ++k) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace leviflat
