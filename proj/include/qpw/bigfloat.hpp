#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <string>

#include "qpw/rational.hpp"

namespace qpw {

using BigFloat = boost::multiprecision::mpfr_float;

/// Sets the working precision (in bits) of newly created BigFloat values for
/// the lifetime of the guard and restores the previous setting afterwards.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_digits10_;
};

/// Pi at the current default precision.
BigFloat big_pi();
/// 2^e at the current default precision.
BigFloat big_pow2(long e);
/// Correctly rounded conversion at the current default precision.
BigFloat to_bigfloat(const Rational& q);
BigFloat to_bigfloat(const Integer& z);
/// Scientific notation with every significant digit of the working precision.
std::string to_decimal(const BigFloat& v);

/// Complex number as a pair of BigFloat values.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  BigComplex() : re(0), im(0) {}
  BigComplex(BigFloat r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

  static BigComplex i() { return {BigFloat(0), BigFloat(1)}; }

  BigComplex operator-() const { return {-re, -im}; }
  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BigComplex& operator*=(const BigComplex& o) {
    BigFloat r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  BigComplex& operator/=(const BigComplex& o) {
    const BigFloat n = o.re * o.re + o.im * o.im;
    BigFloat r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = std::move(r);
    return *this;
  }
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
};

BigFloat abs(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex exp(const BigComplex& z);
/// Principal square root.
BigComplex sqrt(const BigComplex& z);
BigComplex pow(const BigComplex& z, unsigned e);
std::string to_decimal(const BigComplex& z);

}  // namespace qpw
