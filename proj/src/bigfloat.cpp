#include "qpw/bigfloat.hpp"

#include <cmath>
#include <ios>

namespace qpw {

namespace {
unsigned digits10_for_bits(unsigned bits) { return unsigned(std::ceil(bits * 0.30102999566398120)) + 1; }
}  // namespace

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_digits10_(BigFloat::default_precision()) {
  BigFloat::default_precision(digits10_for_bits(bits));
}

PrecisionGuard::~PrecisionGuard() { BigFloat::default_precision(saved_digits10_); }

BigFloat to_bigfloat(const Rational& q) {
  BigFloat r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

BigFloat to_bigfloat(const Integer& z) {
  BigFloat r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

BigFloat big_pi() {
  BigFloat r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

BigFloat big_pow2(long e) {
  BigFloat r;
  mpfr_set_ui_2exp(r.backend().data(), 1, e, MPFR_RNDN);
  return r;
}

std::string to_decimal(const BigFloat& v) { return v.str(0, std::ios_base::scientific); }

BigFloat abs(const BigComplex& z) { return boost::multiprecision::hypot(z.re, z.im); }

BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

BigComplex exp(const BigComplex& z) {
  const BigFloat m = boost::multiprecision::exp(z.re);
  return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

BigComplex sqrt(const BigComplex& z) {
  const BigFloat r = abs(z);
  if (r == 0) return {};
  BigFloat a = boost::multiprecision::sqrt((r + boost::multiprecision::abs(z.re)) / 2);
  if (z.re >= 0) return {a, z.im / (2 * a)};
  BigFloat b = z.im >= 0 ? a : BigFloat(-a);
  return {boost::multiprecision::abs(z.im) / (2 * a), b};
}

BigComplex pow(const BigComplex& z, unsigned e) {
  BigComplex result(1L), base = z;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string to_decimal(const BigComplex& z) {
  return "(" + to_decimal(z.re) + ", " + to_decimal(z.im) + ")";
}

}  // namespace qpw
