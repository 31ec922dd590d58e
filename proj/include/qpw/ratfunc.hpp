#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qpw/poly3.hpp"

namespace qpw {

/// Rational function num/den in (x, y, z). Stored canonically: integer
/// coefficients, gcd(num, den) = 1, the integer coefficients of num and den
/// jointly primitive, and the graded-lex leading coefficient of den positive.
/// This makes structural equality coincide with equality of functions.
class RatFunc3 {
 public:
  RatFunc3() : den_(Integer(1)) {}
  RatFunc3(const Poly3& p);  // NOLINT(google-explicit-constructor)
  explicit RatFunc3(const Rational& c) : RatFunc3(Poly3(c)) {}
  explicit RatFunc3(long c) : RatFunc3(Poly3(c)) {}

  /// Caller guarantees the canonical-form invariants.
  static RatFunc3 from_canonical(ZPoly num, ZPoly den);

  static RatFunc3 x() { return RatFunc3(px()); }
  static RatFunc3 y() { return RatFunc3(py()); }
  static RatFunc3 z() { return RatFunc3(pz()); }

  const ZPoly& znum() const { return num_; }
  const ZPoly& zden() const { return den_; }
  Poly3 num() const { return to_poly3(num_); }
  Poly3 den() const { return to_poly3(den_); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Largest total degree among numerator and denominator.
  unsigned degree() const { return std::max(num_.total_degree(), den_.total_degree()); }
  bool depends_on(Var v) const { return num_.depends_on(v) || den_.depends_on(v); }

  RatFunc3 operator-() const { return from_canonical(-num_, den_); }
  friend RatFunc3 operator+(const RatFunc3& a, const RatFunc3& b);
  friend RatFunc3 operator-(const RatFunc3& a, const RatFunc3& b);
  friend RatFunc3 operator*(const RatFunc3& a, const RatFunc3& b);
  friend RatFunc3 operator/(const RatFunc3& a, const RatFunc3& b);
  RatFunc3& operator+=(const RatFunc3& b) { return *this = *this + b; }
  RatFunc3& operator-=(const RatFunc3& b) { return *this = *this - b; }
  RatFunc3& operator*=(const RatFunc3& b) { return *this = *this * b; }
  RatFunc3& operator/=(const RatFunc3& b) { return *this = *this / b; }

  RatFunc3 inverse() const;
  RatFunc3 pow(int e) const;

  bool operator==(const RatFunc3& o) const = default;

  /// "num" when den = 1, otherwise "num/den"; a sum is parenthesized, and so
  /// is a denominator that is a product.
  std::string to_string() const;

 private:
  RatFunc3(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) {}
  ZPoly num_;
  ZPoly den_;
};

/// Canonical reduced form of num/den. Throws ZeroDenominator when den = 0.
RatFunc3 rf_normalize(const Poly3& num, const Poly3& den);
RatFunc3 rf_normalize(const ZPoly& num, const ZPoly& den);

/// h(sx, sy, z). Throws IdenticallyZeroDenominator when the substituted
/// denominator vanishes identically.
RatFunc3 rf_substitute(const RatFunc3& h, const RatFunc3& sx, const RatFunc3& sy);

/// Exact value at a rational point. Throws PoleAtPoint.
Rational eval_at(const RatFunc3& h, const Rational& x, const Rational& y, const Rational& z);

/// Value modulo a prime p < 2^62, or nullopt when the denominator vanishes mod p.
std::optional<std::uint64_t> eval_mod(const RatFunc3& h, std::uint64_t x, std::uint64_t y,
                                      std::uint64_t z, std::uint64_t p);
std::uint64_t eval_mod(const ZPoly& h, std::uint64_t x, std::uint64_t y, std::uint64_t z,
                       std::uint64_t p);

}  // namespace qpw
