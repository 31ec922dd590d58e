#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace qpw {

enum class Var : unsigned { X = 0, Y = 1, Z = 2 };

/// Exponent triple (ex, ey, ez) packed into one word as
/// [total:16 | ex:16 | ey:16 | ez:16]. Integer order on the packed key is
/// graded lexicographic order with x > y > z, and monomial multiplication
/// is key addition.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr Monomial(unsigned ex, unsigned ey, unsigned ez)
      : key_((std::uint64_t(ex + ey + ez) << 48) | (std::uint64_t(ex) << 32) |
             (std::uint64_t(ey) << 16) | std::uint64_t(ez)) {}

  static constexpr Monomial from_key(std::uint64_t key) {
    Monomial m;
    m.key_ = key;
    return m;
  }
  static constexpr Monomial var(Var v, unsigned e = 1) {
    switch (v) {
      case Var::X: return {e, 0, 0};
      case Var::Y: return {0, e, 0};
      default: return {0, 0, e};
    }
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr unsigned ex() const { return unsigned(key_ >> 32) & 0xffffu; }
  constexpr unsigned ey() const { return unsigned(key_ >> 16) & 0xffffu; }
  constexpr unsigned ez() const { return unsigned(key_) & 0xffffu; }
  constexpr unsigned degree() const { return unsigned(key_ >> 48); }
  constexpr unsigned exp(Var v) const {
    switch (v) {
      case Var::X: return ex();
      case Var::Y: return ey();
      default: return ez();
    }
  }
  constexpr bool is_one() const { return key_ == 0; }

  constexpr Monomial operator*(Monomial o) const { return from_key(key_ + o.key_); }
  constexpr bool divides(Monomial o) const {
    return ex() <= o.ex() && ey() <= o.ey() && ez() <= o.ez();
  }
  /// Requires divides(o) on the divisor side: returns o / *this.
  constexpr Monomial quotient_of(Monomial o) const { return from_key(o.key_ - key_); }
  constexpr Monomial with_exp(Var v, unsigned e) const {
    unsigned a = ex(), b = ey(), c = ez();
    switch (v) {
      case Var::X: a = e; break;
      case Var::Y: b = e; break;
      default: c = e; break;
    }
    return {a, b, c};
  }
  static constexpr Monomial gcd(Monomial a, Monomial b) {
    auto mn = [](unsigned p, unsigned q) { return p < q ? p : q; };
    return {mn(a.ex(), b.ex()), mn(a.ey(), b.ey()), mn(a.ez(), b.ez())};
  }

  constexpr auto operator<=>(const Monomial&) const = default;

  std::string to_string() const;

 private:
  std::uint64_t key_ = 0;
};

}  // namespace qpw
