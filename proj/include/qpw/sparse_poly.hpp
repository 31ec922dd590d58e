#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qpw/monomial.hpp"

namespace qpw {

namespace detail {

inline void add_product(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
  mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
inline void add_product(mpq_class& acc, const mpq_class& a, const mpq_class& b) {
  acc += a * b;
}
inline void sub_product(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
  mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
inline void sub_product(mpq_class& acc, const mpq_class& a, const mpq_class& b) {
  acc -= a * b;
}
inline bool is_zero(const mpz_class& c) { return sgn(c) == 0; }
inline bool is_zero(const mpq_class& c) { return sgn(c) == 0; }

}  // namespace detail

/// Sparse polynomial in (x, y, z) with non-negative exponents. Terms are
/// kept sorted by decreasing graded-lex monomial with no zero coefficient,
/// so structural equality is polynomial equality.
template <class C>
class SparsePoly {
 public:
  using Coeff = C;
  struct Term {
    Monomial mono;
    C coeff;
    bool operator==(const Term&) const = default;
  };

  SparsePoly() = default;
  explicit SparsePoly(const C& constant) {
    if (!detail::is_zero(constant)) terms_.push_back({Monomial{}, constant});
  }
  explicit SparsePoly(long constant) : SparsePoly(C(constant)) {}

  static SparsePoly monomial(const C& c, Monomial m) {
    SparsePoly p;
    if (!detail::is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  static SparsePoly var(Var v, unsigned e = 1) { return monomial(C(1), Monomial::var(v, e)); }

  /// Builds from terms in any order, combining duplicates and dropping zeros.
  static SparsePoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.mono > b.mono; });
    SparsePoly p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff += t.coeff;
      } else {
        if (!p.terms_.empty() && detail::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && detail::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    return p;
  }
  /// Terms must already be strictly decreasing with nonzero coefficients.
  static SparsePoly from_sorted_terms(std::vector<Term> terms) {
    SparsePoly p;
    p.terms_ = std::move(terms);
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }
  bool is_monomial() const { return terms_.size() == 1; }

  /// Leading term in graded-lex order; requires !is_zero().
  const Term& leading() const { return terms_.front(); }
  C constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return C(0);
  }

  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  unsigned degree(Var v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exp(v));
    return d;
  }
  unsigned min_degree(Var v) const {
    if (terms_.empty()) return 0;
    unsigned d = ~0u;
    for (const auto& t : terms_) d = std::min(d, t.mono.exp(v));
    return d;
  }
  bool depends_on(Var v) const { return degree(v) > 0; }
  /// Largest monomial dividing every term.
  Monomial monomial_content() const {
    if (terms_.empty()) return {};
    Monomial g = terms_.front().mono;
    for (const auto& t : terms_) g = Monomial::gcd(g, t.mono);
    return g;
  }

  C coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial k) { return t.mono > k; });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return C(0);
  }

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, false); }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return merge(a, b, true); }
  SparsePoly& operator+=(const SparsePoly& b) { return *this = *this + b; }
  SparsePoly& operator-=(const SparsePoly& b) { return *this = *this - b; }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() < b.size()) return b * a;
    if (b.size() == 1) return a.mul_term(b.terms_[0].coeff, b.terms_[0].mono);
    std::unordered_map<std::uint64_t, C> acc;
    acc.reserve(a.size() * b.size() / 2 + 16);
    for (const auto& tb : b.terms_) {
      for (const auto& ta : a.terms_) {
        detail::add_product(acc[(ta.mono * tb.mono).key()], ta.coeff, tb.coeff);
      }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [k, c] : acc) {
      if (!detail::is_zero(c)) out.push_back({Monomial::from_key(k), std::move(c)});
    }
    std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.mono > y.mono; });
    return from_sorted_terms(std::move(out));
  }
  SparsePoly& operator*=(const SparsePoly& b) { return *this = *this * b; }

  friend SparsePoly operator*(const SparsePoly& a, const C& s) { return a.mul_term(s, Monomial{}); }
  friend SparsePoly operator*(const C& s, const SparsePoly& a) { return a.mul_term(s, Monomial{}); }

  SparsePoly mul_term(const C& c, Monomial m) const {
    if (detail::is_zero(c)) return {};
    SparsePoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;
  }
  /// Requires m to divide every term.
  SparsePoly div_monomial(Monomial m) const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.mono = m.quotient_of(t.mono);
    return r;
  }

  SparsePoly pow(unsigned e) const {
    SparsePoly result(C(1)), base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  bool operator==(const SparsePoly& o) const = default;

  /// Coefficients with respect to v: element e multiplies v^e and is v-free.
  std::vector<SparsePoly> coefficients_in(Var v) const {
    std::vector<std::vector<Term>> buckets(degree(v) + 1);
    for (const auto& t : terms_) {
      buckets[t.mono.exp(v)].push_back({t.mono.with_exp(v, 0), t.coeff});
    }
    std::vector<SparsePoly> out(buckets.size());
    // dropping v can reorder monomials, so each bucket is re-sorted
    for (std::size_t e = 0; e < buckets.size(); ++e) out[e] = from_terms(std::move(buckets[e]));
    return out;
  }
  static SparsePoly from_coefficients(Var v, const std::vector<SparsePoly>& coeffs) {
    std::vector<Term> all;
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      for (const auto& t : coeffs[e].terms_) {
        all.push_back({t.mono.with_exp(v, t.mono.exp(v) + unsigned(e)), t.coeff});
      }
    }
    return from_terms(std::move(all));
  }

  SparsePoly derivative(Var v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      unsigned e = t.mono.exp(v);
      if (e) out.push_back({t.mono.with_exp(v, e - 1), t.coeff * C(e)});
    }
    return from_terms(std::move(out));
  }

  /// Replaces v by a constant.
  SparsePoly substitute(Var v, const C& value) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    std::vector<C> powers{C(1)};
    for (const auto& t : terms_) {
      unsigned e = t.mono.exp(v);
      while (powers.size() <= e) powers.push_back(powers.back() * value);
      C c = t.coeff * powers[e];
      if (!detail::is_zero(c)) out.push_back({t.mono.with_exp(v, 0), std::move(c)});
    }
    return from_terms(std::move(out));
  }

  /// Evaluates over any commutative ring T that accepts C through `lift`.
  template <class T, class Lift>
  T evaluate(const T& x, const T& y, const T& z, Lift lift) const {
    T acc = lift(C(0));
    if (terms_.empty()) return acc;
    std::vector<T> px{lift(C(1))}, py{lift(C(1))}, pz{lift(C(1))};
    auto power = [](std::vector<T>& cache, const T& base, unsigned e) -> const T& {
      while (cache.size() <= e) cache.push_back(cache.back() * base);
      return cache[e];
    };
    for (const auto& t : terms_) {
      T term = lift(t.coeff);
      if (t.mono.ex()) term = term * power(px, x, t.mono.ex());
      if (t.mono.ey()) term = term * power(py, y, t.mono.ey());
      if (t.mono.ez()) term = term * power(pz, z, t.mono.ez());
      acc = acc + term;
    }
    return acc;
  }
  C evaluate(const C& x, const C& y, const C& z) const {
    return evaluate<C>(x, y, z, [](const C& c) { return c; });
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      C c = t.coeff;
      const bool neg = sgn(c) < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      const bool unit = (c == 1);
      if (!unit || t.mono.is_one()) os << c.get_str();
      if (!t.mono.is_one()) {
        if (!unit) os << "*";
        os << t.mono.to_string();
      }
    }
    return os.str();
  }

 private:
  static SparsePoly merge(const SparsePoly& a, const SparsePoly& b, bool subtract) {
    SparsePoly r;
    r.terms_.reserve(a.size() + b.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->mono > ib->mono)) {
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->mono > ia->mono) {
        r.terms_.push_back({ib->mono, subtract ? C(-ib->coeff) : ib->coeff});
        ++ib;
      } else {
        C c = subtract ? C(ia->coeff - ib->coeff) : C(ia->coeff + ib->coeff);
        if (!detail::is_zero(c)) r.terms_.push_back({ia->mono, std::move(c)});
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

}  // namespace qpw
