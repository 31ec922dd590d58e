#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace qpw::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Arithmetic in Z/pZ for a prime p < 2^63.
struct Field {
  u64 p;
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (p - b); }
  u64 mul(u64 a, u64 b) const { return u64(u128(a) * b % p); }
  u64 neg(u64 a) const { return a ? p - a : 0; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

inline u64 reduce(const mpz_class& c, u64 p) { return mpz_fdiv_ui(c.get_mpz_t(), p); }

/// Field element carrying its field, for generic polynomial evaluation.
struct Elem {
  u64 v;
  const Field* f;
  friend Elem operator+(Elem a, Elem b) { return {a.f->add(a.v, b.v), a.f}; }
  friend Elem operator*(Elem a, Elem b) { return {a.f->mul(a.v, b.v), a.f}; }
};

/// A fixed large prime below 2^62 used by the probabilistic prefilters.
inline constexpr u64 kPrefilterPrime = 4611686018427387847ull;

/// Dense univariate polynomial over Z/pZ; index is the degree, no trailing zeros.
using Uni = std::vector<u64>;

inline void trim(Uni& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

inline u64 uni_eval(const Uni& u, u64 x, const Field& f) {
  u64 r = 0;
  for (std::size_t i = u.size(); i-- > 0;) r = f.add(f.mul(r, x), u[i]);
  return r;
}

inline Uni uni_monic(Uni u, const Field& f) {
  if (u.empty()) return u;
  const u64 s = f.inv(u.back());
  for (auto& c : u) c = f.mul(c, s);
  return u;
}

// Remainder of u modulo w (w nonzero).
inline void uni_rem(Uni& u, const Uni& w, const Field& f) {
  const u64 li = f.inv(w.back());
  while (u.size() >= w.size()) {
    const u64 q = f.mul(u.back(), li);
    const std::size_t shift = u.size() - w.size();
    if (q) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i) u[i + shift] = f.sub(u[i + shift], f.mul(q, w[i]));
    }
    u.pop_back();
    trim(u);
  }
}

inline Uni uni_gcd(Uni a, Uni b, const Field& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    if (b.size() == 1) return {1};
    uni_rem(a, b, f);
    std::swap(a, b);
  }
  return uni_monic(std::move(a), f);
}

// Exact quotient u / w.
inline Uni uni_div(Uni u, const Uni& w, const Field& f) {
  if (w.size() == 1) {
    const u64 s = f.inv(w[0]);
    for (auto& c : u) c = f.mul(c, s);
    return u;
  }
  if (u.size() < w.size()) return {};
  Uni q(u.size() - w.size() + 1, 0);
  const u64 li = f.inv(w.back());
  while (u.size() >= w.size()) {
    const u64 c = f.mul(u.back(), li);
    const std::size_t shift = u.size() - w.size();
    q[shift] = c;
    if (c) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i) u[i + shift] = f.sub(u[i + shift], f.mul(c, w[i]));
    }
    u.pop_back();
  }
  return q;
}

inline Uni uni_mul(const Uni& a, const Uni& b, const Field& f) {
  if (a.empty() || b.empty()) return {};
  Uni r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return r;
}

}  // namespace qpw::modp
