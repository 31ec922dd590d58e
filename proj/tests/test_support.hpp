#pragma once

#include <random>

#include "qpw/poly3.hpp"
#include "qpw/ratfunc.hpp"

namespace qpw::testing {

inline const RatFunc3 X = RatFunc3::x();
inline const RatFunc3 Y = RatFunc3::y();
inline const RatFunc3 Z = RatFunc3::z();
inline RatFunc3 C(long v) { return RatFunc3(v); }
inline RatFunc3 Q(long n, long d) { return RatFunc3(make_rational(n, d)); }

/// Random polynomial with `terms` terms of total degree <= deg and small coefficients.
inline Poly3 random_poly(std::mt19937_64& rng, int terms, unsigned deg) {
  std::uniform_int_distribution<int> coeff(-5, 5), e(0, int(deg));
  Poly3 p;
  for (int t = 0; t < terms; ++t) {
    unsigned a = unsigned(e(rng)), b = unsigned(e(rng)), c = unsigned(e(rng));
    while (a + b + c > deg) {
      if (a) --a;
      else if (b) --b;
      else --c;
    }
    p += Poly3::monomial(Rational(coeff(rng)), Monomial(a, b, c));
  }
  return p;
}

inline Poly3 random_nonzero_poly(std::mt19937_64& rng, int terms, unsigned deg) {
  Poly3 p;
  while (p.is_zero()) p = random_poly(rng, terms, deg);
  return p;
}

inline RatFunc3 random_ratfunc(std::mt19937_64& rng, int terms = 3, unsigned deg = 2) {
  return rf_normalize(random_poly(rng, terms, deg), random_nonzero_poly(rng, terms, deg));
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-30, 30), den(1, 17);
  return make_rational(num(rng), den(rng));
}

}  // namespace qpw::testing
