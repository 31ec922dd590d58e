#pragma once

#include <optional>
#include <utility>

#include "qpw/rational.hpp"
#include "qpw/sparse_poly.hpp"

namespace qpw {

/// Polynomial in (x, y, z) over the rationals.
using Poly3 = SparsePoly<Rational>;
/// Polynomial in (x, y, z) over the integers; the working form of gcd code.
using ZPoly = SparsePoly<Integer>;

inline Poly3 px() { return Poly3::var(Var::X); }
inline Poly3 py() { return Poly3::var(Var::Y); }
inline Poly3 pz() { return Poly3::var(Var::Z); }

/// Integer form: p = z / den with z primitive-free of denominators.
struct ClearedPoly {
  ZPoly poly;
  Integer den;
};
ClearedPoly clear_denominators(const Poly3& p);
ZPoly to_zpoly_exact(const Poly3& p);  // requires integral coefficients
Poly3 to_poly3(const ZPoly& p);

/// Positive gcd of the integer coefficients (0 for the zero polynomial).
Integer content(const ZPoly& p);
ZPoly primitive_part(const ZPoly& p);

/// Leading term in lexicographic order x > y > z (not the stored grlex order).
const ZPoly::Term& lex_leading(const ZPoly& p);

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<ZPoly> exact_quotient(const ZPoly& a, const ZPoly& b);
std::optional<Poly3> exact_quotient(const Poly3& a, const Poly3& b);

/// Primitive gcd with positive lex-leading coefficient; gcd(0, 0) = 0.
/// Multi-modular dense-interpolation algorithm.
ZPoly gcd(const ZPoly& a, const ZPoly& b);

struct GcdWithCofactors {
  ZPoly gcd;
  ZPoly a_over_gcd;
  ZPoly b_over_gcd;
};
GcdWithCofactors gcd_cofactors(const ZPoly& a, const ZPoly& b);

/// Recursive content / primitive-part gcd with a univariate Euclidean base
/// case. Slow; kept as an independent route for cross-checking.
ZPoly gcd_recursive(const ZPoly& a, const ZPoly& b);

/// Monic (over Q) gcd of rational polynomials.
Poly3 gcd(const Poly3& a, const Poly3& b);

/// Pseudo-remainder of a by b with respect to v: lc(b)^(da-db+1) a mod b.
ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b, Var v);

/// Square test: returns r with r*r == p when p is a perfect square in Q[x,y,z].
std::optional<Poly3> square_root(const Poly3& p);

/// Squarefree test over Q: gcd(p, dp/dv) has v-degree 0, for each variable v that occurs.
bool is_squarefree(const Poly3& p);

}  // namespace qpw
