#pragma once

#include "qpw/poly3.hpp"

namespace qpw::modular {

/// gcd of two integer-primitive, nonconstant polynomials with no common
/// monomial factor, together with both exact cofactors. The gcd is primitive
/// with positive lex-leading coefficient.
GcdWithCofactors gcd_primitive(const ZPoly& a, const ZPoly& b);

}  // namespace qpw::modular
