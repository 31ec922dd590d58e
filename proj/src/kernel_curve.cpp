#include "qpw/kernel_curve.hpp"

#include "qpw/errors.hpp"

namespace qpw {

KernelView::KernelView(const Poly3& K) : K_(K) {
  y_degree_ = K.degree(Var::Y);
  if (y_degree_ <= 2) {
    auto cy = K.coefficients_in(Var::Y);
    cy.resize(3);
    c_ = cy[0];
    b_ = cy[1];
    a_ = cy[2];
  }
  if (K.degree(Var::X) <= 2) {
    auto cx = K.coefficients_in(Var::X);
    cx.resize(3);
    ct_ = cx[0];
    bt_ = cx[1];
    at_ = cx[2];
    has_x_view_ = true;
  }
  if (y_degree_ == 2) {
    // a common rational factor of a, b, c does not change the curve
    auto zk = clear_denominators(K).poly;
    auto cy = zk.coefficients_in(Var::Y);
    zc_ = cy[0];
    zb_ = cy[1];
    za_ = cy[2];
    irreducible_ = !square_root(discriminant_y()).has_value();
  }
}

bool is_kernel_irreducible(const KernelView& K) {
  if (K.y_degree() < 2) throw DegenerateKernel("y-degree " + std::to_string(K.y_degree()) + " < 2");
  if (K.y_degree() > 2) throw DegenerateKernel("y-degree " + std::to_string(K.y_degree()) + " > 2");
  return K.irreducible();
}

namespace {

struct Reduced {
  ZPoly A, B;   // a^e * p == A + B*y on the curve
  unsigned e = 0;
};

// Horner evaluation in y with y^2 replaced by -(b*y + c)/a at every step.
Reduced reduce_poly(const ZPoly& p, const KernelView& K, std::vector<ZPoly>& apow) {
  const ZPoly &a = K.za(), &b = K.zb(), &c = K.zc();
  auto power = [&](unsigned e) -> const ZPoly& {
    while (apow.size() <= e) apow.push_back(apow.back() * a);
    return apow[e];
  };
  auto coeffs = p.coefficients_in(Var::Y);
  Reduced r;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    // r <- r*y + coeffs[i]
    if (r.B.is_zero()) {
      r.B = std::move(r.A);
      r.A = coeffs[i].is_zero() ? ZPoly{} : coeffs[i] * power(r.e);
    } else {
      ZPoly newB = a * r.A - b * r.B;
      ZPoly newA = -(c * r.B);
      ++r.e;
      if (!coeffs[i].is_zero()) newA += coeffs[i] * power(r.e);
      r.A = std::move(newA);
      r.B = std::move(newB);
    }
  }
  return r;
}

void require_irreducible(const KernelView& K) {
  if (!is_kernel_irreducible(K)) throw ReducibleKernel("kernel factors over Q(x, z)");
}

}  // namespace

RatFunc3 reduce_mod_kernel(const RatFunc3& h, const KernelView& K) {
  require_irreducible(K);
  std::vector<ZPoly> apow{ZPoly(Integer(1))};
  auto power = [&](unsigned e) -> const ZPoly& {
    while (apow.size() <= e) apow.push_back(apow.back() * K.za());
    return apow[e];
  };
  Reduced n = reduce_poly(h.znum(), K, apow);
  Reduced d = reduce_poly(h.zden(), K, apow);
  ZPoly num0, num1, norm;
  if (d.B.is_zero()) {
    if (d.A.is_zero()) throw ZeroDenominatorOnCurve("denominator vanishes on the curve");
    num0 = std::move(n.A);
    num1 = std::move(n.B);
    norm = std::move(d.A);
  } else {
    // multiply by the conjugate C + E*y' with y + y' = -b/a and y*y' = c/a
    const ZPoly &a = K.za(), &b = K.zb(), &c = K.zc();
    const ZPoly& C = d.A;
    const ZPoly& E = d.B;
    norm = a * C * C - b * C * E + c * E * E;
    if (norm.is_zero()) throw ZeroDenominatorOnCurve("denominator vanishes on the curve");
    const ZPoly C2 = a * C - b * E;
    const ZPoly BE = n.B * E;
    num0 = n.A * C2 + BE * c;
    num1 = n.B * C2 - a * n.A * E + BE * b;
  }
  ZPoly num = num0 + num1 * ZPoly::var(Var::Y);
  if (d.e > n.e) {
    num = num * power(d.e - n.e);
  } else if (n.e > d.e) {
    norm = norm * power(n.e - d.e);
  }
  return rf_normalize(num, norm);
}

bool is_zero_on_curve(const RatFunc3& h, const KernelView& K) {
  require_irreducible(K);
  std::vector<ZPoly> apow{ZPoly(Integer(1))};
  Reduced d = reduce_poly(h.zden(), K, apow);
  if (d.B.is_zero() ? d.A.is_zero()
                    : (K.za() * d.A * d.A - K.zb() * d.A * d.B + K.zc() * d.B * d.B).is_zero()) {
    throw ZeroDenominatorOnCurve("denominator vanishes on the curve");
  }
  Reduced n = reduce_poly(h.znum(), K, apow);
  return n.A.is_zero() && n.B.is_zero();
}

}  // namespace qpw
