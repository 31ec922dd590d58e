#include "qpw/ratfunc.hpp"

#include "qpw/errors.hpp"
#include "modp.hpp"

namespace qpw {

namespace {

// Divides both parts by their joint integer content and fixes the sign.
RatFunc3 finish(ZPoly num, ZPoly den) {
  Integer g = gcd(content(num), content(den));
  if (sgn(den.leading().coeff) < 0) g = -g;
  if (g != 1) {
    auto divide = [&](const ZPoly& p) {
      std::vector<ZPoly::Term> out;
      out.reserve(p.size());
      for (const auto& t : p.terms()) {
        Integer c;
        mpz_divexact(c.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
        out.push_back({t.mono, std::move(c)});
      }
      return ZPoly::from_sorted_terms(std::move(out));
    };
    num = divide(num);
    den = divide(den);
  }
  return RatFunc3::from_canonical(std::move(num), std::move(den));
}

}  // namespace

RatFunc3::RatFunc3(const Poly3& p) {
  auto c = clear_denominators(p);
  *this = finish(std::move(c.poly), ZPoly(c.den));
}

RatFunc3 RatFunc3::from_canonical(ZPoly num, ZPoly den) {
  if (num.is_zero()) return RatFunc3(ZPoly{}, ZPoly(Integer(1)));
  return RatFunc3(std::move(num), std::move(den));
}

RatFunc3 rf_normalize(const ZPoly& num, const ZPoly& den) {
  if (den.is_zero()) throw ZeroDenominator("denominator is the zero polynomial");
  if (num.is_zero()) return RatFunc3();
  if (den.is_constant()) return finish(num, den);
  auto g = gcd_cofactors(num, den);
  return finish(std::move(g.a_over_gcd), std::move(g.b_over_gcd));
}

RatFunc3 rf_normalize(const Poly3& num, const Poly3& den) {
  if (den.is_zero()) throw ZeroDenominator("denominator is the zero polynomial");
  auto n = clear_denominators(num), d = clear_denominators(den);
  // num/den = (N / dn) / (D / dd) = (N * dd) / (D * dn)
  return rf_normalize(n.poly * d.den, d.poly * n.den);
}

RatFunc3 operator+(const RatFunc3& a, const RatFunc3& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return rf_normalize(a.num_ + b.num_, a.den_);
  if (a.den_.is_constant() && b.den_.is_constant()) {
    return rf_normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  // with g = gcd(da, db): a/da + b/db = (a*db' + b*da') / (da' * g * db')
  auto g = gcd_cofactors(a.den_, b.den_);
  ZPoly num = a.num_ * g.b_over_gcd + b.num_ * g.a_over_gcd;
  if (num.is_zero()) return RatFunc3();
  ZPoly den = a.den_ * g.b_over_gcd;
  if (g.gcd.is_constant()) return finish(std::move(num), std::move(den));
  auto h = gcd_cofactors(num, g.gcd);
  if (h.gcd.is_constant()) return finish(std::move(num), std::move(den));
  return finish(std::move(h.a_over_gcd), *exact_quotient(den, h.gcd));
}

RatFunc3 operator-(const RatFunc3& a, const RatFunc3& b) { return a + (-b); }

RatFunc3 operator*(const RatFunc3& a, const RatFunc3& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc3();
  auto g1 = gcd_cofactors(a.num_, b.den_);
  auto g2 = gcd_cofactors(b.num_, a.den_);
  return finish(g1.a_over_gcd * g2.a_over_gcd, g2.b_over_gcd * g1.b_over_gcd);
}

RatFunc3 RatFunc3::inverse() const {
  if (is_zero()) throw ZeroDenominator("inverse of zero");
  return finish(den_, num_);
}

RatFunc3 operator/(const RatFunc3& a, const RatFunc3& b) { return a * b.inverse(); }

RatFunc3 RatFunc3::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  // numerator and denominator stay coprime under powers
  return finish(num_.pow(unsigned(e)), den_.pow(unsigned(e)));
}

std::string RatFunc3::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string num = num_.to_string(), den = den_.to_string();
  if (num_.size() > 1) num = "(" + num + ")";
  if (den_.size() > 1 || den.find('*') != std::string::npos) den = "(" + den + ")";
  return num + "/" + den;
}

namespace {

struct Powers {
  std::vector<ZPoly> p;
  explicit Powers(const ZPoly& base) : p{ZPoly(Integer(1)), base} {}
  const ZPoly& operator[](unsigned e) {
    while (p.size() <= e) p.push_back(p.back() * p[1]);
    return p[e];
  }
};

// Homogenized substitution: P(sx, sy) * qx^dx * qy^dy with sx = px/qx, sy = py/qy.
ZPoly substitute_cleared(const ZPoly& P, unsigned dx, unsigned dy, Powers& pxs, Powers& qxs,
                         Powers& pys, Powers& qys) {
  ZPoly out;
  auto by_x = P.coefficients_in(Var::X);
  for (unsigned i = 0; i < by_x.size(); ++i) {
    if (by_x[i].is_zero()) continue;
    auto by_y = by_x[i].coefficients_in(Var::Y);
    ZPoly inner;
    for (unsigned j = 0; j < by_y.size(); ++j) {
      if (by_y[j].is_zero()) continue;
      inner += by_y[j] * (pys[j] * qys[dy - j]);
    }
    out += inner * (pxs[i] * qxs[dx - i]);
  }
  return out;
}

}  // namespace

RatFunc3 rf_substitute(const RatFunc3& h, const RatFunc3& sx, const RatFunc3& sy) {
  Powers pxs(sx.znum()), qxs(sx.zden()), pys(sy.znum()), qys(sy.zden());
  const ZPoly& N = h.znum();
  const ZPoly& D = h.zden();
  const unsigned nx = N.degree(Var::X), ny = N.degree(Var::Y);
  const unsigned dx = D.degree(Var::X), dy = D.degree(Var::Y);
  const unsigned mx = std::max(nx, dx), my = std::max(ny, dy);
  ZPoly num = substitute_cleared(N, nx, ny, pxs, qxs, pys, qys);
  ZPoly den = substitute_cleared(D, dx, dy, pxs, qxs, pys, qys);
  if (den.is_zero()) throw IdenticallyZeroDenominator("substituted denominator vanishes identically");
  num = num * (qxs[mx - nx] * qys[my - ny]);
  den = den * (qxs[mx - dx] * qys[my - dy]);
  return rf_normalize(num, den);
}

Rational eval_at(const RatFunc3& h, const Rational& x, const Rational& y, const Rational& z) {
  auto lift = [](const Integer& c) { return Rational(c); };
  Rational d = h.zden().evaluate<Rational>(x, y, z, lift);
  if (sgn(d) == 0) throw PoleAtPoint("denominator vanishes at (" + x.get_str() + ", " + y.get_str() + ", " + z.get_str() + ")");
  Rational n = h.znum().evaluate<Rational>(x, y, z, lift);
  return n / d;
}

std::uint64_t eval_mod(const ZPoly& h, std::uint64_t x, std::uint64_t y, std::uint64_t z,
                       std::uint64_t p) {
  const modp::Field f{p};
  return h.evaluate<modp::Elem>(modp::Elem{x, &f}, modp::Elem{y, &f}, modp::Elem{z, &f},
                                [&](const Integer& c) { return modp::Elem{modp::reduce(c, p), &f}; })
      .v;
}

std::optional<std::uint64_t> eval_mod(const RatFunc3& h, std::uint64_t x, std::uint64_t y,
                                      std::uint64_t z, std::uint64_t p) {
  const std::uint64_t d = eval_mod(h.zden(), x, y, z, p);
  if (d == 0) return std::nullopt;
  const modp::Field f{p};
  return f.mul(eval_mod(h.znum(), x, y, z, p), f.inv(d));
}

}  // namespace qpw
