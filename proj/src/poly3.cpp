#include "qpw/poly3.hpp"

#include <map>
#include <stdexcept>

#include "qpw/errors.hpp"
#include "modular.hpp"

namespace qpw {

std::string Monomial::to_string() const {
  std::string s;
  auto part = [&](const char* name, unsigned e) {
    if (!e) return;
    if (!s.empty()) s += "*";
    s += name;
    if (e > 1) s += "^" + std::to_string(e);
  };
  part("x", ex());
  part("y", ey());
  part("z", ez());
  return s.empty() ? "1" : s;
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) throw InvalidArgument("not a rational: '" + text + "'");
  if (sgn(q.get_den()) == 0) throw InvalidArgument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

ClearedPoly clear_denominators(const Poly3& p) {
  Integer den = 1;
  for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  std::vector<ZPoly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Integer c = t.coeff.get_num() * (den / t.coeff.get_den());
    out.push_back({t.mono, std::move(c)});
  }
  return {ZPoly::from_sorted_terms(std::move(out)), den};
}

ZPoly to_zpoly_exact(const Poly3& p) {
  std::vector<ZPoly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    if (t.coeff.get_den() != 1) throw std::logic_error("to_zpoly_exact: non-integral coefficient");
    out.push_back({t.mono, t.coeff.get_num()});
  }
  return ZPoly::from_sorted_terms(std::move(out));
}

Poly3 to_poly3(const ZPoly& p) {
  std::vector<Poly3::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.mono, Rational(t.coeff)});
  return Poly3::from_sorted_terms(std::move(out));
}

Integer content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly primitive_part(const ZPoly& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (sgn(lex_leading(p).coeff) < 0) g = -g;
  if (g == 1) return p;
  std::vector<ZPoly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Integer c;
    mpz_divexact(c.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
    out.push_back({t.mono, std::move(c)});
  }
  return ZPoly::from_sorted_terms(std::move(out));
}

namespace {

bool lex_greater(Monomial a, Monomial b) {
  if (a.ex() != b.ex()) return a.ex() > b.ex();
  if (a.ey() != b.ey()) return a.ey() > b.ey();
  return a.ez() > b.ez();
}

}  // namespace

const ZPoly::Term& lex_leading(const ZPoly& p) {
  const ZPoly::Term* best = &p.terms().front();
  for (const auto& t : p.terms()) {
    if (lex_greater(t.mono, best->mono)) best = &t;
  }
  return *best;
}

std::optional<ZPoly> exact_quotient(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw ZeroDenominator("exact_quotient by zero polynomial");
  if (a.is_zero()) return ZPoly{};
  if (b.is_constant()) {
    const Integer& d = b.leading().coeff;
    std::vector<ZPoly::Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      Integer c;
      mpz_divexact(c.get_mpz_t(), t.coeff.get_mpz_t(), d.get_mpz_t());
      out.push_back({t.mono, std::move(c)});
    }
    return ZPoly::from_sorted_terms(std::move(out));
  }
  const auto& lb = b.leading();
  const auto& tb = b.terms().back();
  const auto& ta = a.terms().back();
  // the lowest term of a product is the product of the lowest terms
  if (!tb.mono.divides(ta.mono) || !mpz_divisible_p(ta.coeff.get_mpz_t(), tb.coeff.get_mpz_t())) {
    return std::nullopt;
  }
  if (a.total_degree() < b.total_degree()) return std::nullopt;
  for (Var v : {Var::X, Var::Y, Var::Z}) {
    if (a.degree(v) < b.degree(v)) return std::nullopt;
  }
  if (b.is_monomial()) {
    std::vector<ZPoly::Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!lb.mono.divides(t.mono) || !mpz_divisible_p(t.coeff.get_mpz_t(), lb.coeff.get_mpz_t())) {
        return std::nullopt;
      }
      Integer c;
      mpz_divexact(c.get_mpz_t(), t.coeff.get_mpz_t(), lb.coeff.get_mpz_t());
      out.push_back({lb.mono.quotient_of(t.mono), std::move(c)});
    }
    return ZPoly::from_sorted_terms(std::move(out));
  }

  std::map<std::uint64_t, Integer, std::greater<>> rem;
  for (const auto& t : a.terms()) rem.emplace_hint(rem.end(), t.mono.key(), t.coeff);
  std::vector<ZPoly::Term> q;
  while (!rem.empty()) {
    auto it = rem.begin();
    const Monomial m = Monomial::from_key(it->first);
    if (!lb.mono.divides(m) || !mpz_divisible_p(it->second.get_mpz_t(), lb.coeff.get_mpz_t())) {
      return std::nullopt;
    }
    const Monomial qm = lb.mono.quotient_of(m);
    Integer qc;
    mpz_divexact(qc.get_mpz_t(), it->second.get_mpz_t(), lb.coeff.get_mpz_t());
    rem.erase(it);
    for (std::size_t i = 1; i < b.terms().size(); ++i) {
      const auto& t = b.terms()[i];
      auto [pos, inserted] = rem.try_emplace((t.mono * qm).key());
      detail::sub_product(pos->second, qc, t.coeff);
      if (sgn(pos->second) == 0) rem.erase(pos);
    }
    q.push_back({qm, std::move(qc)});
  }
  return ZPoly::from_sorted_terms(std::move(q));
}

std::optional<Poly3> exact_quotient(const Poly3& a, const Poly3& b) {
  auto ca = clear_denominators(a);
  auto cb = clear_denominators(b);
  if (cb.poly.is_zero()) throw ZeroDenominator("exact_quotient by zero polynomial");
  const Integer cont_b = content(cb.poly);
  ZPoly bz = primitive_part(cb.poly);
  auto q = exact_quotient(ca.poly, bz);
  if (!q) return std::nullopt;
  // a / b = (A / den_a) / ((cont_b * B') / den_b)
  const Integer lb = lex_leading(cb.poly).coeff;
  Rational scale(cb.den, ca.den * cont_b);
  if (sgn(lb) < 0) scale = -scale;
  scale.canonicalize();
  return to_poly3(*q) * scale;
}

ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b, Var v) {
  const unsigned db = b.degree(v);
  const ZPoly lcb = b.coefficients_in(v).back();
  const ZPoly tail = b - lcb * ZPoly::var(v, db);
  ZPoly r = a;
  if (r.degree(v) < db) return r;
  unsigned steps = r.degree(v) - db + 1;
  while (!r.is_zero() && r.degree(v) >= db) {
    const unsigned dr = r.degree(v);
    const ZPoly lcr = r.coefficients_in(v).back();
    r = lcb * (r - lcr * ZPoly::var(v, dr)) - (lcr * ZPoly::var(v, dr - db)) * tail;
    --steps;
  }
  if (steps) r = r * lcb.pow(steps);
  return r;
}

namespace {

Var main_variable(const ZPoly& a, const ZPoly& b) {
  for (Var v : {Var::X, Var::Y, Var::Z}) {
    if (a.depends_on(v) || b.depends_on(v)) return v;
  }
  return Var::X;
}

ZPoly normalize_sign(ZPoly p) {
  if (!p.is_zero() && sgn(lex_leading(p).coeff) < 0) p = -p;
  return p;
}

ZPoly recursive_gcd_impl(const ZPoly& a, const ZPoly& b);

ZPoly content_in(const ZPoly& p, Var v) {
  ZPoly g;
  for (const auto& c : p.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = recursive_gcd_impl(g, c);
    if (g.is_one()) break;
  }
  return g;
}

ZPoly primitive_in(const ZPoly& p, Var v) {
  if (p.is_zero()) return p;
  ZPoly c = content_in(p, v);
  auto q = exact_quotient(p, c);
  return normalize_sign(*q);
}

// Euclid over Q for univariate inputs, returned as a primitive integer polynomial.
ZPoly univariate_gcd_over_q(const ZPoly& a, const ZPoly& b, Var v) {
  std::vector<Rational> u, w;
  auto dense = [&](const ZPoly& p) {
    std::vector<Rational> d(p.degree(v) + 1);
    for (const auto& t : p.terms()) d[t.mono.exp(v)] = Rational(t.coeff);
    return d;
  };
  auto trim = [](std::vector<Rational>& d) {
    while (!d.empty() && sgn(d.back()) == 0) d.pop_back();
  };
  u = dense(a);
  w = dense(b);
  trim(u);
  trim(w);
  while (!w.empty()) {
    while (u.size() >= w.size()) {
      Rational f = u.back() / w.back();
      const std::size_t shift = u.size() - w.size();
      for (std::size_t i = 0; i < w.size(); ++i) u[i + shift] -= f * w[i];
      u.pop_back();
      trim(u);
      if (u.empty()) break;
    }
    std::swap(u, w);
  }
  std::vector<Poly3::Term> terms;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (sgn(u[i]) != 0) terms.push_back({Monomial::var(v, unsigned(i)), u[i]});
  }
  auto cleared = clear_denominators(Poly3::from_terms(std::move(terms)));
  return primitive_part(cleared.poly);
}

ZPoly recursive_gcd_impl(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  if (a.is_constant() || b.is_constant()) {
    Integer g = gcd(content(a), content(b));
    return ZPoly(g);
  }
  const Var v = main_variable(a, b);
  const ZPoly ca = content_in(a, v), cb = content_in(b, v);
  const ZPoly c = recursive_gcd_impl(ca, cb);
  ZPoly A = *exact_quotient(a, ca), B = *exact_quotient(b, cb);
  if (A.degree(v) == 0 || B.degree(v) == 0) return c;
  const bool univariate = [&] {
    for (Var w : {Var::X, Var::Y, Var::Z}) {
      if (w != v && (A.depends_on(w) || B.depends_on(w))) return false;
    }
    return true;
  }();
  ZPoly g;
  if (univariate) {
    g = univariate_gcd_over_q(A, B, v);
  } else {
    if (A.degree(v) < B.degree(v)) std::swap(A, B);
    while (true) {
      ZPoly r = pseudo_remainder(A, B, v);
      if (r.is_zero()) {
        g = B;
        break;
      }
      if (r.degree(v) == 0) {
        g = ZPoly(Integer(1));
        break;
      }
      A = std::move(B);
      B = primitive_in(r, v);
    }
    g = primitive_in(g, v);
  }
  return normalize_sign(c * g);
}

}  // namespace

ZPoly gcd_recursive(const ZPoly& a, const ZPoly& b) {
  ZPoly g = recursive_gcd_impl(a, b);
  if (g.is_zero()) return g;
  // the integer content of a gcd of polynomials is the gcd of the contents
  Integer cont = qpw::gcd(content(a), content(b));
  return normalize_sign(primitive_part(g) * cont);
}

namespace {

// Splits off the monomial and integer contents before calling the modular core.
GcdWithCofactors gcd_dispatch(const ZPoly& a, const ZPoly& b, bool want_cofactors) {
  if (a.is_zero() || b.is_zero()) {
    ZPoly g = normalize_sign(a.is_zero() ? b : a);
    GcdWithCofactors out{g, {}, {}};
    if (g.is_zero()) return out;
    out.a_over_gcd = a.is_zero() ? ZPoly{} : ZPoly(Integer(sgn(lex_leading(a).coeff)));
    out.b_over_gcd = b.is_zero() ? ZPoly{} : ZPoly(Integer(sgn(lex_leading(b).coeff)));
    return out;
  }
  const Integer ca = content(a), cb = content(b);
  const Integer cg = gcd(ca, cb);
  const Monomial ma = a.monomial_content(), mb = b.monomial_content();
  const Monomial mg = Monomial::gcd(ma, mb);
  ZPoly A = primitive_part(a.div_monomial(ma));
  ZPoly B = primitive_part(b.div_monomial(mb));
  GcdWithCofactors core;
  if (A.is_constant() || B.is_constant()) {
    core = {ZPoly(Integer(1)), A, B};
  } else if (A == B) {
    core = {A, ZPoly(Integer(1)), ZPoly(Integer(1))};
  } else {
    core = modular::gcd_primitive(A, B);
  }
  GcdWithCofactors out;
  out.gcd = core.gcd.mul_term(cg, mg);
  if (want_cofactors) {
    // a = sa * ca * ma * A,  A = G * A'
    const Integer sa = sgn(lex_leading(a).coeff) * sgn(lex_leading(A).coeff);
    const Integer sb = sgn(lex_leading(b).coeff) * sgn(lex_leading(B).coeff);
    out.a_over_gcd = core.a_over_gcd.mul_term(Integer(sa * (ca / cg)), mg.quotient_of(ma));
    out.b_over_gcd = core.b_over_gcd.mul_term(Integer(sb * (cb / cg)), mg.quotient_of(mb));
  }
  return out;
}

}  // namespace

ZPoly gcd(const ZPoly& a, const ZPoly& b) { return gcd_dispatch(a, b, false).gcd; }

GcdWithCofactors gcd_cofactors(const ZPoly& a, const ZPoly& b) { return gcd_dispatch(a, b, true); }

Poly3 gcd(const Poly3& a, const Poly3& b) {
  ZPoly g = gcd(clear_denominators(a).poly, clear_denominators(b).poly);
  if (g.is_zero()) return {};
  Poly3 r = to_poly3(g);
  Rational lc(lex_leading(g).coeff);
  return r * Rational(1 / lc);
}

namespace {

// A square has a positive leading coefficient in every monomial order, and each
// new root term is lt(rem) / (2 lt(root)) with strictly decreasing monomials.
std::optional<ZPoly> integer_square_root(const ZPoly& p) {
  if (p.is_zero()) return ZPoly{};
  const auto& lt = p.leading();
  const Monomial m = lt.mono;
  if (sgn(lt.coeff) < 0 || m.ex() % 2 || m.ey() % 2 || m.ez() % 2) return std::nullopt;
  if (!mpz_perfect_square_p(lt.coeff.get_mpz_t())) return std::nullopt;
  const Integer r0 = sqrt(lt.coeff);
  const Integer two_r0 = 2 * r0;
  const Monomial m0(m.ex() / 2, m.ey() / 2, m.ez() / 2);
  ZPoly root = ZPoly::monomial(r0, m0);
  ZPoly rem = p - root * root;
  Monomial last = m0;
  while (!rem.is_zero()) {
    const auto& rt = rem.leading();
    if (!m0.divides(rt.mono)) return std::nullopt;
    const Monomial qm = m0.quotient_of(rt.mono);
    if (!(qm < last)) return std::nullopt;
    if (!mpz_divisible_p(rt.coeff.get_mpz_t(), two_r0.get_mpz_t())) return std::nullopt;
    ZPoly term = ZPoly::monomial(Integer(rt.coeff / two_r0), qm);
    rem = rem - term * (root + root + term);
    root = root + term;
    last = qm;
  }
  return root;
}

}  // namespace

std::optional<Poly3> square_root(const Poly3& p) {
  if (p.is_zero()) return Poly3{};
  auto cleared = clear_denominators(p);
  // p = (cont / den) * P with P primitive and positive in lex order
  Integer cont = content(cleared.poly);
  if (sgn(lex_leading(cleared.poly).coeff) < 0) cont = -cont;
  Rational scale(cont, cleared.den);
  scale.canonicalize();
  if (sgn(scale) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(scale.get_num_mpz_t()) || !mpz_perfect_square_p(scale.get_den_mpz_t())) {
    return std::nullopt;
  }
  auto r = integer_square_root(primitive_part(cleared.poly));
  if (!r) return std::nullopt;
  return to_poly3(*r) * Rational(sqrt(scale.get_num()), sqrt(scale.get_den()));
}

bool is_squarefree(const Poly3& p) {
  if (p.is_constant()) return true;
  const ZPoly P = clear_denominators(p).poly;
  for (Var v : {Var::X, Var::Y, Var::Z}) {
    if (!P.depends_on(v)) continue;
    ZPoly g = gcd(P, P.derivative(v));
    if (g.depends_on(v)) return false;
  }
  return true;
}

}  // namespace qpw
