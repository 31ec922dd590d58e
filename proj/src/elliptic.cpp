#include "qpw/elliptic.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "qpw/errors.hpp"

namespace qpw {

namespace bm = boost::multiprecision;

namespace {

using UPoly = std::vector<Rational>;  // low degree first

void trim(UPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

UPoly from_quartic(const Quartic& d) {
  UPoly p(d.begin(), d.end());
  trim(p);
  return p;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

UPoly sub(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

UPoly derivative(const UPoly& p) {
  UPoly r;
  for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * long(i));
  trim(r);
  return r;
}

UPoly rem(UPoly a, const UPoly& b) {
  while (!a.empty() && a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Rational horner(const UPoly& p, const Rational& t) {
  Rational v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
  return v;
}

template <class T>
T horner_big(const std::vector<BigFloat>& p, const T& t) {
  T v = BigFloat(0);
  for (std::size_t i = p.size(); i-- > 0;) v = v * t + T(p[i]);
  return v;
}

std::vector<BigFloat> to_big(const UPoly& p) {
  std::vector<BigFloat> r;
  for (const Rational& c : p) r.push_back(to_bigfloat(c));
  return r;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    UPoly r = rem(seq[seq.size() - 2], seq.back());
    for (Rational& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  seq.pop_back();
  return seq;
}

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int variations_at(const std::vector<UPoly>& seq, const Rational& t) {
  std::vector<int> s;
  for (const UPoly& p : seq) s.push_back(sgn(horner(p, t)));
  return variations(s);
}

int variations_at_infinity(const std::vector<UPoly>& seq, int dir) {
  std::vector<int> s;
  for (const UPoly& p : seq) {
    const int lead = sgn(p.back());
    s.push_back((dir < 0 && (p.size() - 1) % 2 == 1) ? -lead : lead);
  }
  return variations(s);
}

Rational rpow(const Rational& q, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= q;
  return r;
}

UPoly univariate_in_x(const Poly3& p, const Rational& z0) {
  UPoly out;
  for (const auto& t : p.terms()) {
    if (t.mono.ey() != 0) throw InvalidArgument("coefficient still depends on y");
    const std::size_t e = t.mono.ex();
    if (out.size() <= e) out.resize(e + 1, Rational(0));
    out[e] += t.coeff * rpow(z0, t.mono.ez());
  }
  trim(out);
  return out;
}

std::array<Rational, 3> to_array3(const UPoly& p) {
  if (p.size() > 3) throw InvalidArgument("kernel coefficient of x-degree above 2");
  std::array<Rational, 3> r{Rational(0), Rational(0), Rational(0)};
  std::copy(p.begin(), p.end(), r.begin());
  return r;
}

unsigned working_bits(const BigFloat& v) { return unsigned(mpfr_get_prec(v.backend().data())); }

BigComplex i_pi() { return {BigFloat(0), big_pi()}; }

BigComplex eval3(const std::array<Rational, 3>& p, const BigComplex& x) {
  return (BigComplex(to_bigfloat(p[2])) * x + BigComplex(to_bigfloat(p[1]))) * x + BigComplex(to_bigfloat(p[0]));
}

BigFloat uniform01(std::mt19937_64& rng) {
  return BigFloat(rng() >> 11) * big_pow2(-53);
}

}  // namespace

Rational default_z0(StepSet s) { return Rational(1) / Rational(2L * s.size()); }

Quartic discriminant_x(const Poly3& K, const Rational& z0) {
  const auto cy = K.coefficients_in(Var::Y);
  if (cy.size() > 3) throw InvalidArgument("kernel has y-degree above 2");
  auto part = [&](std::size_t e) { return e < cy.size() ? univariate_in_x(cy[e], z0) : UPoly{}; };
  const UPoly a = part(2), b = part(1), c = part(0);
  UPoly D = sub(mul(b, b), mul(UPoly{Rational(4)}, mul(a, c)));
  if (D.size() > 5) throw InvalidArgument("discriminant has x-degree above 4");
  Quartic d{Rational(0), Rational(0), Rational(0), Rational(0), Rational(0)};
  std::copy(D.begin(), D.end(), d.begin());
  return d;
}

Quartic discriminant_x(const Kernel& K, const Rational& z0) {
  if (sgn(z0) <= 0 || z0 * Rational(K.steps.size()) >= 1) {
    throw InvalidArgument("z0 = " + z0.get_str() + " outside (0, 1/" + std::to_string(K.steps.size()) + ")");
  }
  return discriminant_x(K.K, z0);
}

int genus_check(const Quartic& d) {
  const UPoly p = from_quartic(d);
  if (p.size() < 4) return 0;
  const std::vector<UPoly> seq = sturm_sequence(p);
  // the last Sturm element is gcd(p, p') up to a constant factor
  return seq.back().size() == 1 ? 1 : 0;
}

Invariants quartic_invariants(const Quartic& d) {
  const Rational &d0 = d[0], &d1 = d[1], &d2 = d[2], &d3 = d[3], &d4 = d[4];
  Invariants g;
  g.g2 = d0 * d4 - d1 * d3 / 4 + d2 * d2 / 12;
  g.g3 = d0 * d2 * d4 / 6 + d1 * d2 * d3 / 48 - d1 * d1 * d4 / 16 - d0 * d3 * d3 / 16 - d2 * d2 * d2 / 216;
  return g;
}

Invariants uniformization_invariants(const Quartic& d) {
  const Invariants g = quartic_invariants(d);
  return {g.g2 * 16, g.g3 * 64};
}

int real_root_count(const Quartic& d) {
  const UPoly p = from_quartic(d);
  if (p.size() < 2) return 0;
  const std::vector<UPoly> seq = sturm_sequence(p);
  return variations_at_infinity(seq, -1) - variations_at_infinity(seq, 1);
}

std::vector<BigFloat> real_roots(const Quartic& d) {
  const UPoly p = from_quartic(d);
  if (p.size() < 2) return {};
  const int degree = int(p.size()) - 1;
  const std::vector<UPoly> seq = sturm_sequence(p);
  const int count = variations_at_infinity(seq, -1) - variations_at_infinity(seq, 1);
  if (seq.back().size() != 1 || count != degree) {
    throw ComplexBranchPoints(std::to_string(count) + " distinct real roots for degree " + std::to_string(degree));
  }
  Rational bound = 0;
  for (const Rational& c : p) bound = std::max(bound, Rational(abs(c / p.back())));
  bound += 1;

  // exact isolation into intervals (a, b] holding one root each
  std::vector<std::pair<Rational, Rational>> isolated;
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const int inside = variations_at(seq, a) - variations_at(seq, b);
    if (inside == 0) continue;
    if (inside == 1) {
      isolated.emplace_back(a, b);
      continue;
    }
    const Rational mid = (a + b) / 2;
    stack.emplace_back(a, mid);
    stack.emplace_back(mid, b);
  }
  std::sort(isolated.begin(), isolated.end());

  const UPoly dp = derivative(p);
  const std::vector<BigFloat> pb = to_big(p);
  std::vector<BigFloat> roots;
  for (const auto& [a, b] : isolated) {
    if (sgn(horner(p, b)) == 0) {
      roots.push_back(to_bigfloat(b));
      continue;
    }
    int left = sgn(horner(p, a));
    if (left == 0) left = sgn(horner(dp, a));
    BigFloat lo = to_bigfloat(a), hi = to_bigfloat(b);
    const unsigned iterations = working_bits(lo) + 64;
    for (unsigned it = 0; it < iterations; ++it) {
      BigFloat mid = (lo + hi) / 2;
      const BigFloat v = horner_big<BigFloat>(pb, mid);
      if (v == 0) {
        lo = hi = mid;
        break;
      }
      if ((v > 0 ? 1 : -1) == left) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back((lo + hi) / 2);
  }
  return roots;
}

Lattice::Lattice(BigFloat real_period, BigFloat imag_period) : P_(std::move(real_period)), Q_(std::move(imag_period)) {
  if (P_ <= 0 || Q_ <= 0) throw InvalidArgument("lattice periods must be positive");
  const BigFloat pi = big_pi();
  q_ = bm::exp(-pi * Q_ / P_);
  const Theta at0 = theta1(BigComplex());
  eta_P_ = BigComplex(BigFloat(-pi * pi * at0.t3.re / (6 * P_ * at0.t1.re)));
  const BigComplex half(BigFloat(0), BigFloat(Q_ / 2));
  const Theta t = theta1(half * BigComplex(BigFloat(pi / P_)));
  eta_Q_ = BigComplex(BigFloat(2 * eta_P_.re / P_)) * half + BigComplex(BigFloat(pi / P_)) * (t.t1 / t.t0);
}

Lattice::Theta Lattice::theta1(const BigComplex& w) const {
  const unsigned bits = working_bits(P_);
  const BigFloat eps = big_pow2(-long(bits) - 16);
  const BigComplex E = exp(BigComplex(BigFloat(-w.im), w.re));  // e^{i w}
  const BigComplex Einv = BigComplex(1L) / E;
  const BigComplex E2 = E * E, E2inv = Einv * Einv;
  const BigFloat growth = bm::exp(bm::abs(w.im));
  const BigFloat growth2 = growth * growth;
  BigComplex Ep = E, En = Einv;
  BigFloat amp = 2 * bm::sqrt(bm::sqrt(q_));
  BigFloat ratio = q_ * q_;
  const BigFloat q2 = q_ * q_;
  BigFloat mag = growth;
  Theta th;
  const BigComplex half_minus_i(BigFloat(0), BigFloat(BigFloat(-1) / 2));
  for (long n = 0; n < 1000000; ++n) {
    const long m = 2 * n + 1;
    const BigComplex s = (Ep - En) * half_minus_i;  // sin(m w)
    const BigComplex c = (Ep + En) * BigComplex(BigFloat(BigFloat(1) / 2));
    const BigFloat coef = (n % 2 == 0) ? amp : BigFloat(-amp);
    const BigFloat cm = coef * m, cm2 = cm * m, cm3 = cm2 * m;
    th.t0 += BigComplex(coef) * s;
    th.t1 += BigComplex(cm) * c;
    th.t2 -= BigComplex(cm2) * s;
    th.t3 -= BigComplex(cm3) * c;
    const BigFloat bound = amp * m * m * m * mag;
    const BigFloat scale = abs(th.t1) + abs(th.t0);
    if (n > 0 && bound < eps * scale) break;
    amp *= ratio;
    ratio *= q2;
    Ep *= E2;
    En *= E2inv;
    mag *= growth2;
  }
  return th;
}

Lattice::Values Lattice::eval(const BigComplex& w) const {
  const BigFloat mr = bm::round(w.re / P_), nr = bm::round(w.im / Q_);
  const BigComplex zr = w - BigComplex(BigFloat(mr * P_), BigFloat(nr * Q_));
  if (abs(zr) < P_ * big_pow2(-long(working_bits(P_)) / 2)) {
    throw PoleAtLatticePoint("argument " + to_decimal(w) + " is a lattice point");
  }
  const BigFloat pi = big_pi();
  const BigComplex k(BigFloat(pi / P_));
  const Theta t = theta1(zr * k);
  const BigComplex L = t.t1 / t.t0;
  const BigComplex Lp = t.t2 / t.t0 - L * L;
  const BigComplex Lpp = t.t3 / t.t0 - t.t2 * t.t1 / (t.t0 * t.t0) - BigComplex(2L) * L * Lp;
  const BigComplex slope(BigFloat(2 * eta_P_.re / P_));
  Values v;
  v.zeta = slope * zr + k * L + BigComplex(BigFloat(2 * mr)) * eta_P_ + BigComplex(BigFloat(2 * nr)) * eta_Q_;
  v.wp = -slope - k * k * Lp;
  v.wp_prime = -(k * k * k) * Lpp;
  return v;
}

BigComplex wp_eval(const BigComplex& w, const Lattice& L) { return L.eval(w).wp; }
BigComplex wp_prime_eval(const BigComplex& w, const Lattice& L) { return L.eval(w).wp_prime; }
BigComplex zeta_eval(const BigComplex& w, const Lattice& L) { return L.eval(w).zeta; }

Lattice periods_from_invariants(const Invariants& g) {
  // 4 t^3 - g2 t - g3
  const Quartic cubic{-g.g3, -g.g2, Rational(0), Rational(4), Rational(0)};
  std::vector<BigFloat> e;
  try {
    e = real_roots(cubic);
  } catch (const ComplexBranchPoints&) {
    throw ComplexBranchPoints("4t^3 - g2 t - g3 lacks three distinct real roots");
  }
  const BigFloat &e3 = e[0], &e2 = e[1], &e1 = e[2];
  const BigFloat pi = big_pi();
  BigFloat m1, m2;
  const BigFloat s13 = bm::sqrt(BigFloat(e1 - e3)), s12 = bm::sqrt(BigFloat(e1 - e2)), s23 = bm::sqrt(BigFloat(e2 - e3));
  mpfr_agm(m1.backend().data(), s13.backend().data(), s12.backend().data(), MPFR_RNDN);
  mpfr_agm(m2.backend().data(), s13.backend().data(), s23.backend().data(), MPFR_RNDN);
  return Lattice(BigFloat(pi / m1), BigFloat(pi / m2));
}

Lattice periods(const Quartic& d) {
  real_roots(d);
  return periods_from_invariants(uniformization_invariants(d));
}

BigComplex Mobius::operator()(const BigComplex& x) const {
  return (BigComplex(a) * x + BigComplex(b)) / (BigComplex(c) * x + BigComplex(d));
}

BigComplex Mobius::derivative(const BigComplex& x) const {
  const BigComplex den = BigComplex(c) * x + BigComplex(d);
  return BigComplex(BigFloat(a * d - b * c)) / (den * den);
}

EllipticData elliptic_data(StepSet s, const Rational& z0, unsigned precision_bits) {
  PrecisionGuard guard(precision_bits);
  const Kernel ker = kernel_of(s);
  EllipticData data;
  data.steps = s;
  data.z0 = z0;
  data.precision_bits = precision_bits;
  data.d = discriminant_x(ker, z0);
  if (genus_check(data.d) != 1) throw DegenerateKernel("genus 0 at z0 = " + z0.get_str());
  data.branch_points = real_roots(data.d);
  data.infinite_branch_point = sgn(data.d[4]) == 0;
  data.invariants = uniformization_invariants(data.d);
  data.lattice = periods_from_invariants(data.invariants);

  const UPoly D = from_quartic(data.d);
  if (data.infinite_branch_point) {
    data.glue = {to_bigfloat(data.d[3]), to_bigfloat(data.d[2] / 3), BigFloat(0), BigFloat(1)};
  } else {
    const std::vector<BigFloat> d1 = to_big(derivative(D)), d2 = to_big(derivative(derivative(D)));
    bool found = false;
    for (std::size_t i = data.branch_points.size(); i-- > 0;) {
      if (horner_big<BigFloat>(d1, data.branch_points[i]) > 0) {
        data.x4 = data.branch_points[i];
        found = true;
        break;
      }
    }
    if (!found) throw ComplexBranchPoints("no branch point with positive derivative");
    const BigFloat A = horner_big<BigFloat>(d1, data.x4);
    const BigFloat beta = horner_big<BigFloat>(d2, data.x4) / 6;
    data.glue = {beta, BigFloat(A - beta * data.x4), BigFloat(1), BigFloat(-data.x4)};
  }

  const auto cy = ker.K.coefficients_in(Var::Y);
  data.c = to_array3(univariate_in_x(cy[0], z0));
  data.b = to_array3(cy.size() > 1 ? univariate_in_x(cy[1], z0) : UPoly{});
  data.a = to_array3(cy.size() > 2 ? univariate_in_x(cy[2], z0) : UPoly{});
  data.kernel = to_zpoly_exact(ker.K);
  return data;
}

CurvePoint uniformize(const EllipticData& data, const BigComplex& w) {
  PrecisionGuard guard(data.precision_bits);
  const Lattice::Values v = data.lattice.eval(w);
  const Mobius& g = data.glue;
  const BigComplex den = BigComplex(g.a) - BigComplex(g.c) * v.wp;
  const BigFloat tiny = big_pow2(-long(data.precision_bits) / 2);
  if (abs(den) < tiny * (BigFloat(1) + abs(v.wp))) {
    throw PoleOfUniformization("x(w) has a pole at " + to_decimal(w));
  }
  CurvePoint p;
  p.x = (BigComplex(g.d) * v.wp - BigComplex(g.b)) / den;
  p.u = -(BigComplex(BigFloat(g.a * g.d - g.b * g.c)) * v.wp_prime) / (BigComplex(2L) * den * den);
  const BigComplex a = eval3(data.a, p.x);
  if (abs(a) < tiny) throw PoleOfUniformization("y(w) has a pole at " + to_decimal(w));
  p.y = (p.u - eval3(data.b, p.x)) / (BigComplex(2L) * a);
  return p;
}

BigComplex x_derivative(const EllipticData& data, const BigComplex& w) {
  PrecisionGuard guard(data.precision_bits);
  const Lattice::Values v = data.lattice.eval(w);
  const Mobius& g = data.glue;
  const BigComplex den = BigComplex(g.a) - BigComplex(g.c) * v.wp;
  return BigComplex(BigFloat(g.a * g.d - g.b * g.c)) * v.wp_prime / (den * den);
}

BigComplex eval(const ZPoly& p, const BigComplex& x, const BigComplex& y, const BigComplex& z) {
  auto powers = [](const BigComplex& b, unsigned n) {
    std::vector<BigComplex> r{BigComplex(1L)};
    for (unsigned i = 0; i < n; ++i) r.push_back(r.back() * b);
    return r;
  };
  const auto xp = powers(x, p.degree(Var::X)), yp = powers(y, p.degree(Var::Y)), zp = powers(z, p.degree(Var::Z));
  BigComplex sum;
  for (const auto& t : p.terms()) {
    sum += BigComplex(to_bigfloat(t.coeff)) * xp[t.mono.ex()] * yp[t.mono.ey()] * zp[t.mono.ez()];
  }
  return sum;
}

BigComplex eval(const RatFunc3& h, const BigComplex& x, const BigComplex& y, const BigComplex& z) {
  const BigComplex den = eval(h.zden(), x, y, z);
  if (den.re == 0 && den.im == 0) throw PoleAtPoint("denominator vanishes");
  return eval(h.znum(), x, y, z) / den;
}

BigComplex kernel_residual(const EllipticData& data, const BigComplex& w) {
  PrecisionGuard guard(data.precision_bits);
  const CurvePoint p = uniformize(data, w);
  return eval(data.kernel, p.x, p.y, BigComplex(to_bigfloat(data.z0)));
}

std::pair<BigComplex, BigComplex> delta_image(const EllipticData& data, const CurvePoint& p) {
  PrecisionGuard guard(data.precision_bits);
  const BigComplex z(to_bigfloat(data.z0));
  return {eval(data.delta.X, p.x, p.y, z), eval(data.delta.Y, p.x, p.y, z)};
}

Omega3 omega3_of(EllipticData& data, const GroupReport& report) {
  if (!report.order_H.finite) throw InfiniteGroup("order of " + data.steps.to_string() + " exceeds the bound");
  PrecisionGuard guard(data.precision_bits);
  const int n = report.order_H.value / 2;
  if (n < 2 || report.delta_point_maps.size() < 2) throw TranslationNotFound("delta is the identity");
  data.delta = report.delta_point_maps[1];
  data.n = n;

  const BigFloat& P = data.lattice.real_period();
  const BigFloat& Q = data.lattice.imag_period();
  const BigComplex w0(BigFloat(P * 37 / 100), BigFloat(Q * 21 / 100));
  const CurvePoint p0 = uniformize(data, w0);
  const auto [tx, ty] = delta_image(data, p0);
  const BigFloat scale = BigFloat(1) + abs(tx) + abs(ty);

  // coarse scan over real translations, then Newton on x from the best candidates
  const int grid = 64 * n;
  std::vector<std::pair<BigFloat, BigFloat>> candidates;
  for (int j = 1; j < grid; ++j) {
    const BigFloat tau = P * j / grid;
    try {
      const CurvePoint p = uniformize(data, w0 + BigComplex(tau));
      candidates.emplace_back(BigFloat(abs(p.x - tx) + abs(p.y - ty)), tau);
    } catch (const Error&) {
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const BigFloat newton_tol = P * big_pow2(8 - long(data.precision_bits));
  const BigFloat accept = scale * big_pow2(-long(data.precision_bits) / 2);
  for (std::size_t c = 0; c < std::min<std::size_t>(candidates.size(), 8); ++c) {
    BigComplex tau(candidates[c].second);
    try {
      for (int it = 0; it < 100; ++it) {
        const CurvePoint p = uniformize(data, w0 + tau);
        const BigComplex step = (p.x - tx) / x_derivative(data, w0 + tau);
        tau -= step;
        if (abs(step) < newton_tol) break;
      }
      BigFloat re = tau.re - bm::floor(tau.re / P) * P;
      const BigFloat im = tau.im - bm::round(tau.im / Q) * Q;
      if (bm::abs(im) > accept * Q) continue;
      const CurvePoint p = uniformize(data, w0 + BigComplex(re));
      const BigFloat residual = abs(p.x - tx) + abs(p.y - ty);
      if (residual > accept || re <= 0) continue;
      Omega3 out;
      out.omega3 = re;
      out.n = n;
      out.translation_residual = residual;
      const BigFloat ratio = BigFloat(n) * re / P;
      out.k = int(bm::round(ratio).convert_to<long>());
      out.rationality_residual = bm::abs(BigFloat(n) * re - BigFloat(out.k) * P);
      if (out.rationality_residual > BigFloat(1e-10) || std::gcd(out.k, n) != 1) {
        throw RationalityViolated("n omega3 / omega2 = " + to_decimal(ratio) + " for n = " + std::to_string(n));
      }
      data.omega3 = out.omega3;
      data.k = out.k;
      return out;
    } catch (const PoleOfUniformization&) {
    } catch (const PoleAtLatticePoint&) {
    }
  }
  throw TranslationNotFound("no real translation matches delta for " + data.steps.to_string());
}

Lattice lattice13(const EllipticData& data) {
  if (!data.omega3) throw InvalidArgument("omega3 has not been computed");
  PrecisionGuard guard(data.precision_bits);
  return Lattice(*data.omega3, data.lattice.imag_period());
}

BigComplex phi_tilde(const BigComplex& v, const EllipticData& data, const Lattice& L13) {
  PrecisionGuard guard(data.precision_bits);
  const BigComplex s = v - BigComplex(BigFloat(data.lattice.real_period() / 2));
  const BigComplex ipi = i_pi();
  return data.omega1() * L13.eval(s).zeta / (BigComplex(2L) * ipi) - s * L13.eta_imag() / ipi;
}

BigComplex phi_tilde(const BigComplex& v, const EllipticData& data) { return phi_tilde(v, data, lattice13(data)); }

BigComplex w2_eval(const EllipticData& data, const RatFunc3& orbit_sum, const BigComplex& w) {
  PrecisionGuard guard(data.precision_bits);
  if (data.n == 0) throw InvalidArgument("omega3 has not been computed");
  const CurvePoint p = uniformize(data, w);
  const BigComplex value = eval(orbit_sum, p.x, p.y, BigComplex(to_bigfloat(data.z0)));
  return phi_tilde(w, data) * value / BigComplex(long(data.n));
}

HolonomyCheck holonomy_derivative_check(const EllipticData& data, const std::vector<BigComplex>& samples,
                                        const BigFloat& step) {
  PrecisionGuard guard(data.precision_bits);
  const Lattice L13 = lattice13(data);
  const BigComplex half_real(BigFloat(data.lattice.real_period() / 2));
  const BigComplex h(step);
  const BigFloat tiny = big_pow2(-long(data.precision_bits) / 4);
  HolonomyCheck out;
  out.max_relative_error = 0;
  for (const BigComplex& w : samples) {
    try {
      const Lattice::Values v = data.lattice.eval(w);
      if (abs(v.wp_prime) < tiny) throw SampleAtSingularity("branch point at " + to_decimal(w));
      const CurvePoint p = uniformize(data, w);
      const BigComplex dx = x_derivative(data, w);
      // w(x) near x(w) by tracking: Newton from the linear prediction
      auto track = [&](const BigComplex& target) {
        BigComplex t = w + (target - p.x) / dx;
        const BigFloat tol = (BigFloat(1) + abs(w)) * big_pow2(4 - long(data.precision_bits));
        for (int it = 0; it < 60; ++it) {
          const CurvePoint q = uniformize(data, t);
          const BigComplex delta = (q.x - target) / x_derivative(data, t);
          t -= delta;
          if (abs(delta) < tol) break;
        }
        return t;
      };
      const BigComplex wp_plus = track(p.x + h), wp_minus = track(p.x - h);
      const BigComplex ipi = i_pi();
      const BigComplex lhs = -(BigComplex(2L) * ipi) * (phi_tilde(wp_plus, data, L13) - phi_tilde(wp_minus, data, L13)) /
                             (BigComplex(2L) * h);
      const Lattice::Values v13 = L13.eval(w - half_real);
      const BigComplex rhs = data.glue.derivative(p.x) / v.wp_prime *
                             (data.omega1() * v13.wp + BigComplex(2L) * L13.eta_imag());
      const BigFloat err = abs(lhs - rhs) / abs(rhs);
      out.errors.push_back(err);
      if (err > out.max_relative_error) out.max_relative_error = err;
    } catch (const PoleOfUniformization& e) {
      throw SampleAtSingularity(e.what());
    } catch (const PoleAtLatticePoint& e) {
      throw SampleAtSingularity(e.what());
    }
  }
  return out;
}

std::vector<BigComplex> sample_points(const EllipticData& data, int count, std::uint64_t seed) {
  PrecisionGuard guard(data.precision_bits);
  std::mt19937_64 rng(seed);
  auto coordinate = [&rng] {
    BigFloat s = BigFloat(1) / 10 + uniform01(rng) * 6 / 10;
    if (s > BigFloat(4) / 10) s += BigFloat(2) / 10;
    return s;
  };
  std::vector<BigComplex> out;
  for (int i = 0; i < count; ++i) {
    const BigFloat s = coordinate(), t = coordinate();
    out.emplace_back(BigFloat(s * data.lattice.real_period()), BigFloat(t * data.lattice.imag_period()));
  }
  return out;
}

}  // namespace qpw
