#include "qpw/group.hpp"

#include <random>

#include "qpw/errors.hpp"
#include "modp.hpp"

namespace qpw {

GroupElement identity_map() { return {RatFunc3::x(), RatFunc3::y()}; }

namespace {

// Sum of v^(k+1) over the steps whose fixed coordinate equals `level`,
// where k is the other coordinate; returned with the shift by one power of v.
Poly3 shifted_row(StepSet s, bool by_j, int level, Var v) {
  Poly3 out;
  for (const Step& st : s.steps()) {
    const int fixed = by_j ? st.j : st.i;
    const int free = by_j ? st.i : st.j;
    if (fixed == level) out += Poly3::var(v, unsigned(free + 1));
  }
  return out;
}

}  // namespace

GroupElement xi_map(StepSet s) {
  // A-(x)/A+(x) = (x*A-)/(x*A+), both shifted sums are polynomials in x
  const Poly3 minus = shifted_row(s, true, -1, Var::X);
  const Poly3 plus = shifted_row(s, true, 1, Var::X);
  if (minus.is_zero() || plus.is_zero()) {
    throw UndefinedGenerator("xi needs steps with j = -1 and j = +1 in " + s.to_string());
  }
  return {RatFunc3::x(), rf_normalize(minus, plus * py())};
}

GroupElement eta_map(StepSet s) {
  const Poly3 minus = shifted_row(s, false, -1, Var::Y);
  const Poly3 plus = shifted_row(s, false, 1, Var::Y);
  if (minus.is_zero() || plus.is_zero()) {
    throw UndefinedGenerator("eta needs steps with i = -1 and i = +1 in " + s.to_string());
  }
  return {rf_normalize(minus, plus * px()), RatFunc3::y()};
}

RatFunc3 apply(const RatFunc3& h, const GroupElement& m) {
  if (!h.depends_on(Var::X) && !h.depends_on(Var::Y)) return h;
  return rf_substitute(h, m.X, m.Y);
}

GroupElement compose_point_maps(const GroupElement& g, const GroupElement& h) {
  return {apply(g.X, h), apply(g.Y, h)};
}

GroupElement delta_substitution(StepSet s) { return compose_point_maps(xi_map(s), eta_map(s)); }

GroupElement delta_tilde_substitution(StepSet s) { return compose_point_maps(eta_map(s), xi_map(s)); }

std::string GroupOrder::to_string() const {
  return finite ? "Finite(" + std::to_string(value) + ")" : "ExceedsBound(" + std::to_string(value) + ")";
}

namespace {

struct CurvePoint {
  std::uint64_t x, y, z;
};

// Random point of z*P(x, y) = x*y modulo p, with P the shifted step sum.
class CurveSampler {
 public:
  CurveSampler(StepSet s, std::uint64_t seed) : rng_(seed), P_(clear_denominators(kernel_of(s).K + px() * py()).poly) {
    // P_ currently holds z*P; strip the z factor
    P_ = P_.div_monomial(Monomial(0, 0, 1));
  }
  CurvePoint next() {
    const modp::Field f{modp::kPrefilterPrime};
    std::uniform_int_distribution<std::uint64_t> dist(2, f.p - 1);
    while (true) {
      const std::uint64_t x = dist(rng_), y = dist(rng_);
      const std::uint64_t p = eval_mod(P_, x, y, 0, f.p);
      if (p == 0) continue;
      return {x, y, f.mul(f.mul(x, y), f.inv(p))};
    }
  }

 private:
  std::mt19937_64 rng_;
  ZPoly P_;
};

// m^k applied to pt by iteration; nullopt if a pole is met.
std::optional<CurvePoint> iterate(const GroupElement& m, CurvePoint pt, int k) {
  for (int i = 0; i < k; ++i) {
    auto X = eval_mod(m.X, pt.x, pt.y, pt.z, modp::kPrefilterPrime);
    auto Y = eval_mod(m.Y, pt.x, pt.y, pt.z, modp::kPrefilterPrime);
    if (!X || !Y) return std::nullopt;
    pt = {*X, *Y, pt.z};
  }
  return pt;
}

// A power of the delta map restricted to a random line t -> (a t + b) in each
// coordinate, kept as reduced univariate fractions modulo the prefilter prime.
// The numerator degree of the restriction equals the total numerator degree of
// the trivariate map unless the line is special.
class LineRestriction {
 public:
  LineRestriction(const GroupElement& m, std::uint64_t seed) : f_{modp::kPrefilterPrime}, m_(m) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, f_.p - 1);
    X_ = {{dist(rng), dist(rng)}, {1}};
    Y_ = {{dist(rng), dist(rng)}, {1}};
    Z_ = {dist(rng), dist(rng)};
  }

  // Advances from m^k to m^(k+1); false if the restriction hits a pole.
  bool step() {
    auto X = eval(m_.X), Y = eval(m_.Y);
    if (!X || !Y) return false;
    X_ = std::move(*X);
    Y_ = std::move(*Y);
    return true;
  }

  unsigned numerator_degree() const {
    return unsigned(std::max(X_.num.size(), Y_.num.size()) - 1);
  }

 private:
  struct Fraction {
    modp::Uni num, den;
  };

  std::vector<modp::Uni> powers(const modp::Uni& u, unsigned n) const {
    std::vector<modp::Uni> out{{1}};
    for (unsigned i = 0; i < n; ++i) out.push_back(modp::uni_mul(out.back(), u, f_));
    return out;
  }

  modp::Uni sum_terms(const ZPoly& P, unsigned dx, unsigned dy, const std::vector<modp::Uni>& xn,
                      const std::vector<modp::Uni>& xd, const std::vector<modp::Uni>& yn,
                      const std::vector<modp::Uni>& yd, const std::vector<modp::Uni>& zp) const {
    modp::Uni acc;
    for (const auto& t : P.terms()) {
      const unsigned a = t.mono.ex(), b = t.mono.ey(), e = t.mono.ez();
      modp::Uni term = modp::uni_mul(modp::uni_mul(xn[a], xd[dx - a], f_), modp::uni_mul(yn[b], yd[dy - b], f_), f_);
      term = modp::uni_mul(term, zp[e], f_);
      const std::uint64_t c = modp::reduce(t.coeff, f_.p);
      if (acc.size() < term.size()) acc.resize(term.size(), 0);
      for (std::size_t i = 0; i < term.size(); ++i) acc[i] = f_.add(acc[i], f_.mul(c, term[i]));
    }
    modp::trim(acc);
    return acc;
  }

  std::optional<Fraction> eval(const RatFunc3& h) const {
    const ZPoly &N = h.znum(), &D = h.zden();
    const unsigned dx = std::max(N.degree(Var::X), D.degree(Var::X));
    const unsigned dy = std::max(N.degree(Var::Y), D.degree(Var::Y));
    const unsigned dz = std::max(N.degree(Var::Z), D.degree(Var::Z));
    const auto xn = powers(X_.num, dx), xd = powers(X_.den, dx);
    const auto yn = powers(Y_.num, dy), yd = powers(Y_.den, dy);
    const auto zp = powers(Z_, dz);
    modp::Uni num = sum_terms(N, dx, dy, xn, xd, yn, yd, zp);
    modp::Uni den = sum_terms(D, dx, dy, xn, xd, yn, yd, zp);
    if (den.empty()) return std::nullopt;
    if (num.empty()) return Fraction{{}, {1}};
    const modp::Uni g = modp::uni_gcd(num, den, f_);
    return Fraction{modp::uni_div(std::move(num), g, f_), modp::uni_div(std::move(den), g, f_)};
  }

  modp::Field f_;
  GroupElement m_;
  Fraction X_, Y_;
  modp::Uni Z_;
};

}  // namespace

GroupReport group_orders(StepSet s, int n_max) {
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
  const Kernel ker = kernel_of(s);
  const GroupElement m = delta_substitution(s);
  const std::uint64_t seed = 0x9e3779b97f4a7c15ull ^ s.mask();
  CurveSampler sampler(s, seed);
  LineRestriction line(m, ~seed);

  // starting points whose orbit under m stays finite up to n_max steps
  std::vector<CurvePoint> starts;
  while (starts.size() < 3) {
    CurvePoint p = sampler.next();
    if (iterate(m, p, n_max)) starts.push_back(p);
  }
  std::vector<CurvePoint> cur = starts;

  GroupReport rep;
  rep.n_max = n_max;
  rep.order_W = {false, 2 * n_max};
  rep.order_H = {false, 2 * n_max};
  rep.delta_point_maps.push_back(identity_map());
  bool line_ok = true;
  const RatFunc3 x = RatFunc3::x(), y = RatFunc3::y();

  for (int k = 1; k <= n_max; ++k) {
    for (auto& p : cur) p = *iterate(m, p, 1);
    bool agrees = true;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      agrees = agrees && cur[i].x == starts[i].x && cur[i].y == starts[i].y;
    }
    line_ok = line_ok && line.step();
    if (line_ok && line.numerator_degree() > kDegreeCap) {
      rep.degree_cap_hit = true;
      break;
    }
    if (!agrees) continue;
    // exact powers are only needed once some power agrees with the identity
    while (int(rep.delta_point_maps.size()) <= k) {
      rep.delta_point_maps.push_back(compose_point_maps(m, rep.delta_point_maps.back()));
    }
    const GroupElement& power = rep.delta_point_maps[std::size_t(k)];
    const bool on_curve = is_zero_on_curve(power.X - x, ker.view) && is_zero_on_curve(power.Y - y, ker.view);
    const bool in_plane = power == identity_map();
    if (on_curve && !rep.order_H.finite) rep.order_H = {true, 2 * k};
    if (in_plane) {
      rep.order_W = {true, 2 * k};
      rep.delta_point_maps.resize(std::size_t(k));
      break;
    }
  }
  if (!rep.order_W.finite) rep.delta_point_maps.resize(rep.order_H.finite ? std::size_t(rep.order_H.value / 2) : 1);
  return rep;
}

Poly3 order4_determinant(StepSet s) {
  // rows i = 1, 0, -1; columns j = 1, 0, -1; the middle row carries the factor z
  Poly3 M[3][3];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const int i = 1 - r, j = 1 - c;
      Poly3 entry = (i == 0 && j == 0) ? Poly3(-1L) : Poly3(s.contains(i, j) ? 1L : 0L);
      if (i == 0 && j != 0) entry = entry * pz();
      M[r][c] = entry;
    }
  }
  return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
         M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
         M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

}  // namespace qpw
