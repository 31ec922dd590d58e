#include "modular.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "modp.hpp"

namespace qpw::modular {

namespace {

using modp::Field;
using u64 = std::uint64_t;

// Exponents packed so that integer order is lex order on positions 0, 1, 2.
constexpr int kShift[3] = {42, 21, 0};
constexpr u64 kMask = (u64(1) << 21) - 1;
inline unsigned exp_at(u64 key, int i) { return unsigned((key >> kShift[i]) & kMask); }
inline u64 pack(unsigned e0, unsigned e1, unsigned e2) {
  return (u64(e0) << kShift[0]) | (u64(e1) << kShift[1]) | u64(e2);
}
inline u64 without(u64 key, int i) { return key & ~(kMask << kShift[i]); }
inline u64 single(int i, unsigned e) { return u64(e) << kShift[i]; }

struct Term {
  u64 key;
  u64 c;
};
using MP = std::vector<Term>;  // strictly decreasing keys, nonzero coefficients
using modp::Uni;
using modp::trim;
using modp::uni_div;
using modp::uni_eval;
using modp::uni_gcd;
using modp::uni_monic;
using modp::uni_mul;

void sort_desc(MP& a) {
  std::sort(a.begin(), a.end(), [](const Term& s, const Term& t) { return s.key > t.key; });
}

void normalize(MP& a, const Field& f) {
  std::sort(a.begin(), a.end(), [](const Term& s, const Term& t) { return s.key > t.key; });
  MP out;
  out.reserve(a.size());
  for (const auto& t : a) {
    if (!out.empty() && out.back().key == t.key) {
      out.back().c = f.add(out.back().c, t.c);
    } else {
      if (!out.empty() && out.back().c == 0) out.pop_back();
      out.push_back(t);
    }
  }
  if (!out.empty() && out.back().c == 0) out.pop_back();
  a.swap(out);
}

// Groups terms by the exponents of positions before k; since k is the last
// active position, each group is a contiguous run.
struct Group {
  u64 rest;  // key with position k cleared
  Uni u;     // univariate in position k
};

std::vector<Group> groups_in(const MP& a, int k) {
  std::vector<Group> out;
  for (const auto& t : a) {
    const u64 rest = without(t.key, k);
    if (out.empty() || out.back().rest != rest) out.push_back({rest, {}});
    auto& u = out.back().u;
    const unsigned e = exp_at(t.key, k);
    if (u.size() <= e) u.resize(e + 1, 0);
    u[e] = t.c;
  }
  return out;
}

MP from_groups(const std::vector<Group>& gs, int k) {
  MP out;
  for (const auto& g : gs) {
    for (std::size_t e = g.u.size(); e-- > 0;) {
      if (g.u[e]) out.push_back({g.rest | single(k, unsigned(e)), g.u[e]});
    }
  }
  return out;
}

MP eval_last(const MP& a, int k, u64 x, const Field& f) {
  std::vector<u64> powers{1};
  MP out;
  out.reserve(a.size());
  for (const auto& t : a) {
    const unsigned e = exp_at(t.key, k);
    while (powers.size() <= e) powers.push_back(f.mul(powers.back(), x));
    const u64 c = f.mul(t.c, powers[e]);
    if (c) out.push_back({without(t.key, k), c});
  }
  normalize(out, f);
  return out;
}

MP monic(MP a, const Field& f) {
  if (a.empty()) return a;
  const u64 s = f.inv(a.front().c);
  for (auto& t : a) t.c = f.mul(t.c, s);
  return a;
}

MP scale(MP a, u64 s, const Field& f) {
  for (auto& t : a) t.c = f.mul(t.c, s);
  return a;
}

unsigned degree_at(const MP& a, int k) {
  unsigned d = 0;
  for (const auto& t : a) d = std::max(d, exp_at(t.key, k));
  return d;
}

MP gcd_p(const MP& a, const MP& b, int k, const Field& f, u64& point);

// a and b nonzero; active positions are 0..k. Result is monic in lex order.
MP gcd_p(const MP& a, const MP& b, int k, const Field& f, u64& point) {
  if (k == 0) {
    Uni ua, ub;
    for (const auto& t : a) {
      const unsigned e = exp_at(t.key, 0);
      if (ua.size() <= e) ua.resize(e + 1, 0);
      ua[e] = t.c;
    }
    for (const auto& t : b) {
      const unsigned e = exp_at(t.key, 0);
      if (ub.size() <= e) ub.resize(e + 1, 0);
      ub[e] = t.c;
    }
    Uni g = uni_gcd(std::move(ua), std::move(ub), f);
    MP out;
    for (std::size_t e = g.size(); e-- > 0;) {
      if (g[e]) out.push_back({single(0, unsigned(e)), g[e]});
    }
    return out;
  }

  auto ga = groups_in(a, k), gb = groups_in(b, k);
  auto content_of = [&](const std::vector<Group>& gs) {
    Uni c = gs.front().u;
    trim(c);
    c = uni_monic(std::move(c), f);
    for (std::size_t i = 1; i < gs.size() && c.size() > 1; ++i) c = uni_gcd(c, gs[i].u, f);
    return c;
  };
  const Uni ca = content_of(ga), cb = content_of(gb);
  const Uni c = uni_gcd(ca, cb, f);
  if (ca.size() > 1) {
    for (auto& g : ga) g.u = uni_div(g.u, ca, f);
  }
  if (cb.size() > 1) {
    for (auto& g : gb) g.u = uni_div(g.u, cb, f);
  }
  const MP pa = from_groups(ga, k), pb = from_groups(gb, k);
  auto with_content = [&](MP g) {
    // g times the univariate content c in position k
    if (c.size() <= 1) return monic(std::move(g), f);
    auto gs = groups_in(g, k);
    for (auto& gr : gs) gr.u = uni_mul(gr.u, c, f);
    return monic(from_groups(gs, k), f);
  };

  const Uni& la = ga.front().u;
  const Uni& lb = gb.front().u;
  const Uni gamma = uni_gcd(la, lb, f);
  const unsigned bound =
      unsigned(gamma.size() - 1) + std::min(degree_at(pa, k), degree_at(pb, k));

  // Newton interpolation state: per-group univariate values and the modulus
  std::map<u64, Uni, std::greater<>> interp;
  Uni modulus{1};
  u64 current_lm = 0;
  bool have = false;
  unsigned npoints = 0;
  for (unsigned attempts = 0; attempts < 4 * bound + 64; ++attempts) {
    const u64 x = point++ % f.p;
    if (uni_eval(la, x, f) == 0 || uni_eval(lb, x, f) == 0) continue;
    MP g = gcd_p(eval_last(pa, k, x, f), eval_last(pb, k, x, f), k - 1, f, point);
    const u64 lm = g.front().key;
    if (lm == 0) return with_content(MP{{0, 1}});
    if (have && lm > current_lm) continue;
    if (!have || lm < current_lm) {
      interp.clear();
      modulus = {1};
      npoints = 0;
      current_lm = lm;
      have = true;
    }
    g = scale(std::move(g), uni_eval(gamma, x, f), f);
    const u64 minv = f.inv(uni_eval(modulus, x, f));
    auto add_correction = [&](u64 rest, u64 target) {
      Uni& u = interp[rest];
      const u64 delta = f.mul(f.sub(target, uni_eval(u, x, f)), minv);
      if (!delta) return;
      if (u.size() < modulus.size()) u.resize(modulus.size(), 0);
      for (std::size_t i = 0; i < modulus.size(); ++i) u[i] = f.add(u[i], f.mul(delta, modulus[i]));
      trim(u);
    };
    std::size_t gi = 0;
    std::vector<u64> keys;
    keys.reserve(interp.size() + g.size());
    for (const auto& [rest, u] : interp) keys.push_back(rest);
    for (const auto& t : g) keys.push_back(t.key);
    std::sort(keys.begin(), keys.end(), std::greater<>());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (u64 rest : keys) {
      while (gi < g.size() && g[gi].key > rest) ++gi;
      const u64 target = (gi < g.size() && g[gi].key == rest) ? g[gi].c : 0;
      add_correction(rest, target);
    }
    modulus = uni_mul(modulus, Uni{f.neg(x), 1}, f);
    if (++npoints > bound) {
      std::vector<Group> gs;
      for (auto& [rest, u] : interp) {
        if (!u.empty()) gs.push_back({rest, u});
      }
      // remove the content in position k introduced by the gamma scaling
      Uni cont = uni_monic(gs.front().u, f);
      for (std::size_t i = 1; i < gs.size() && cont.size() > 1; ++i) cont = uni_gcd(cont, gs[i].u, f);
      if (cont.size() > 1) {
        for (auto& gr : gs) gr.u = uni_div(gr.u, cont, f);
      }
      return with_content(from_groups(gs, k));
    }
  }
  throw std::runtime_error("modular gcd: too many unlucky evaluation points");
}

const std::vector<u64>& primes() {
  static const std::vector<u64> list = [] {
    std::vector<u64> out;
    mpz_class n = (mpz_class(1) << 62) - 1;
    while (out.size() < 256) {
      if (mpz_probab_prime_p(n.get_mpz_t(), 30)) out.push_back(n.get_ui());
      n -= 2;
    }
    return out;
  }();
  return list;
}

struct Layout {
  std::array<Var, 3> vars{};
  int count = 0;
};

MP reduce(const ZPoly& a, const Layout& lay, const Field& f) {
  MP out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) {
    const u64 c = mpz_fdiv_ui(t.coeff.get_mpz_t(), f.p);
    if (!c) continue;
    unsigned e[3] = {0, 0, 0};
    for (int i = 0; i < lay.count; ++i) e[i] = t.mono.exp(lay.vars[std::size_t(i)]);
    out.push_back({pack(e[0], e[1], e[2]), c});
  }
  sort_desc(out);
  return out;
}

Monomial unpack(u64 key, const Layout& lay) {
  unsigned e[3] = {0, 0, 0};
  for (int i = 0; i < lay.count; ++i) e[static_cast<unsigned>(lay.vars[std::size_t(i)])] = exp_at(key, i);
  return {e[0], e[1], e[2]};
}

}  // namespace

GcdWithCofactors gcd_primitive(const ZPoly& a, const ZPoly& b) {
  Layout lay;
  for (Var v : {Var::X, Var::Y, Var::Z}) {
    if (a.depends_on(v) || b.depends_on(v)) lay.vars[std::size_t(lay.count++)] = v;
  }
  const int k = lay.count - 1;
  const Integer lca = lex_leading(a).coeff, lcb = lex_leading(b).coeff;
  const Integer gamma = gcd(lca, lcb);

  std::map<u64, Integer, std::greater<>> residues;
  Integer modulus = 0;
  u64 current_lm = 0;
  ZPoly previous;
  bool have_previous = false;
  u64 point = 1;
  for (u64 p : primes()) {
    const Field f{p};
    if (mpz_fdiv_ui(lca.get_mpz_t(), p) == 0 || mpz_fdiv_ui(lcb.get_mpz_t(), p) == 0) continue;
    MP g = gcd_p(reduce(a, lay, f), reduce(b, lay, f), k, f, point);
    const u64 lm = g.front().key;
    if (lm == 0) return {ZPoly(Integer(1)), a, b};
    if (modulus != 0 && lm > current_lm) continue;
    if (modulus == 0 || lm < current_lm) {
      residues.clear();
      modulus = 0;
      have_previous = false;
      current_lm = lm;
    }
    g = scale(std::move(g), mpz_fdiv_ui(gamma.get_mpz_t(), p), f);
    if (modulus == 0) {
      for (const auto& t : g) residues[t.key] = Integer(static_cast<unsigned long>(t.c));
      modulus = Integer(static_cast<unsigned long>(p));
    } else {
      const u64 minv = f.inv(mpz_fdiv_ui(modulus.get_mpz_t(), p));
      std::size_t gi = 0;
      for (const auto& t : g) residues.try_emplace(t.key, 0);
      for (auto& [key, r] : residues) {
        while (gi < g.size() && g[gi].key > key) ++gi;
        const u64 target = (gi < g.size() && g[gi].key == key) ? g[gi].c : 0;
        const u64 cur = mpz_fdiv_ui(r.get_mpz_t(), p);
        const u64 h = f.mul(f.sub(target, cur), minv);
        r += modulus * Integer(static_cast<unsigned long>(h));
      }
      modulus *= Integer(static_cast<unsigned long>(p));
    }
    const Integer half = modulus / 2;
    std::vector<ZPoly::Term> terms;
    for (const auto& [key, r] : residues) {
      if (sgn(r) == 0) continue;
      terms.push_back({unpack(key, lay), r > half ? Integer(r - modulus) : r});
    }
    ZPoly h = primitive_part(ZPoly::from_terms(std::move(terms)));
    if (have_previous && h == previous) {
      auto qa = exact_quotient(a, h);
      if (qa) {
        auto qb = exact_quotient(b, h);
        if (qb) return {h, std::move(*qa), std::move(*qb)};
      }
      residues.clear();
      modulus = 0;
      have_previous = false;
      continue;
    }
    previous = std::move(h);
    have_previous = true;
  }
  throw std::runtime_error("modular gcd: prime list exhausted");
}

}  // namespace qpw::modular
