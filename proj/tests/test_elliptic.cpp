#include "doctest.h"
#include "qpw/classifier.hpp"
#include "qpw/elliptic.hpp"
#include "qpw/elliptic_report.hpp"
#include "qpw/errors.hpp"

using namespace qpw;

namespace {
const StepSet kKreweras = StepSet::parse("NE,W,S");
const StepSet kGessel = StepSet::parse("E,W,NE,SW");
const StepSet kNSwSe = StepSet::parse("N,SW,SE");

Quartic quartic(long d0, long d1, long d2, long d3, long d4) {
  return {Rational(d0), Rational(d1), Rational(d2), Rational(d3), Rational(d4)};
}

std::vector<StepSet> finite_models() {
  static const std::vector<StepSet> out = [] {
    std::vector<StepSet> r;
    for (StepSet s : census_models()) {
      if (group_orders(s).order_H.finite) r.push_back(s);
    }
    return r;
  }();
  return out;
}

BigFloat quartic_value(const Quartic& d, const BigFloat& x) {
  BigFloat v = 0;
  for (std::size_t i = 5; i-- > 0;) v = v * x + to_bigfloat(d[i]);
  return v;
}

// omega2 and |omega1| of u^2 = (x-r0)(x-r1)(x-r2)(x-r3) by quadrature. The
// substitution x = mid + rad sin t turns each period integral into the mean of
// a smooth 2 pi-periodic function, where the trapezoidal rule converges
// geometrically.
std::pair<BigFloat, BigFloat> quadrature_periods(const std::array<BigFloat, 4>& r) {
  const int N = 512;
  const BigFloat pi = big_pi();
  auto over = [&](const BigFloat& lo, const BigFloat& hi, std::size_t o0, std::size_t o1, bool flip) {
    const BigFloat mid = (lo + hi) / 2, rad = (hi - lo) / 2;
    BigFloat sum = 0;
    for (int j = 0; j < N; ++j) {
      const BigFloat x = mid + rad * sin(2 * pi * j / N);
      BigFloat v = (x - r[o0]) * (x - r[o1]);
      if (flip) v = -v;
      sum += 1 / sqrt(v);
    }
    return BigFloat(pi * sum / N);
  };
  return {over(r[1], r[2], 0, 3, true), over(r[0], r[1], 2, 3, false)};
}
}  // namespace

TEST_CASE("discriminant in x") {
  const Quartic k = discriminant_x(kernel_of(kKreweras), make_rational(1, 6));
  CHECK(k[4] == 0);
  CHECK(k[3] != 0);
  const Quartic toy = discriminant_x(py() * py() - (px().pow(3) + Poly3(1L)), Rational(1));
  CHECK(toy == quartic(4, 0, 0, 4, 0));
  CHECK_THROWS_AS(discriminant_x(kernel_of(kGessel), make_rational(1, 4)), InvalidArgument);
  CHECK_THROWS_AS(discriminant_x(kernel_of(kGessel), Rational(0)), InvalidArgument);
  CHECK_THROWS_AS(discriminant_x(py().pow(3), Rational(1)), InvalidArgument);

  PrecisionGuard guard(kDefaultPrecisionBits);
  for (StepSet s : {kKreweras, kGessel}) {
    const Quartic d = discriminant_x(kernel_of(s), s == kGessel ? make_rational(1, 8) : make_rational(1, 6));
    for (const BigFloat& x : real_roots(d)) CHECK(abs(quartic_value(d, x)) < BigFloat(1e-30));
  }
}

TEST_CASE("genus") {
  for (StepSet s : finite_models()) CHECK(genus_check(discriminant_x(kernel_of(s), default_z0(s))) == 1);
  CHECK(finite_models().size() == 23);
  CHECK(genus_check(quartic(0, 0, 2, -3, 1)) == 0);  // x^2 (x-1)(x-2)
  CHECK(genus_check(quartic(0, -6, 11, -6, 1)) == 1);
  CHECK(genus_check(quartic(0, 0, 0, 4, 0)) == 0);
  CHECK(genus_check(quartic(4, 0, 0, 4, 0)) == 1);
  CHECK(genus_check(quartic(1, 0, 1, 0, 0)) == 0);
}

TEST_CASE("quartic invariants") {
  const Invariants a = quartic_invariants(quartic(0, 0, 0, 4, 0));
  CHECK(a.g2 == 0);
  CHECK(a.g3 == 0);
  const Invariants b = quartic_invariants(quartic(1, 0, 0, 0, 1));
  CHECK(b.g2 == 1);
  CHECK(b.g3 == 0);
  const Invariants u = uniformization_invariants(quartic(1, 0, 0, 0, 1));
  CHECK(u.g2 == 16);
  CHECK(u.g3 == 0);
}

TEST_CASE("real roots") {
  CHECK(real_root_count(quartic(0, -6, 11, -6, 1)) == 4);
  CHECK(real_root_count(quartic(1, 0, 0, 0, 1)) == 0);
  CHECK(real_root_count(quartic(-1, 0, 0, 0, 1)) == 2);
  PrecisionGuard guard(kDefaultPrecisionBits);
  const auto r = real_roots(quartic(0, -6, 11, -6, 1));
  REQUIRE(r.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(abs(r[std::size_t(i)] - i) < BigFloat(1e-35));
  CHECK_THROWS_AS(real_roots(quartic(1, 0, 0, 0, 1)), ComplexBranchPoints);
  CHECK_THROWS_AS(real_roots(quartic(0, 0, 2, -3, 1)), ComplexBranchPoints);
  CHECK_THROWS_AS(periods(quartic(1, 0, 0, 0, 1)), ComplexBranchPoints);
}

TEST_CASE("periods against quadrature and scaling") {
  PrecisionGuard guard(kDefaultPrecisionBits);
  const Lattice L = periods(quartic(0, -6, 11, -6, 1));
  const auto [p, q] = quadrature_periods({BigFloat(0), BigFloat(1), BigFloat(2), BigFloat(3)});
  CHECK(abs(L.real_period() - p) < BigFloat(1e-20));
  CHECK(abs(L.imag_period() - q) < BigFloat(1e-20));
  // roots scaled by 2: (x)(x-2)(x-4)(x-6)
  const Lattice S = periods(quartic(0, -48, 44, -12, 1));
  CHECK(abs(S.real_period() - L.real_period() / 2) < BigFloat(1e-30));
  CHECK(abs(S.imag_period() - L.imag_period() / 2) < BigFloat(1e-30));
  const BigComplex w(BigFloat(L.real_period() * 3 / 10));
  CHECK(abs(wp_eval(w + L.omega_imag(), L) - wp_eval(w, L)) < BigFloat(1e-20));
  CHECK(abs(wp_eval(w + L.omega_real(), L) - wp_eval(w, L)) < BigFloat(1e-20));
}

TEST_CASE("Weierstrass functions") {
  PrecisionGuard guard(kDefaultPrecisionBits);
  const Invariants g = uniformization_invariants(quartic(0, -6, 11, -6, 1));
  const Lattice L = periods_from_invariants(g);
  const BigComplex g2(to_bigfloat(g.g2)), g3(to_bigfloat(g.g3));
  const BigComplex ipi(BigFloat(0), big_pi());
  for (const auto& [s, t] : std::vector<std::pair<int, int>>{{13, 27}, {71, 9}, {44, 83}, {3, 61}, {88, 38}}) {
    const BigComplex w(BigFloat(L.real_period() * s / 100), BigFloat(L.imag_period() * t / 100));
    const Lattice::Values v = L.eval(w);
    CHECK(abs(v.wp_prime * v.wp_prime - (BigComplex(4L) * pow(v.wp, 3) - g2 * v.wp - g3)) < BigFloat(1e-20));
    CHECK(abs(wp_eval(-w, L) - v.wp) < BigFloat(1e-25));
    CHECK(abs(zeta_eval(-w, L) + v.zeta) < BigFloat(1e-25));
    CHECK(abs(zeta_eval(w + L.omega_imag(), L) - v.zeta - BigComplex(2L) * L.eta_imag()) < BigFloat(1e-20));
    const BigComplex h(big_pow2(-45));
    const BigComplex fd = (zeta_eval(w + h, L) - zeta_eval(w - h, L)) / (BigComplex(2L) * h);
    CHECK(abs(fd + v.wp) < BigFloat(1e-20));
    const BigComplex fd2 = (wp_eval(w + h, L) - wp_eval(w - h, L)) / (BigComplex(2L) * h);
    CHECK(abs(fd2 - v.wp_prime) < BigFloat(1e-18));
  }
  const BigComplex legendre = L.eta_imag() * L.omega_real() - L.eta_real() * L.omega_imag();
  CHECK(abs(legendre + ipi) < BigFloat(1e-30));
  CHECK_THROWS_AS(wp_eval(BigComplex(), L), PoleAtLatticePoint);
  CHECK_THROWS_AS(zeta_eval(L.omega_real() + L.omega_imag(), L), PoleAtLatticePoint);
  // half periods are the roots of 4t^3 - g2 t - g3
  const BigComplex e1 = wp_eval(BigComplex(BigFloat(L.real_period() / 2)), L);
  CHECK(abs(BigComplex(4L) * pow(e1, 3) - g2 * e1 - g3) < BigFloat(1e-25));
}

TEST_CASE("precision guard") {
  const unsigned before = BigFloat::default_precision();
  {
    PrecisionGuard guard(256);
    CHECK(BigFloat::default_precision() > before);
    BigFloat x = 1;
    CHECK(mpfr_get_prec(x.backend().data()) >= 256);
  }
  CHECK(BigFloat::default_precision() == before);
}

TEST_CASE("uniformization of every finite-group model") {
  for (StepSet s : finite_models()) {
    const EllipticData d = elliptic_data(s, default_z0(s));
    PrecisionGuard guard(d.precision_bits);
    CHECK(d.infinite_branch_point == (d.d[4] == 0));
    CHECK(d.branch_points.size() == (d.infinite_branch_point ? 3u : 4u));
    for (const BigComplex& w : sample_points(d, 20, 11)) CHECK(abs(kernel_residual(d, w)) < BigFloat(1e-20));
    // at a half period the quadratic in y has a double root
    int tangencies = 0;
    const BigFloat P = d.lattice.real_period(), Q = d.lattice.imag_period();
    for (const BigComplex& half : {BigComplex(BigFloat(P / 2)), BigComplex(BigFloat(0), BigFloat(Q / 2)),
                                   BigComplex(BigFloat(P / 2), BigFloat(Q / 2))}) {
      CurvePoint p;
      try {
        p = uniformize(d, half);
      } catch (const PoleOfUniformization&) {
        continue;
      }
      ++tangencies;
      CHECK(abs(p.u) < BigFloat(1e-20));
      const BigComplex a = BigComplex(to_bigfloat(d.a[2])) * p.x * p.x + BigComplex(to_bigfloat(d.a[1])) * p.x +
                           BigComplex(to_bigfloat(d.a[0]));
      const BigComplex b = BigComplex(to_bigfloat(d.b[2])) * p.x * p.x + BigComplex(to_bigfloat(d.b[1])) * p.x +
                           BigComplex(to_bigfloat(d.b[0]));
      CHECK(abs(BigComplex(2L) * a * p.y + b) < BigFloat(1e-20));
    }
    CHECK(tangencies >= 2);
  }
}

TEST_CASE("case with three finite branch points") {
  const EllipticData d = elliptic_data(kKreweras, make_rational(1, 6));
  PrecisionGuard guard(d.precision_bits);
  REQUIRE(d.infinite_branch_point);
  const BigComplex w(BigFloat(d.lattice.real_period() / 3), BigFloat(d.lattice.imag_period() / 7));
  const BigComplex expected = (wp_eval(w, d.lattice) - BigComplex(to_bigfloat(d.d[2] / 3))) / BigComplex(to_bigfloat(d.d[3]));
  CHECK(abs(uniformize(d, w).x - expected) < BigFloat(1e-30));
  CHECK_THROWS_AS(uniformize(d, BigComplex()), PoleAtLatticePoint);
}

TEST_CASE("pole of the four-branch-point glue") {
  const EllipticData d = elliptic_data(kGessel, make_rational(1, 8));
  PrecisionGuard guard(d.precision_bits);
  REQUIRE_FALSE(d.infinite_branch_point);
  const BigComplex target(d.glue.a);  // wp(w) = beta sends x to infinity
  BigComplex best;
  BigFloat best_dist = -1;
  for (int s = 1; s < 40; ++s) {
    for (int t = 1; t < 40; ++t) {
      const BigComplex w(BigFloat(d.lattice.real_period() * s / 40), BigFloat(d.lattice.imag_period() * t / 40));
      const BigFloat dist = abs(wp_eval(w, d.lattice) - target);
      if (best_dist < 0 || dist < best_dist) {
        best_dist = dist;
        best = w;
      }
    }
  }
  for (int it = 0; it < 80; ++it) {
    const Lattice::Values v = d.lattice.eval(best);
    best -= (v.wp - target) / v.wp_prime;
  }
  CHECK_THROWS_AS(uniformize(d, best), PoleOfUniformization);
}

TEST_CASE("translation by omega3") {
  EllipticData g = elliptic_data(kGessel, make_rational(1, 8));
  const Omega3 og = omega3_of(g, group_orders(kGessel));
  CHECK(og.n == 4);
  CHECK((og.k == 1 || og.k == 3));
  CHECK(og.rationality_residual < BigFloat(1e-10));
  EllipticData k = elliptic_data(kKreweras, default_z0(kKreweras));
  const Omega3 ok = omega3_of(k, group_orders(kKreweras));
  PrecisionGuard guard(k.precision_bits);
  CHECK(ok.n == 3);
  CHECK(abs(BigFloat(3 * ok.omega3 - ok.k * k.lattice.real_period())) < BigFloat(1e-10));
  CHECK(ok.omega3 > 0);
  CHECK(ok.omega3 < k.lattice.real_period());
  for (const BigComplex& w : sample_points(k, 10, 3)) {
    const CurvePoint p = uniformize(k, w);
    const CurvePoint q = uniformize(k, w + BigComplex(BigFloat(3 * ok.omega3)));
    CHECK(abs(p.x - q.x) + abs(p.y - q.y) < BigFloat(1e-15));
    const auto [mx, my] = delta_image(k, p);
    const CurvePoint t = uniformize(k, w + BigComplex(ok.omega3));
    CHECK(abs(t.x - mx) + abs(t.y - my) < BigFloat(1e-15));
  }
  const StepSet infinite = StepSet::parse("N,S,E,NW");
  EllipticData inf = elliptic_data(infinite, default_z0(infinite));
  CHECK_THROWS_AS(omega3_of(inf, group_orders(infinite)), InfiniteGroup);
  CHECK_THROWS_AS(lattice13(inf), InvalidArgument);
}

TEST_CASE("Phi tilde identities") {
  EllipticData d = elliptic_data(kNSwSe, default_z0(kNSwSe));
  omega3_of(d, group_orders(kNSwSe));
  PrecisionGuard guard(d.precision_bits);
  const Lattice L13 = lattice13(d);
  const BigComplex half(BigFloat(d.lattice.real_period() / 2));
  for (const BigComplex& w : sample_points(d, 5, 9)) {
    const BigComplex f = phi_tilde(w, d, L13);
    CHECK(abs(phi_tilde(w + d.omega1(), d, L13) - f) < BigFloat(1e-20));
    const BigComplex inc = phi_tilde(w + BigComplex(*d.omega3), d, L13) - f;
    CHECK(abs(abs(inc) - 1) < BigFloat(1e-20));
    CHECK(abs(inc - BigComplex(long(kPhiIncrementSign))) < BigFloat(1e-20));
    CHECK(abs(phi_tilde(half + w, d, L13) + phi_tilde(half - w, d, L13)) < BigFloat(1e-20));
  }
  const BigComplex legendre = L13.eta_imag() * BigComplex(*d.omega3) - L13.eta_real() * d.omega1();
  CHECK(abs(legendre - BigComplex(long(kLegendreSign)) * BigComplex(BigFloat(0), big_pi())) < BigFloat(1e-20));
  CHECK(abs(phi_tilde(BigComplex(BigFloat(1) / 3), d) - phi_tilde(BigComplex(BigFloat(1) / 3), d, L13)) <
        BigFloat(1e-30));
}

TEST_CASE("w2 on the named models") {
  for (StepSet s : {kGessel, kKreweras, kNSwSe}) {
    EllipticData d = elliptic_data(s, default_z0(s));
    omega3_of(d, group_orders(s));
    PrecisionGuard guard(d.precision_bits);
    const RatFunc3 orbit = orbit_data(s).main.orbit_sum_raw;
    for (const BigComplex& w : sample_points(d, 10, 5)) {
      const BigFloat v = abs(w2_eval(d, orbit, w));
      if (s == kNSwSe) {
        CHECK(v > BigFloat(1e-10));
      } else {
        CHECK(v < BigFloat(1e-20));
      }
    }
  }
}

TEST_CASE("derivative identity") {
  for (StepSet s : finite_models()) {
    if (group_orders(s).order_H.value != 6) continue;
    EllipticData d = elliptic_data(s, default_z0(s));
    omega3_of(d, group_orders(s));
    PrecisionGuard guard(d.precision_bits);
    const auto samples = sample_points(d, 10, 21);
    const BigFloat h = BigFloat(1) / 100000000;
    const HolonomyCheck a = holonomy_derivative_check(d, samples, h);
    const HolonomyCheck b = holonomy_derivative_check(d, samples, BigFloat(h / 2));
    CHECK(a.max_relative_error < BigFloat(1e-6));
    REQUIRE(a.errors.size() == 10);
    for (std::size_t i = 0; i < a.errors.size(); ++i) {
      const BigFloat ratio = a.errors[i] / b.errors[i];
      CHECK(ratio > 3.5);
      CHECK(ratio < 4.5);
    }
    const BigComplex branch(BigFloat(d.lattice.real_period() / 2));
    CHECK_THROWS_AS(holonomy_derivative_check(d, {branch}, h), SampleAtSingularity);
  }
}

TEST_CASE("suite on the named models") {
  const EllipticReport g = elliptic_suite(kGessel, make_rational(1, 8));
  CHECK(g.passed());
  REQUIRE(g.translation.has_value());
  CHECK(std::gcd(g.translation->k, 4) == 1);
  const nlohmann::json j = to_json(g);
  for (const char* key : {"z0", "d", "branch_points", "g2", "g3", "omega1", "omega2", "omega3", "n", "k", "residuals"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["z0"] == "1/8");
  CHECK(j["omega2"].is_string());
  CHECK(j["residuals"]["kernel_residual"]["passed"] == true);
  CHECK(j["residuals"].contains("w2_vanishing"));
  CHECK(to_json(g).dump() == j.dump());

  const EllipticReport v = elliptic_suite(kNSwSe, default_z0(kNSwSe));
  CHECK(v.passed());
  CHECK(v.find("w2_nonvanishing") != nullptr);

  // 64 bits cannot meet the 1e-20 budget, so the suite doubles once
  const EllipticReport low = elliptic_suite(kKreweras, default_z0(kKreweras), 64);
  CHECK(low.precision_attempts == std::vector<unsigned>{64, 128});
  CHECK(low.passed());
  SuiteOptions fixed;
  fixed.adaptive_precision = false;
  const EllipticReport stuck = elliptic_suite(kKreweras, default_z0(kKreweras), 64, fixed);
  CHECK(stuck.precision_attempts == std::vector<unsigned>{64});
  CHECK_FALSE(stuck.passed());

  const StepSet infinite = StepSet::parse("N,S,E,NW");
  const EllipticReport inf = elliptic_suite(infinite, default_z0(infinite));
  CHECK(inf.passed());
  CHECK_FALSE(inf.translation.has_value());
  CHECK(inf.find("rationality") == nullptr);
}
