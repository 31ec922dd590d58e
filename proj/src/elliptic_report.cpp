#include "qpw/elliptic_report.hpp"

#include <algorithm>
#include <numeric>

#include "qpw/errors.hpp"

namespace qpw {

namespace {

namespace bm = boost::multiprecision;

ResidualCheck upper(std::string name, BigFloat value, BigFloat tol, bool sensitive = true) {
  ResidualCheck c{std::move(name), std::move(value), std::move(tol), false, sensitive, false};
  c.passed = c.value < c.tolerance;
  return c;
}

ResidualCheck lower(std::string name, BigFloat value, BigFloat tol) {
  ResidualCheck c{std::move(name), std::move(value), std::move(tol), true, false, false};
  c.passed = c.value > c.tolerance;
  return c;
}

BigFloat tol(double v) { return BigFloat(v); }

BigFloat point_distance(const CurvePoint& a, const BigComplex& x, const BigComplex& y) {
  return abs(a.x - x) + abs(a.y - y);
}

EllipticReport run_once(StepSet s, const Rational& z0, unsigned bits, const SuiteOptions& options,
                        const Classification& cls) {
  PrecisionGuard guard(bits);
  EllipticReport r;
  r.steps = s;
  r.z0 = z0;
  r.nature = cls.record.nature;
  r.data = elliptic_data(s, z0, bits);
  EllipticData& d = r.data;
  const Lattice& L = d.lattice;
  const BigComplex w1 = d.omega1(), w2 = d.omega2();
  const BigComplex ipi(BigFloat(0), big_pi());
  auto& checks = r.checks;

  BigFloat branch = 0;
  std::vector<BigFloat> coeffs;
  for (const Rational& c : d.d) coeffs.push_back(to_bigfloat(c));
  for (const BigFloat& x : d.branch_points) {
    BigFloat v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    branch = std::max(branch, BigFloat(bm::abs(v)));
  }
  checks.push_back(upper("branch_point_residual", branch, tol(1e-20)));

  const auto samples = sample_points(d, options.kernel_samples, options.seed);
  const BigComplex g2(to_bigfloat(d.invariants.g2)), g3(to_bigfloat(d.invariants.g3));
  BigFloat kernel = 0, ode = 0, period = 0, parity = 0, quasi = 0, deriv = 0;
  const BigComplex h(big_pow2(-long(bits) / 3));
  for (const BigComplex& w : samples) {
    kernel = std::max(kernel, abs(kernel_residual(d, w)));
    const Lattice::Values v = L.eval(w);
    ode = std::max(ode, abs(v.wp_prime * v.wp_prime - (BigComplex(4L) * v.wp * v.wp * v.wp - g2 * v.wp - g3)));
    period = std::max({period, abs(L.eval(w + w1).wp - v.wp), abs(L.eval(w + w2).wp - v.wp)});
    parity = std::max(parity, abs(L.eval(-w).wp - v.wp));
    quasi = std::max({quasi, abs(L.eval(w + w1).zeta - v.zeta - BigComplex(2L) * L.eta_imag()),
                      abs(L.eval(w + w2).zeta - v.zeta - BigComplex(2L) * L.eta_real())});
    const BigComplex fd = (L.eval(w + h).zeta - L.eval(w - h).zeta) / (BigComplex(2L) * h);
    deriv = std::max(deriv, abs(fd + v.wp));
  }
  checks.push_back(upper("kernel_residual", kernel, tol(1e-20)));
  checks.push_back(upper("wp_ode_residual", ode, tol(1e-20)));
  checks.push_back(upper("wp_periodicity", period, tol(1e-20)));
  checks.push_back(upper("wp_parity", parity, tol(1e-20)));
  checks.push_back(upper("zeta_quasi_periodicity", quasi, tol(1e-20)));
  checks.push_back(upper("zeta_derivative", deriv, tol(1e-20)));
  const BigComplex legendre12 = L.eta_imag() * w2 - L.eta_real() * w1 - BigComplex(long(kLegendreSign)) * ipi;
  checks.push_back(upper("legendre_12", abs(legendre12), tol(1e-20)));

  if (!cls.record.order_H.finite) return r;

  r.translation = omega3_of(d, cls.group);
  const Omega3& o = *r.translation;
  const BigComplex w3(o.omega3);
  checks.push_back(upper("rationality", o.rationality_residual, tol(1e-10)));
  checks.push_back(upper("gcd_k_n", BigFloat(std::gcd(o.k, o.n)), tol(1.5), false));

  const Lattice L13 = lattice13(d);
  const BigComplex legendre13 = L13.eta_imag() * w3 - L13.eta_real() * w1 - BigComplex(long(kLegendreSign)) * ipi;
  checks.push_back(upper("legendre_13", abs(legendre13), tol(1e-20)));

  const auto tsamples = sample_points(d, options.translation_samples, options.seed + 1);
  BigFloat transl = 0, nfold = 0, phi_w1 = 0, phi_w3 = 0, phi_odd = 0;
  const BigComplex half2(BigFloat(L.real_period() / 2));
  for (const BigComplex& w : tsamples) {
    const CurvePoint p = uniformize(d, w);
    const auto [mx, my] = delta_image(d, p);
    transl = std::max(transl, point_distance(uniformize(d, w + w3), mx, my));
    nfold = std::max(nfold, point_distance(uniformize(d, w + BigComplex(long(o.n)) * w3), p.x, p.y));
    const BigComplex f = phi_tilde(w, d, L13);
    phi_w1 = std::max(phi_w1, abs(phi_tilde(w + w1, d, L13) - f));
    const BigComplex inc = phi_tilde(w + w3, d, L13) - f - BigComplex(long(kPhiIncrementSign));
    phi_w3 = std::max(phi_w3, abs(inc));
    const BigComplex off = w - half2;
    phi_odd = std::max(phi_odd, abs(phi_tilde(half2 + off, d, L13) + phi_tilde(half2 - off, d, L13)));
  }
  checks.push_back(upper("translation", transl, tol(1e-15)));
  checks.push_back(upper("translation_n_fold", nfold, tol(1e-15)));
  checks.push_back(upper("phi_period_omega1", phi_w1, tol(1e-20)));
  checks.push_back(upper("phi_increment_omega3", phi_w3, tol(1e-20)));
  checks.push_back(upper("phi_odd_symmetry", phi_odd, tol(1e-20)));

  const auto hsamples = sample_points(d, options.holonomy_samples, options.seed + 2);
  const BigFloat step = BigFloat(1) / BigFloat(100000000);
  const HolonomyCheck h1 = holonomy_derivative_check(d, hsamples, step);
  const HolonomyCheck h2 = holonomy_derivative_check(d, hsamples, BigFloat(step / 2));
  checks.push_back(upper("holonomy_relative_error", h1.max_relative_error, tol(1e-6)));
  BigFloat worst = 0;
  for (std::size_t i = 0; i < h1.errors.size(); ++i) {
    worst = std::max(worst, BigFloat(bm::abs(h1.errors[i] / h2.errors[i] - 4)));
  }
  checks.push_back(upper("holonomy_step_halving", worst, tol(0.5)));

  const RatFunc3& orbit = cls.orbit->main.orbit_sum_raw;
  const auto wsamples = sample_points(d, options.w2_samples, options.seed + 3);
  BigFloat wmax = 0, wmin = -1;
  for (const BigComplex& w : wsamples) {
    const BigFloat a = abs(w2_eval(d, orbit, w));
    wmax = std::max(wmax, a);
    wmin = wmin < 0 ? a : std::min(wmin, a);
  }
  if (cls.record.nature == Nature::Algebraic) {
    checks.push_back(upper("w2_vanishing", wmax, tol(1e-20)));
  } else {
    checks.push_back(lower("w2_nonvanishing", wmin, tol(1e-10)));
  }
  return r;
}

bool needs_more_precision(const EllipticReport& r) {
  for (const ResidualCheck& c : r.checks) {
    if (c.precision_sensitive && !c.lower_bound && c.value > c.tolerance / 2) return true;
  }
  return false;
}

}  // namespace

bool EllipticReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ResidualCheck& c) { return c.passed; });
}

const ResidualCheck* EllipticReport::find(const std::string& name) const {
  for (const ResidualCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

EllipticReport elliptic_suite(StepSet s, const Rational& z0, unsigned precision_bits, const SuiteOptions& options) {
  if (precision_bits < 64) throw InvalidArgument("precision below 64 bits");
  const Classification cls = classify_full(s);
  std::vector<unsigned> attempts;
  unsigned bits = precision_bits;
  while (true) {
    attempts.push_back(bits);
    EllipticReport r = run_once(s, z0, bits, options, cls);
    if (!options.adaptive_precision || !needs_more_precision(r) || 2 * bits > options.max_precision_bits) {
      r.precision_attempts = attempts;
      return r;
    }
    bits *= 2;
  }
}

nlohmann::json to_json(const EllipticReport& r) {
  PrecisionGuard guard(r.precision_bits());
  const EllipticData& d = r.data;
  nlohmann::json j;
  j["steps"] = r.steps.to_string();
  j["mask"] = int(r.steps.mask());
  j["z0"] = r.z0.get_str();
  j["precision_bits"] = r.precision_bits();
  j["precision_attempts"] = r.precision_attempts;
  j["nature"] = to_string(r.nature);
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Rational& c : d.d) coeffs.push_back(c.get_str());
  j["d"] = coeffs;
  nlohmann::json roots = nlohmann::json::array();
  for (const BigFloat& x : d.branch_points) roots.push_back(to_decimal(x));
  j["branch_points"] = roots;
  j["infinite_branch_point"] = d.infinite_branch_point;
  j["g2"] = d.invariants.g2.get_str();
  j["g3"] = d.invariants.g3.get_str();
  j["glue"] = {to_decimal(d.glue.a), to_decimal(d.glue.b), to_decimal(d.glue.c), to_decimal(d.glue.d)};
  j["omega1"] = {{"re", to_decimal(BigFloat(0))}, {"im", to_decimal(d.lattice.imag_period())}};
  j["omega2"] = to_decimal(d.lattice.real_period());
  if (r.translation) {
    j["omega3"] = to_decimal(r.translation->omega3);
    j["n"] = r.translation->n;
    j["k"] = r.translation->k;
  } else {
    j["omega3"] = nullptr;
    j["n"] = nullptr;
    j["k"] = nullptr;
  }
  j["conventions"] = {{"legendre", kLegendreSign < 0 ? "-i*pi" : "+i*pi"},
                      {"phi_increment_omega3", kPhiIncrementSign > 0 ? "+1" : "-1"}};
  nlohmann::json res = nlohmann::json::object();
  for (const ResidualCheck& c : r.checks) {
    res[c.name] = {{"value", to_decimal(c.value)},
                   {"tolerance", to_decimal(c.tolerance)},
                   {"bound", c.lower_bound ? "lower" : "upper"},
                   {"passed", c.passed}};
  }
  j["residuals"] = res;
  j["passed"] = r.passed();
  return j;
}

}  // namespace qpw
