#include "qpw/classifier.hpp"

#include "qpw/errors.hpp"
#include "qpw/kernel_curve.hpp"

namespace qpw {

namespace {

const RatFunc3& xy() {
  static const RatFunc3 v = RatFunc3::x() * RatFunc3::y();
  return v;
}

}  // namespace

// On the curve K = 0 the counting equation reads
//   c(x) F(x,0) + c~(y) F(0,y) + c0(x,y) = 0,   c0 = -d F(0,0) - xy/z,
// with d the south-west indicator. Pulling back by eta fixes y, so both
// c~(y) and F(0,y) are unchanged; subtracting the pulled-back equation gives
//   c_eta * pi_eta = c * pi + (c0 - c0_eta),   pi(x) = F(x,0).
// Since pi depends on x alone and xi fixes x, pi_delta = pi_eta, so
//   pi_delta = f pi + psi  with  f = c / c_eta,  psi = (c0 - c0_eta) / c_eta.
// The constant -d F(0,0) drops out of c0 - c0_eta, leaving
//   psi = ((xy)_eta - xy) / (z c_eta).
FPsi f_psi_of(StepSet s) {
  const Kernel ker = kernel_of(s);
  const GroupElement eta = eta_map(s);
  const RatFunc3 c(ker.c), ct(ker.c_tilde);
  if (apply(ct, eta) != ct) throw ConventionError("c~ is not fixed by eta for " + s.to_string());
  const RatFunc3 c_eta = apply(c, eta);
  return {c / c_eta, (apply(xy(), eta) - xy()) / (RatFunc3::z() * c_eta)};
}

FPsi f_psi_tilde_of(StepSet s) {
  const Kernel ker = kernel_of(s);
  const GroupElement xi = xi_map(s);
  const RatFunc3 c(ker.c), ct(ker.c_tilde);
  if (apply(c, xi) != c) throw ConventionError("c is not fixed by xi for " + s.to_string());
  const RatFunc3 ct_xi = apply(ct, xi);
  return {ct / ct_xi, (apply(xy(), xi) - xy()) / (RatFunc3::z() * ct_xi)};
}

namespace {

int half_order(StepSet s, const GroupReport& report) {
  if (!report.order_H.finite) {
    throw InfiniteGroup("group of " + s.to_string() + " exceeds " + report.order_H.to_string());
  }
  if (report.order_W != report.order_H) {
    throw ConventionError("order_W " + report.order_W.to_string() + " differs from order_H " +
                          report.order_H.to_string());
  }
  return report.order_H.value / 2;
}

OrbitSide orbit_side(const FPsi& fp, const std::vector<GroupElement>& maps, const KernelView& view) {
  OrbitSide side{fp.f, fp.psi, {}, {}, {}, {}, {}};
  const std::size_t n = maps.size();
  RatFunc3 norm = fp.f;
  for (std::size_t i = 1; i < n; ++i) {
    side.f_powers.push_back(apply(fp.f, maps[i]));
    norm *= side.f_powers.back();
  }
  for (std::size_t k = 0; k < n; ++k) side.psi_powers.push_back(apply(fp.psi, maps[k]));
  side.norm = reduce_mod_kernel(norm, view);
  RatFunc3 sum, running(1L);
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) running *= side.f_powers[k - 1];
    sum += side.psi_powers[k] / running;
  }
  side.orbit_sum_raw = sum;
  side.orbit_sum_on_curve = reduce_mod_kernel(sum, view);
  return side;
}

std::vector<GroupElement> powers_of(const GroupElement& m, int n) {
  std::vector<GroupElement> out{identity_map()};
  for (int k = 1; k < n; ++k) out.push_back(compose_point_maps(m, out.back()));
  return out;
}

}  // namespace

OrbitData orbit_data(StepSet s, const GroupReport& report) {
  const int n = half_order(s, report);
  const Kernel ker = kernel_of(s);
  OrbitData od;
  od.n = n;
  od.main = orbit_side(f_psi_of(s), report.delta_point_maps, ker.view);
  od.tilde = orbit_side(f_psi_tilde_of(s), powers_of(delta_tilde_substitution(s), n), ker.view);
  return od;
}

OrbitData orbit_data(StepSet s, int n_max) { return orbit_data(s, group_orders(s, n_max)); }

RatFunc3 norm_of(StepSet s, int n_max) { return orbit_data(s, n_max).main.norm; }

OrbitSum orbit_sum(StepSet s, int n_max) {
  auto od = orbit_data(s, n_max);
  return {od.main.orbit_sum_raw, od.main.orbit_sum_on_curve};
}

OrbitSum orbit_sum_tilde(StepSet s, int n_max) {
  auto od = orbit_data(s, n_max);
  return {od.tilde.orbit_sum_raw, od.tilde.orbit_sum_on_curve};
}

RatFunc3 signed_orbit_sum_xy(StepSet s, const GroupReport& report) {
  half_order(s, report);
  const GroupElement eta = eta_map(s);
  RatFunc3 sum;
  for (const auto& m : report.delta_point_maps) {
    const RatFunc3 along = apply(xy(), m);
    sum += along - apply(along, eta);
  }
  return sum;
}

RatFunc3 signed_orbit_sum_xy(StepSet s, int n_max) { return signed_orbit_sum_xy(s, group_orders(s, n_max)); }

std::string to_string(ClosedFormTag t) {
  switch (t) {
    case ClosedFormTag::None: return "None";
    case ClosedFormTag::VerticalSymmetryFormula: return "VerticalSymmetryFormula";
    case ClosedFormTag::OrbitSumOfXY: return "OrbitSumOfXY";
    case ClosedFormTag::Order6Holonomic: return "Order6Holonomic";
    case ClosedFormTag::Order8Holonomic: return "Order8Holonomic";
  }
  return "?";
}

std::optional<ClosedFormTag> closed_form_tag_from_string(const std::string& s) {
  for (auto t : {ClosedFormTag::None, ClosedFormTag::VerticalSymmetryFormula, ClosedFormTag::OrbitSumOfXY,
                 ClosedFormTag::Order6Holonomic, ClosedFormTag::Order8Holonomic}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

RatFunc3 swap_xy(const RatFunc3& h) { return rf_substitute(h, RatFunc3::y(), RatFunc3::x()); }

RatFunc3 vertical_symmetry_formula(StepSet s) {
  const RatFunc3 x = RatFunc3::x(), y = RatFunc3::y(), z = RatFunc3::z();
  const RatFunc3 c(kernel_of(s).c);
  return -(x * x) / (z * c) * (x - eta_map(s).X) * (y - xi_map(s).Y);
}

RatFunc3 order6_formula(const RatFunc3& t) {
  const RatFunc3 x = RatFunc3::x(), y = RatFunc3::y(), z = RatFunc3::z(), one(1L);
  return (x - y * y) * (one - x * y) * (y - x * x) / (z * y.pow(3) * t);
}

RatFunc3 order8_formula() {
  const RatFunc3 x = RatFunc3::x(), y = RatFunc3::y(), z = RatFunc3::z(), one(1L);
  return (y - one) * (x * x - one) * (x * x - y) * (x * x - y * y) / (x * y.pow(4) * z);
}

std::vector<ClosedFormCheck> closed_form_checks(StepSet s, const OrbitData& od, const GroupReport& report) {
  std::vector<ClosedFormCheck> out;
  const RatFunc3& raw = od.main.orbit_sum_raw;
  const RatFunc3& raw_tilde = od.tilde.orbit_sum_raw;
  // F matches the orbit sum directly, or F(y, x) matches the mirrored sum
  auto check = [&](ClosedFormTag tag, std::string param, const RatFunc3& direct, const RatFunc3& transposed) {
    ClosedFormCheck c{tag, std::move(param), Orientation::Direct, false};
    if (raw == direct) {
      c.passed = true;
    } else if (raw_tilde == transposed) {
      c.passed = true;
      c.orientation = Orientation::Transposed;
    }
    out.push_back(c);
  };
  if (od.n == 2) {
    const RatFunc3 direct = has_vertical_symmetry(s) ? vertical_symmetry_formula(s) : RatFunc3();
    const RatFunc3 transposed =
        has_vertical_symmetry(s.diagonal()) ? swap_xy(vertical_symmetry_formula(s.diagonal())) : RatFunc3();
    if (has_vertical_symmetry(s) || has_vertical_symmetry(s.diagonal())) {
      check(ClosedFormTag::VerticalSymmetryFormula, "", direct, transposed);
    }
  }
  if (od.n == 3) {
    for (const auto& [name, t] : {std::pair{std::string("y"), RatFunc3::y()},
                                  std::pair{std::string("x+y"), RatFunc3::x() + RatFunc3::y()}}) {
      const RatFunc3 F = order6_formula(t);
      check(ClosedFormTag::Order6Holonomic, name, F, swap_xy(F));
    }
  }
  if (od.n == 4) {
    const RatFunc3 F = order8_formula();
    check(ClosedFormTag::Order8Holonomic, "", F, swap_xy(F));
  }
  if (kernel_of(s).c == Poly3(1L)) {
    const RatFunc3 expected = -signed_orbit_sum_xy(s, report) / RatFunc3::z();
    out.push_back({ClosedFormTag::OrbitSumOfXY, "", Orientation::Direct, raw == expected});
  }
  return out;
}

std::string to_string(Nature n) {
  switch (n) {
    case Nature::Algebraic: return "Algebraic";
    case Nature::HolonomicNonAlgebraic: return "HolonomicNonAlgebraic";
    case Nature::NotCovered: return "NotCovered";
  }
  return "?";
}

std::optional<Nature> nature_from_string(const std::string& s) {
  for (auto n : {Nature::Algebraic, Nature::HolonomicNonAlgebraic, Nature::NotCovered}) {
    if (to_string(n) == s) return n;
  }
  return std::nullopt;
}

Classification classify_full(StepSet s, int n_max) {
  Classification out;
  ClassificationRecord& rec = out.record;
  rec.steps = s;
  try {
    out.group = group_orders(s, n_max);
    rec.order_W = out.group.order_W;
    rec.order_H = out.group.order_H;
    if (!rec.order_H.finite) {
      rec.nature = Nature::NotCovered;
      rec.note = out.group.degree_cap_hit ? "degree cap reached" : "no finite order within bound";
      return out;
    }
    out.orbit = orbit_data(s, out.group);
    const OrbitData& od = *out.orbit;
    rec.norm_ok = od.main.norm == RatFunc3(1L) && od.tilde.norm == RatFunc3(1L);
    rec.cns = od.main.orbit_sum_on_curve.is_zero();
    rec.cns_tilde = od.tilde.orbit_sum_on_curve.is_zero();
    out.checks = closed_form_checks(s, od, out.group);
    if (kernel_of(s).c == Poly3(1L)) out.signed_xy = signed_orbit_sum_xy(s, out.group);
    for (const auto& c : out.checks) {
      if (c.passed && c.tag != ClosedFormTag::OrbitSumOfXY) {
        rec.closed_form_tag = c.tag;
        rec.closed_form_parameter = c.parameter;
        break;
      }
    }
    if (rec.closed_form_tag == ClosedFormTag::None) {
      for (const auto& c : out.checks) {
        if (c.passed) rec.closed_form_tag = c.tag;
      }
    }
    if (!rec.norm_ok) {
      rec.nature = Nature::NotCovered;
      rec.note = "norm of f differs from 1";
    } else {
      rec.nature = rec.cns && rec.cns_tilde ? Nature::Algebraic : Nature::HolonomicNonAlgebraic;
    }
  } catch (const Error& e) {
    rec.nature = Nature::NotCovered;
    rec.note = e.what();
  }
  return out;
}

ClassificationRecord classify(StepSet s, int n_max) { return classify_full(s, n_max).record; }

}  // namespace qpw
