#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qpw/classifier.hpp"
#include "qpw/elliptic_report.hpp"
#include "qpw/series_lab.hpp"

using namespace qpw;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const StepSet kKreweras = StepSet::parse("NE,W,S");
const StepSet kGessel = StepSet::parse("E,W,NE,SW");

const std::vector<Classification>& sweep() {
  static const std::vector<Classification> all = [] {
    std::vector<Classification> out;
    for (StepSet s : census_models()) out.push_back(classify_full(s));
    return out;
  }();
  return all;
}

std::vector<const Classification*> finite_models() {
  std::vector<const Classification*> out;
  for (const Classification& c : sweep()) {
    if (c.record.order_H.finite) out.push_back(&c);
  }
  return out;
}

std::string fmt_time(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << " s";
  return o.str();
}

Outcome census_counts() {
  Timer t;
  const std::size_t models = census_models().size();
  const std::size_t before = census_before_dedup().size();
  const double secs = t.seconds();
  return {models == 79 && before == 138 && secs < 1.0,
          "79 == " + std::to_string(models) + ", 138 == " + std::to_string(before) + ", " + fmt_time(secs)};
}

Outcome group_catalog() {
  Timer t;
  std::map<int, int> orders;
  int finite = 0;
  for (StepSet s : census_models()) {
    const GroupReport r = group_orders(s, 15);
    if (r.order_H.finite) {
      ++finite;
      ++orders[r.order_H.value];
    }
  }
  const double secs = t.seconds();
  const bool ok = finite == 23 && orders[4] == 16 && orders[6] == 5 && orders[8] == 2 && orders.size() == 3 &&
                  secs < 300.0;
  return {ok, "finite " + std::to_string(finite) + ", order4 " + std::to_string(orders[4]) + ", order6 " +
                  std::to_string(orders[6]) + ", order8 " + std::to_string(orders[8]) + ", " + fmt_time(secs)};
}

Outcome norm_law() {
  int ok = 0, total = 0;
  for (const Classification* c : finite_models()) {
    ++total;
    ok += c->orbit && c->orbit->main.norm == RatFunc3(1L) && c->orbit->tilde.norm == RatFunc3(1L);
  }
  return {total == 23 && ok == 23, std::to_string(ok) + "/" + std::to_string(total) + " models with N(f) = 1"};
}

Outcome nature_verdicts() {
  int algebraic = 0, holonomic = 0, vertical = 0, vertical_nonalg = 0;
  std::vector<StepSet> order8_algebraic;
  for (const Classification* c : finite_models()) {
    const ClassificationRecord& r = c->record;
    algebraic += r.nature == Nature::Algebraic;
    holonomic += r.nature == Nature::HolonomicNonAlgebraic;
    if (has_vertical_symmetry(r.steps)) {
      ++vertical;
      vertical_nonalg += r.nature == Nature::HolonomicNonAlgebraic;
    }
    if (r.nature == Nature::Algebraic && r.order_H.value == 8) order8_algebraic.push_back(r.steps);
  }
  const bool ok = algebraic == 4 && holonomic == 19 && vertical == 16 && vertical_nonalg == 16 &&
                  order8_algebraic.size() == 1 && order8_algebraic[0] == kGessel;
  return {ok, "algebraic " + std::to_string(algebraic) + ", holonomic-nonalgebraic " + std::to_string(holonomic) +
                  ", vertical non-algebraic " + std::to_string(vertical_nonalg) + "/" + std::to_string(vertical) +
                  ", order-8 algebraic " + (order8_algebraic.size() == 1 ? order8_algebraic[0].to_string() : "?")};
}

Outcome closed_forms() {
  int vertical_models = 0, vertical_pass = 0, order8_pass = 0, c1 = 0, c1_ok = 0;
  std::map<std::string, int> order6;
  for (const Classification* c : finite_models()) {
    const StepSet s = c->record.steps;
    if (has_vertical_symmetry(s)) ++vertical_models;
    for (const ClosedFormCheck& chk : c->checks) {
      if (!chk.passed) continue;
      vertical_pass += chk.tag == ClosedFormTag::VerticalSymmetryFormula;
      order8_pass += chk.tag == ClosedFormTag::Order8Holonomic;
      if (chk.tag == ClosedFormTag::Order6Holonomic) ++order6[chk.parameter];
    }
    if (kernel_of(s).c == Poly3(1L)) {
      ++c1;
      c1_ok += c->signed_xy && c->orbit->main.orbit_sum_raw == -*c->signed_xy / RatFunc3::z();
    }
  }
  const int order6_total = order6["y"] + order6["x+y"];
  const bool ok = vertical_models == 16 && vertical_pass == 16 && order6_total == 2 && order6["y"] == 1 &&
                  order6["x+y"] == 1 && order8_pass == 1 && c1 > 0 && c1_ok == c1;
  return {ok, "vertical " + std::to_string(vertical_pass) + "/16, order6 t=y " + std::to_string(order6["y"]) +
                  " t=x+y " + std::to_string(order6["x+y"]) + ", order8 " + std::to_string(order8_pass) +
                  ", c=1 identity " + std::to_string(c1_ok) + "/" + std::to_string(c1)};
}

Outcome micro_values() {
  const RatFunc3 x = RatFunc3::x(), y = RatFunc3::y(), z = RatFunc3::z(), one(1L);
  const GroupElement xi = xi_map(kKreweras), eta = eta_map(kKreweras), xieta = delta_substitution(kKreweras);
  const OrbitData od = orbit_data(kKreweras);
  std::vector<std::pair<std::string, bool>> items{
      {"xi", xi == GroupElement{x, one / (x * y)}},
      {"eta", eta == GroupElement{one / (x * y), y}},
      {"xi eta", xieta == GroupElement{one / (x * y), x}},
      {"f", od.main.f == x * x * y},
      {"psi", od.main.psi == (y - (x * y).pow(2)) / z},
      {"f_delta", od.main.f_powers.size() == 2 && od.main.f_powers[0] == one / (x * y * y)},
      {"f_delta2", od.main.f_powers.size() == 2 && od.main.f_powers[1] == y / x},
      {"psi_delta", od.main.psi_powers.size() == 3 && od.main.psi_powers[1] == (x - one / (y * y)) / z},
  };
  Outcome o{true, ""};
  for (const auto& [name, good] : items) {
    o.passed = o.passed && good;
    if (!good) o.detail += (o.detail.empty() ? "" : ", ") + name + " differs";
  }
  if (o.passed) o.detail = "8/8 values equal";
  return o;
}

Outcome functional_equation() {
  Timer t;
  int ok = 0;
  for (StepSet s : census_models()) ok += verify_functional_equation(s, count_walks(s, 14), 12);
  SeriesBox bad = count_walks(kKreweras, 14);
  bad.at(1, 1, 5) += 1;
  const bool detected = !verify_functional_equation(kKreweras, bad, 12);
  const double secs = t.seconds();
  return {ok == 79 && detected && secs < 120.0, std::to_string(ok) + "/79 identities, corruption " +
                                                    (detected ? "detected" : "missed") + ", " + fmt_time(secs)};
}

Outcome elliptic_suite_all() {
  Timer t;
  const char* required[] = {"kernel_residual", "wp_ode_residual", "legendre_12", "legendre_13", "rationality",
                            "gcd_k_n", "translation", "holonomy_relative_error", "holonomy_step_halving"};
  SuiteOptions options;
  options.adaptive_precision = false;
  int ok = 0, total = 0;
  std::string failures;
  for (const Classification* c : finite_models()) {
    ++total;
    const StepSet s = c->record.steps;
    try {
      const EllipticReport r = elliptic_suite(s, default_z0(s), 128, options);
      bool good = r.precision_bits() == 128;
      for (const char* name : required) {
        const ResidualCheck* chk = r.find(name);
        if (!chk || !chk->passed) {
          good = false;
          failures += " " + s.to_string() + ":" + name;
        }
      }
      ok += good;
    } catch (const std::exception& e) {
      failures += " " + s.to_string() + ":" + e.what();
    }
  }
  const double secs = t.seconds();
  return {ok == 23 && total == 23 && secs < 300.0,
          std::to_string(ok) + "/" + std::to_string(total) + " models at 128 bits, " + fmt_time(secs) + failures};
}

Outcome guessing() {
  struct AlgCase {
    int mask, deg_t, deg_z, terms;
  };
  struct RecCase {
    int mask, order, degree, terms;
  };
  const AlgCase alg[] = {{81, 3, 6, 80}, {138, 3, 6, 80}, {153, 8, 14, 230}, {219, 4, 6, 80}};
  const RecCase rec[] = {{69, 4, 3, 100}, {50, 3, 2, 100}, {60, 2, 2, 100}};
  int alg_ok = 0, rec_ok = 0;
  std::string detail;
  for (const AlgCase& a : alg) {
    const StepSet s(static_cast<std::uint8_t>(a.mask));
    if (classify(s).nature != Nature::Algebraic) continue;
    const UniSeries series = excursion_series(s, a.terms - 1);
    const auto r = guess_algebraic(series, a.deg_t, a.deg_z);
    const bool good = r && r->terms_validated >= 60 && r->terms_validated == int(series.coefficients.size()) &&
                      r->terms_solved < r->terms_validated && annihilates(*r, series);
    alg_ok += good;
    if (!good) detail += " algebraic " + s.to_string() + " missing";
  }
  for (const RecCase& c : rec) {
    const StepSet s(static_cast<std::uint8_t>(c.mask));
    if (classify(s).nature != Nature::HolonomicNonAlgebraic) continue;
    const UniSeries series = excursion_series(s, c.terms - 1);
    const auto r = guess_recurrence(series, c.order, c.degree);
    const bool good = r && r->terms_solved < r->terms_validated && annihilates(*r, series);
    rec_ok += good;
    if (!good) detail += " recurrence " + s.to_string() + " missing";
  }
  return {alg_ok == 4 && rec_ok == 3,
          std::to_string(alg_ok) + "/4 algebraic relations, " + std::to_string(rec_ok) + "/3 recurrences" + detail};
}

Outcome w2_vanishing() {
  int vanish_alg = 0, nonvanish_other = 0, total = 0;
  for (const Classification* c : finite_models()) {
    ++total;
    const StepSet s = c->record.steps;
    const EllipticReport r = elliptic_suite(s, default_z0(s));
    if (c->record.nature == Nature::Algebraic) {
      const ResidualCheck* chk = r.find("w2_vanishing");
      vanish_alg += chk && chk->passed;
    } else {
      const ResidualCheck* chk = r.find("w2_nonvanishing");
      nonvanish_other += chk && chk->passed;
    }
  }
  return {vanish_alg == 4 && nonvanish_other == 19 && total == 23,
          "vanishing on " + std::to_string(vanish_alg) + "/4 algebraic, nonzero on " +
              std::to_string(nonvanish_other) + "/19 others"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"census counts", census_counts},
      {"group catalog", group_catalog},
      {"norm law", norm_law},
      {"nature verdicts", nature_verdicts},
      {"closed-form regression", closed_forms},
      {"micro-values of the order-6 walk", micro_values},
      {"functional-equation identity", functional_equation},
      {"elliptic suite", elliptic_suite_all},
      {"guessing evidence", guessing},
      {"w2 vanishing", w2_vanishing},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
