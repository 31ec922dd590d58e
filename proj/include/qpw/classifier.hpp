#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpw/group.hpp"
#include "qpw/ratfunc.hpp"
#include "qpw/walk_model.hpp"

namespace qpw {

struct FPsi {
  RatFunc3 f;
  RatFunc3 psi;
};

/// f = c / c_eta and psi = ((xy)_eta - xy) / (z * c_eta).
FPsi f_psi_of(StepSet s);
/// The mirrored pair f~ = c~ / c~_xi, psi~ = ((xy)_xi - xy) / (z * c~_xi).
FPsi f_psi_tilde_of(StepSet s);

struct OrbitSide {
  RatFunc3 f;
  RatFunc3 psi;
  std::vector<RatFunc3> f_powers;    // f o m^i, i = 1 .. n-1
  std::vector<RatFunc3> psi_powers;  // psi o m^k, k = 0 .. n-1
  RatFunc3 norm;                     // product of f o m^i, i = 0 .. n-1, reduced on the curve
  RatFunc3 orbit_sum_raw;
  RatFunc3 orbit_sum_on_curve;
};

struct OrbitData {
  int n = 0;
  OrbitSide main;
  OrbitSide tilde;
};

/// Throws InfiniteGroup when the group order exceeds the bound.
OrbitData orbit_data(StepSet s, const GroupReport& report);
OrbitData orbit_data(StepSet s, int n_max = 15);

/// Product of f o m^i over the delta orbit, reduced on the curve.
RatFunc3 norm_of(StepSet s, int n_max = 15);

struct OrbitSum {
  RatFunc3 raw;
  RatFunc3 on_curve;
};
OrbitSum orbit_sum(StepSet s, int n_max = 15);
OrbitSum orbit_sum_tilde(StepSet s, int n_max = 15);

/// Sum over rho in {delta^k, eta delta^k : 0 <= k < n} of sign(rho) * (xy)_rho,
/// with sign +1 on delta^k and -1 on eta delta^k.
RatFunc3 signed_orbit_sum_xy(StepSet s, const GroupReport& report);
RatFunc3 signed_orbit_sum_xy(StepSet s, int n_max = 15);

enum class ClosedFormTag { None, VerticalSymmetryFormula, OrbitSumOfXY, Order6Holonomic, Order8Holonomic };
std::string to_string(ClosedFormTag t);
std::optional<ClosedFormTag> closed_form_tag_from_string(const std::string& s);

/// Orientation in which a closed form matched: the orbit sum against F(x, y),
/// or the mirrored orbit sum against F(y, x).
enum class Orientation { Direct, Transposed };

struct ClosedFormCheck {
  ClosedFormTag tag = ClosedFormTag::None;
  std::string parameter;  // "y" or "x+y" for the order-6 formula
  Orientation orientation = Orientation::Direct;
  bool passed = false;
};

/// -x^2 / (z*c) * (x - x_eta) * (y - y_xi).
RatFunc3 vertical_symmetry_formula(StepSet s);
/// (x - y^2)(1 - xy)(y - x^2) / (z y^3 t).
RatFunc3 order6_formula(const RatFunc3& t);
/// (y - 1)(x^2 - 1)(x^2 - y)(x^2 - y^2) / (x y^4 z).
RatFunc3 order8_formula();
/// h(y, x, z).
RatFunc3 swap_xy(const RatFunc3& h);

/// The checks applicable to the model's group order; each known formula is
/// tried in both orientations and reported once, passing if either matches.
std::vector<ClosedFormCheck> closed_form_checks(StepSet s, const OrbitData& od, const GroupReport& report);

enum class Nature { Algebraic, HolonomicNonAlgebraic, NotCovered };
std::string to_string(Nature n);
std::optional<Nature> nature_from_string(const std::string& s);

struct ClassificationRecord {
  StepSet steps;
  GroupOrder order_W;
  GroupOrder order_H;
  bool norm_ok = false;
  bool cns = false;
  bool cns_tilde = false;
  Nature nature = Nature::NotCovered;
  ClosedFormTag closed_form_tag = ClosedFormTag::None;
  std::string closed_form_parameter;
  std::string note;
  bool operator==(const ClassificationRecord&) const = default;
};

/// Full classification; errors are reported as NotCovered with a note.
ClassificationRecord classify(StepSet s, int n_max = 15);

/// Everything classify computes, kept for reporting.
struct Classification {
  ClassificationRecord record;
  GroupReport group;
  std::optional<OrbitData> orbit;
  std::vector<ClosedFormCheck> checks;
  std::optional<RatFunc3> signed_xy;
};
Classification classify_full(StepSet s, int n_max = 15);

}  // namespace qpw
