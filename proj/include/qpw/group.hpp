#pragma once

#include <string>
#include <vector>

#include "qpw/ratfunc.hpp"
#include "qpw/walk_model.hpp"

namespace qpw {

/// Point map (x, y) -> (X(x, y), Y(x, y)); z is never touched.
struct GroupElement {
  RatFunc3 X;
  RatFunc3 Y;
  bool operator==(const GroupElement&) const = default;
  std::string to_string() const { return "(" + X.to_string() + ", " + Y.to_string() + ")"; }
};

GroupElement identity_map();

/// (x, (1/y) * A-(x) / A+(x)) with A-(x), A+(x) the sums of x^i over steps
/// (i, -1) and (i, +1). Throws UndefinedGenerator if either sum is empty.
GroupElement xi_map(StepSet s);
/// ((1/x) * B-(y) / B+(y), y), the mirror of xi_map.
GroupElement eta_map(StepSet s);

/// Point-map composition g o h: first h, then g.
GroupElement compose_point_maps(const GroupElement& g, const GroupElement& h);

/// h o m, i.e. h(m.X, m.Y, z).
RatFunc3 apply(const RatFunc3& h, const GroupElement& m);

/// Substitution map of the automorphism delta = eta xi acting on functions:
/// h_delta = h o (xi_pt o eta_pt).
GroupElement delta_substitution(StepSet s);
/// Substitution map of the mirrored product xi eta: eta_pt o xi_pt.
GroupElement delta_tilde_substitution(StepSet s);

struct GroupOrder {
  bool finite = false;
  int value = 0;  // the order 2n when finite, the bound 2*n_max otherwise
  bool operator==(const GroupOrder&) const = default;
  std::string to_string() const;
};

struct GroupReport {
  GroupOrder order_W;
  GroupOrder order_H;
  /// delta substitution powers m^0 .. m^(n-1) when order_H = 2n is finite;
  /// only m^0 when the order exceeds the bound.
  std::vector<GroupElement> delta_point_maps;
  int n_max = 15;
  bool degree_cap_hit = false;
};

inline constexpr unsigned kDegreeCap = 64;

/// Orders of the group in C^2 (W) and on the kernel curve (H). A power of the
/// delta map is compared with the identity only after it agrees with the
/// identity at three random points of the curve modulo a large prime. The
/// numerator degree of each power is tracked on a random line modulo the same
/// prime; past kDegreeCap the search stops with ExceedsBound.
GroupReport group_orders(StepSet s, int n_max = 15);

/// z * det [[r(1,1), r(1,0), r(1,-1)], [r(0,1), r(0,0) - 1/z, r(0,-1)],
///          [r(-1,1), r(-1,0), r(-1,-1)]], with r(i,j) = [step (i,j) in S].
Poly3 order4_determinant(StepSet s);

}  // namespace qpw
