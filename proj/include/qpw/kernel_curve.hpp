#pragma once

#include "qpw/poly3.hpp"
#include "qpw/ratfunc.hpp"

namespace qpw {

/// A polynomial K(x, y, z) viewed as a quadratic in y and, when its
/// x-degree allows it, as a quadratic in x:
///   K = a*y^2 + b*y + c_low        (a, b, c_low in x, z)
///   K = at*x^2 + bt*x + ct_low     (at, bt, ct_low in y, z)
class KernelView {
 public:
  explicit KernelView(const Poly3& K);

  const Poly3& K() const { return K_; }
  const Poly3& a() const { return a_; }
  const Poly3& b() const { return b_; }
  const Poly3& c_low() const { return c_; }
  bool has_x_view() const { return has_x_view_; }
  const Poly3& a_tilde() const { return at_; }
  const Poly3& b_tilde() const { return bt_; }
  const Poly3& c_tilde_low() const { return ct_; }
  unsigned y_degree() const { return y_degree_; }

  /// b^2 - 4*a*c_low.
  Poly3 discriminant_y() const { return b_ * b_ - Poly3(4L) * a_ * c_; }

  // Integer forms used by the reduction routines.
  const ZPoly& za() const { return za_; }
  const ZPoly& zb() const { return zb_; }
  const ZPoly& zc() const { return zc_; }
  /// Cached result of is_kernel_irreducible; only meaningful when y_degree() == 2.
  bool irreducible() const { return irreducible_; }

 private:
  Poly3 K_, a_, b_, c_, at_, bt_, ct_;
  ZPoly za_, zb_, zc_;
  unsigned y_degree_ = 0;
  bool has_x_view_ = false;
  bool irreducible_ = false;
};

/// True iff the y-discriminant of K is not a perfect square in Q[x, z].
/// Throws DegenerateKernel when the y-degree is below 2.
bool is_kernel_irreducible(const KernelView& K);

/// Canonical representative (A + B*y)/C of h on the curve K = 0, with A, B, C
/// free of y. Functions equal on the curve have identical representatives.
RatFunc3 reduce_mod_kernel(const RatFunc3& h, const KernelView& K);

/// reduce_mod_kernel(h, K) == 0, computed from the numerator alone.
bool is_zero_on_curve(const RatFunc3& h, const KernelView& K);

}  // namespace qpw
