#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpw/bigfloat.hpp"
#include "qpw/group.hpp"
#include "qpw/walk_model.hpp"

namespace qpw {

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Coefficients d[0] .. d[4] of a polynomial of degree at most 4 in x.
using Quartic = std::array<Rational, 5>;

/// 1 / (2|S|).
Rational default_z0(StepSet s);

/// D(x) = b(x)^2 - 4 a(x) c(x) for K = a y^2 + b y + c with z = z0.
/// Throws InvalidArgument when K has y-degree above 2 or D has degree above 4.
Quartic discriminant_x(const Poly3& K, const Rational& z0);
/// Same for a walk kernel; throws InvalidArgument unless 0 < z0 < 1/|S|.
Quartic discriminant_x(const Kernel& K, const Rational& z0);

/// 1 when D (together with the point at infinity when d4 = 0) has four
/// distinct roots, 0 otherwise.
int genus_check(const Quartic& d);

struct Invariants {
  Rational g2;
  Rational g3;
};

/// Classical invariants of the binary quartic d4 x^4 + ... + d0.
Invariants quartic_invariants(const Quartic& d);
/// Invariants (16 g2, 64 g3) of the Weierstrass function that parametrizes
/// u^2 = D(x) through the glue maps used by uniformize.
Invariants uniformization_invariants(const Quartic& d);

/// Exact count of distinct real roots by a Sturm sequence.
int real_root_count(const Quartic& d);
/// The real roots of D in increasing order, refined at the working precision.
/// Throws ComplexBranchPoints unless all roots of D are real and simple.
std::vector<BigFloat> real_roots(const Quartic& d);

/// Rectangular period lattice generated by omega2 = P (real) and omega1 = i Q.
/// Weierstrass functions are evaluated through theta-function series.
class Lattice {
 public:
  Lattice() = default;  // empty; only for later assignment
  Lattice(BigFloat real_period, BigFloat imag_period);

  const BigFloat& real_period() const { return P_; }
  const BigFloat& imag_period() const { return Q_; }
  BigComplex omega_real() const { return BigComplex(P_); }
  BigComplex omega_imag() const { return BigComplex(BigFloat(0), Q_); }
  /// zeta at the half periods P/2 and iQ/2.
  const BigComplex& eta_real() const { return eta_P_; }
  const BigComplex& eta_imag() const { return eta_Q_; }

  struct Values {
    BigComplex wp;
    BigComplex wp_prime;
    BigComplex zeta;
  };
  /// Throws PoleAtLatticePoint.
  Values eval(const BigComplex& w) const;

 private:
  struct Theta {
    BigComplex t0, t1, t2, t3;
  };
  Theta theta1(const BigComplex& w) const;

  BigFloat P_, Q_, q_;
  BigComplex eta_P_, eta_Q_;
};

BigComplex wp_eval(const BigComplex& w, const Lattice& L);
BigComplex wp_prime_eval(const BigComplex& w, const Lattice& L);
BigComplex zeta_eval(const BigComplex& w, const Lattice& L);

/// Lattice of 4t^3 - g2 t - g3 by arithmetic-geometric means of the root
/// differences. Throws ComplexBranchPoints unless the cubic has three
/// distinct real roots.
Lattice periods_from_invariants(const Invariants& g);
/// Uniformizing lattice of u^2 = D(x). Throws ComplexBranchPoints.
Lattice periods(const Quartic& d);

/// Fractional linear transform g with wp(w) = g(x(w)).
struct Mobius {
  BigFloat a, b, c, d;  // (a x + b) / (c x + d)
  BigComplex operator()(const BigComplex& x) const;
  BigComplex derivative(const BigComplex& x) const;
};

struct EllipticData {
  StepSet steps;
  Rational z0;
  unsigned precision_bits = kDefaultPrecisionBits;
  Quartic d;
  std::vector<BigFloat> branch_points;  // finite ones, increasing
  bool infinite_branch_point = false;   // d4 = 0
  BigFloat x4;                          // base point of the glue when d4 != 0
  Invariants invariants;                // of the uniformizing Weierstrass function
  Lattice lattice;
  Mobius glue;
  std::array<Rational, 3> a, b, c;  // K = a(x) y^2 + b(x) y + c(x) at z0, low degree first
  ZPoly kernel;                     // K(x, y, z)
  // filled by omega3_of when the group is finite
  std::optional<BigFloat> omega3;
  int n = 0;
  int k = 0;
  GroupElement delta;  // the delta point map m

  BigComplex omega1() const { return lattice.omega_imag(); }
  BigComplex omega2() const { return lattice.omega_real(); }
};

/// Curve data, branch points, invariants, periods and glue at z0; the
/// translation data stays empty. Throws InvalidArgument, ComplexBranchPoints
/// and DegenerateKernel (genus 0).
EllipticData elliptic_data(StepSet s, const Rational& z0, unsigned precision_bits = kDefaultPrecisionBits);

struct CurvePoint {
  BigComplex x;
  BigComplex y;
  BigComplex u;  // 2 a(x) y + b(x)
};

/// Throws PoleOfUniformization at the poles of x(w), PoleAtLatticePoint at
/// the lattice points.
CurvePoint uniformize(const EllipticData& data, const BigComplex& w);
/// dx/dw.
BigComplex x_derivative(const EllipticData& data, const BigComplex& w);
/// K(x(w), y(w), z0).
BigComplex kernel_residual(const EllipticData& data, const BigComplex& w);

/// Value of an exact polynomial or rational function at a complex point.
BigComplex eval(const ZPoly& p, const BigComplex& x, const BigComplex& y, const BigComplex& z);
BigComplex eval(const RatFunc3& h, const BigComplex& x, const BigComplex& y, const BigComplex& z);

/// m applied to the point (x(w), y(w)).
std::pair<BigComplex, BigComplex> delta_image(const EllipticData& data, const CurvePoint& p);

struct Omega3 {
  BigFloat omega3;
  int n = 0;
  int k = 0;
  BigFloat rationality_residual;   // |n omega3 - k omega2|
  BigFloat translation_residual;   // solve point
};

/// Solves (x, y)(w + tau) = m((x, y)(w)) for a real tau in (0, omega2), stores
/// the result in data and returns it. Throws InfiniteGroup, TranslationNotFound
/// and RationalityViolated.
Omega3 omega3_of(EllipticData& data, const GroupReport& report);

/// Lattice generated by omega3 and omega1. Requires omega3_of.
Lattice lattice13(const EllipticData& data);

/// (omega1 / 2 i pi) zeta13(v - omega2 / 2) - ((v - omega2 / 2) / i pi) zeta13(omega1 / 2).
BigComplex phi_tilde(const BigComplex& v, const EllipticData& data, const Lattice& L13);
BigComplex phi_tilde(const BigComplex& v, const EllipticData& data);

/// Phi~(w) / n times the orbit sum at (x(w), y(w), z0).
BigComplex w2_eval(const EllipticData& data, const RatFunc3& orbit_sum, const BigComplex& w);

struct HolonomyCheck {
  BigFloat max_relative_error;
  std::vector<BigFloat> errors;
};

/// Compares a central difference in x of Phi~(w(x)) with the closed-form
/// derivative at each sample, where x = x(w) and w(x +- h) is tracked by
/// Newton steps from w. Throws SampleAtSingularity at branch points and poles.
HolonomyCheck holonomy_derivative_check(const EllipticData& data, const std::vector<BigComplex>& samples,
                                        const BigFloat& step);

/// Deterministic generic points s P + t i Q with s, t away from 0, 1/2 and 1.
std::vector<BigComplex> sample_points(const EllipticData& data, int count, std::uint64_t seed);

}  // namespace qpw
