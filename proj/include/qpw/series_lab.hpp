#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qpw/rational.hpp"
#include "qpw/walk_model.hpp"

namespace qpw {

/// Dense counts f(i, j, k) of quadrant walks from the origin to (i, j) in k steps,
/// for 0 <= i, j, k <= kmax.
class SeriesBox {
 public:
  SeriesBox(StepSet steps, int kmax);

  StepSet steps() const { return steps_; }
  int kmax() const { return kmax_; }
  const Integer& at(int i, int j, int k) const { return counts_[index(i, j, k)]; }
  Integer& at(int i, int j, int k) { return counts_[index(i, j, k)]; }
  /// f(i, j, k), or 0 when an index lies outside the box.
  Integer get(int i, int j, int k) const;

  bool operator==(const SeriesBox&) const = default;

 private:
  std::size_t index(int i, int j, int k) const {
    const std::size_t n = std::size_t(kmax_) + 1;
    return (std::size_t(k) * n + std::size_t(j)) * n + std::size_t(i);
  }
  StepSet steps_;
  int kmax_;
  std::vector<Integer> counts_;
};

/// Throws InvalidArgument when kmax < 0.
SeriesBox count_walks(StepSet s, int kmax);

/// Checks z*K*F = z*c*F(x,0) + z*c~*F(0,y) - z*d*F(0,0) - x*y coefficientwise
/// for every monomial x^a y^b z^k with a + b + k <= deg.
/// Throws TruncationTooShallow unless deg + 2 <= kmax.
bool verify_functional_equation(StepSet s, const SeriesBox& box, int deg);

/// Power series in z with exact rational coefficients.
struct UniSeries {
  std::vector<Rational> coefficients;
  std::string origin;
};

/// Coefficient of z^k is the sum over (i, j) of f(i, j, k) x0^i y0^j.
UniSeries specialize(const SeriesBox& box, const Rational& x0, const Rational& y0);

/// Excursion counts f(0, 0, k) for k = 0 .. kmax, by a rolling two-layer DP.
UniSeries excursion_series(StepSet s, int kmax);

/// P(T, z) = sum coeffs[t][e] T^t z^e with P(s(z), z) = 0 up to the truncation.
struct AlgebraicRelation {
  int deg_t = 0;
  int deg_z = 0;
  std::vector<std::vector<Integer>> coeffs;
  int terms_solved = 0;     // leading terms used to build the linear system
  int terms_validated = 0;  // all terms on which the relation was checked
  std::string to_string() const;
};

/// sum_{r=0}^{order} p_r(k) s_(k+r) = 0, with p_r = sum coeffs[r][d] k^d.
struct Recurrence {
  int order = 0;
  int degree = 0;
  std::vector<std::vector<Integer>> coeffs;
  int terms_solved = 0;
  int terms_validated = 0;
  std::string to_string() const;
};

inline constexpr int kDefaultGuard = 10;

/// Searches for a nonzero P with deg_T P <= deg_t and deg_z P <= deg_z. The
/// last 20% of the terms are held back from the solve; every returned
/// relation vanishes on all available terms. Throws InsufficientTerms unless
/// the series has at least (deg_t + 1)(deg_z + 1) + guard terms.
std::optional<AlgebraicRelation> guess_algebraic(const UniSeries& s, int deg_t, int deg_z,
                                                 int guard = kDefaultGuard);

/// Same protocol for a linear recurrence with polynomial coefficients.
std::optional<Recurrence> guess_recurrence(const UniSeries& s, int order, int degree, int guard = kDefaultGuard);

/// Exact re-substitution over every available term.
bool annihilates(const AlgebraicRelation& rel, const UniSeries& s);
bool annihilates(const Recurrence& rec, const UniSeries& s);

/// TSV with header "i\tj\tk\tcount" and one row per nonzero count.
void write_tsv(std::ostream& out, const SeriesBox& box);
/// One exact coefficient per line as "p/q" (or "p" when q = 1).
void write_series(std::ostream& out, const UniSeries& s);

}  // namespace qpw
