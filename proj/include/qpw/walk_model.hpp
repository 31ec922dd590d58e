#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpw/kernel_curve.hpp"
#include "qpw/poly3.hpp"
#include "qpw/ratfunc.hpp"

namespace qpw {

struct Step {
  int i;
  int j;
};

/// Steps in bit order: bit b of a mask is kSteps[b].
inline constexpr std::array<Step, 8> kSteps{{{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};
inline constexpr std::array<const char*, 8> kStepNames{"SW", "S", "SE", "W", "E", "NW", "N", "NE"};

/// Index of step (i, j) in bit order; requires |i|, |j| <= 1 and (i, j) != (0, 0).
constexpr int step_bit(int i, int j) {
  const int cell = (j + 1) * 3 + (i + 1);
  return cell < 4 ? cell : cell - 1;
}

/// A set of small steps, encoded as an 8-bit mask.
class StepSet {
 public:
  constexpr StepSet() = default;
  constexpr explicit StepSet(std::uint8_t mask) : mask_(mask) {}

  /// Accepts compass tokens ("NE,W,S", any order and case, commas or spaces)
  /// or a binary mask "0b10001010". Throws ParseError.
  static StepSet parse(std::string_view text);

  constexpr std::uint8_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int i, int j) const { return (mask_ >> step_bit(i, j)) & 1u; }
  int size() const;
  std::vector<Step> steps() const;

  /// Image under (i, j) -> (j, i).
  StepSet diagonal() const;
  /// Image under (i, j) -> (-i, j).
  StepSet mirror() const;

  /// Compass tokens in bit order, comma separated; "" for the empty set.
  std::string to_string() const;

  constexpr auto operator<=>(const StepSet&) const = default;

 private:
  std::uint8_t mask_ = 0;
};

bool has_vertical_symmetry(StepSet s);

/// Laurent polynomial sum of x^i y^j over the steps, as a rational function
/// with a monomial denominator. Throws EmptyStepSet.
RatFunc3 generating_poly(StepSet s);

/// The functional-equation data of a model. K is stored multiplied by z:
/// K = z * sum x^(i+1) y^(j+1) - x*y, so every coefficient is polynomial.
struct Kernel {
  StepSet steps;
  Poly3 K;
  KernelView view;
  Poly3 c;        // sum over steps (i, -1) of x^(i+1)
  Poly3 c_tilde;  // sum over steps (-1, j) of y^(j+1)
  int sw_indicator = 0;
};

/// Throws EmptyStepSet.
Kernel kernel_of(StepSet s);

enum class DiscardReason {
  None,
  Empty,
  YConstraintVoid,
  XConstraintVoid,
  YDegenerate,
  XDegenerate,
  Trapped,
  DiagonalDuplicate,
};

std::string to_string(DiscardReason r);

struct CensusEntry {
  StepSet steps;
  StepSet canonical;  // the representative of {S, diag(S)} kept by the census
  DiscardReason reason = DiscardReason::None;
};

/// Representative of {S, diag(S)}: the vertically symmetric member when
/// exactly one of them is, otherwise the one with the smaller mask.
StepSet canonical_orientation(StepSet s);

/// Classification of all 256 masks, in mask order.
std::vector<CensusEntry> census();

/// The surviving models, in mask order.
std::vector<StepSet> census_models();

/// Survivors of every rule except the diagonal deduplication.
std::vector<StepSet> census_before_dedup();

}  // namespace qpw
