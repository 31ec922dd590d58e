#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpw/classifier.hpp"
#include "qpw/elliptic.hpp"

namespace qpw {

struct ResidualCheck {
  std::string name;
  BigFloat value;
  BigFloat tolerance;
  bool lower_bound = false;          // passes when value > tolerance instead of value < tolerance
  bool precision_sensitive = true;   // considered by the precision-doubling rule
  bool passed = false;
};

/// Sign conventions asserted by the checks: zeta(w1/2) w2 - zeta(w2/2) w1 = -i pi
/// on both lattices, and Phi~(w + w3) - Phi~(w) = +1.
inline constexpr int kLegendreSign = -1;
inline constexpr int kPhiIncrementSign = 1;

struct EllipticReport {
  StepSet steps;
  Rational z0;
  std::vector<unsigned> precision_attempts;
  EllipticData data;
  std::optional<Omega3> translation;
  Nature nature = Nature::NotCovered;
  std::vector<ResidualCheck> checks;

  unsigned precision_bits() const { return precision_attempts.back(); }
  bool passed() const;
  const ResidualCheck* find(const std::string& name) const;
};

struct SuiteOptions {
  int kernel_samples = 20;
  int translation_samples = 10;
  int holonomy_samples = 10;
  int w2_samples = 10;
  std::uint64_t seed = 20240601;
  bool adaptive_precision = true;
  unsigned max_precision_bits = 1024;
};

/// Every numeric self-check of the elliptic layer for one model at z0. When a
/// precision-sensitive residual exceeds half its tolerance the whole suite is
/// rerun at doubled precision, up to options.max_precision_bits.
/// Throws InvalidArgument, DegenerateKernel and ComplexBranchPoints.
EllipticReport elliptic_suite(StepSet s, const Rational& z0, unsigned precision_bits = kDefaultPrecisionBits,
                              const SuiteOptions& options = {});

/// Floats are decimal strings at the working precision; exact data stays exact.
nlohmann::json to_json(const EllipticReport& r);

}  // namespace qpw
