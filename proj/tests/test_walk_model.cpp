#include <algorithm>
#include <set>

#include "doctest.h"
#include "qpw/errors.hpp"
#include "qpw/walk_model.hpp"
#include "test_support.hpp"

using namespace qpw;
using namespace qpw::testing;

namespace {
const StepSet kKreweras = StepSet::parse("NE,W,S");
const StepSet kGessel = StepSet::parse("E,W,NE,SW");
const StepSet kNSwSe = StepSet::parse("N,SW,SE");
}  // namespace

TEST_CASE("step set parsing and printing") {
  CHECK(kKreweras.to_string() == "S,W,NE");
  CHECK(StepSet::parse("ne, w s") == kKreweras);
  CHECK(StepSet::parse("0b10001010") == kKreweras);
  CHECK(kKreweras.mask() == 0b10001010);
  CHECK(kGessel.size() == 4);
  CHECK_THROWS_AS(StepSet::parse("NE,XX"), ParseError);
  CHECK_THROWS_AS(StepSet::parse(""), ParseError);
  CHECK_THROWS_AS(StepSet::parse("0b123"), ParseError);
  for (unsigned m = 1; m < 256; ++m) {
    const StepSet s(static_cast<std::uint8_t>(m));
    CHECK(StepSet::parse(s.to_string()) == s);
    CHECK(s.diagonal().diagonal() == s);
  }
}

TEST_CASE("bit order") {
  const char* names[] = {"SW", "S", "SE", "W", "E", "NW", "N", "NE"};
  for (int b = 0; b < 8; ++b) {
    CHECK(StepSet::parse(names[b]).mask() == (1u << b));
    CHECK(step_bit(kSteps[std::size_t(b)].i, kSteps[std::size_t(b)].j) == b);
  }
}

TEST_CASE("kernel_of boundary coefficients") {
  CHECK(kernel_of(kGessel).c == Poly3(1L));
  CHECK(kernel_of(kKreweras).c == px());
  CHECK(kernel_of(kNSwSe).c == Poly3(1L) + px() * px());
  CHECK(kernel_of(kGessel).sw_indicator == 1);
  CHECK(kernel_of(kKreweras).sw_indicator == 0);
  CHECK(kernel_of(kKreweras).c_tilde == py());
  CHECK_THROWS_AS(kernel_of(StepSet()), EmptyStepSet);
  const Kernel k = kernel_of(kGessel);
  // x^2 y^2 + x^2 y + y + 1 - xy/z, multiplied by z
  const Poly3 x = px(), y = py(), z = pz();
  CHECK(k.K == z * (x * x * y * y + x * x * y + y + Poly3(1L)) - x * y);
}

TEST_CASE("kernel views recompose") {
  for (StepSet s : census_models()) {
    const Kernel k = kernel_of(s);
    const Poly3 y = py(), x = px();
    CHECK(k.view.y_degree() == 2);
    CHECK(k.view.has_x_view());
    CHECK(k.view.a() * y * y + k.view.b() * y + k.view.c_low() == k.K);
    CHECK(k.view.a_tilde() * x * x + k.view.b_tilde() * x + k.view.c_tilde_low() == k.K);
  }
}

TEST_CASE("vertical symmetry") {
  CHECK(has_vertical_symmetry(kNSwSe));
  CHECK_FALSE(has_vertical_symmetry(kKreweras));
  CHECK_FALSE(has_vertical_symmetry(kGessel));
  for (StepSet s : census_models()) {
    if (has_vertical_symmetry(s)) CHECK(kernel_of(s).c_tilde == kernel_of(s.mirror()).c_tilde);
  }
}

TEST_CASE("generating polynomial") {
  CHECK(generating_poly(kGessel) == X + C(1) / X + X * Y + C(1) / (X * Y));
  CHECK(generating_poly(kKreweras) == X * Y + C(1) / X + C(1) / Y);
  CHECK(generating_poly(StepSet::parse("N")) == Y);
  CHECK_THROWS_AS(generating_poly(StepSet()), EmptyStepSet);
}

TEST_CASE("census counts") {
  const auto entries = census();
  CHECK(entries.size() == 256);
  CHECK(census_models().size() == 79);
  CHECK(census_before_dedup().size() == 138);
  int self_symmetric = 0;
  for (StepSet s : census_before_dedup()) self_symmetric += s.diagonal() == s;
  CHECK(79 * 2 - 138 == self_symmetric);
  CHECK(entries[0].reason == DiscardReason::Empty);
  CHECK(census() .size() == entries.size());
  for (std::size_t m = 0; m < 256; ++m) CHECK(int(entries[m].steps.mask()) == int(m));
}

TEST_CASE("census rules") {
  auto reason = [](const char* s) { return census()[StepSet::parse(s).mask()].reason; };
  CHECK(reason("N,E,NE") == DiscardReason::YConstraintVoid);
  CHECK(reason("N,E,NE,W") == DiscardReason::YConstraintVoid);
  CHECK(reason("N,S,E,NE") == DiscardReason::XConstraintVoid);
  CHECK(reason("S,SW,W,E") == DiscardReason::YDegenerate);
  CHECK(reason("N,S,W") == DiscardReason::XDegenerate);
  CHECK(reason("N,S,E,W") == DiscardReason::None);
  CHECK(reason("NE,W,S") == DiscardReason::None);
  CHECK(reason("E,W,NE,SW") == DiscardReason::None);
}

TEST_CASE("census survivors are closed under the orientation choice") {
  std::set<std::uint8_t> models;
  for (StepSet s : census_models()) models.insert(s.mask());
  for (StepSet s : census_before_dedup()) {
    CHECK(models.count(canonical_orientation(s).mask()) == 1);
    CHECK(canonical_orientation(s) == canonical_orientation(s.diagonal()));
  }
}
