#include <map>

#include "doctest.h"
#include "qpw/errors.hpp"
#include "qpw/group.hpp"
#include "qpw/kernel_curve.hpp"
#include "test_support.hpp"

using namespace qpw;
using namespace qpw::testing;

namespace {
const StepSet kKreweras = StepSet::parse("NE,W,S");
const StepSet kGessel = StepSet::parse("E,W,NE,SW");
const StepSet kNSwSe = StepSet::parse("N,SW,SE");

const std::vector<GroupReport>& all_reports() {
  static const std::vector<GroupReport> reports = [] {
    std::vector<GroupReport> out;
    for (StepSet s : census_models()) out.push_back(group_orders(s, 15));
    return out;
  }();
  return reports;
}
}  // namespace

TEST_CASE("generators of the Kreweras walk") {
  CHECK(xi_map(kKreweras) == GroupElement{X, C(1) / (X * Y)});
  CHECK(eta_map(kKreweras) == GroupElement{C(1) / (X * Y), Y});
  CHECK(compose_point_maps(xi_map(kKreweras), eta_map(kKreweras)) == GroupElement{C(1) / (X * Y), X});
  CHECK(compose_point_maps(eta_map(kKreweras), xi_map(kKreweras)) == GroupElement{Y, C(1) / (X * Y)});
  CHECK(delta_substitution(kKreweras) == GroupElement{C(1) / (X * Y), X});
}

TEST_CASE("generators of other models") {
  CHECK(xi_map(kGessel) == GroupElement{X, C(1) / (X * X * Y)});
  CHECK(eta_map(kGessel) == GroupElement{C(1) / (X * Y), Y});
  CHECK(eta_map(kNSwSe) == GroupElement{C(1) / X, Y});
  CHECK_THROWS_AS(xi_map(StepSet::parse("N,E")), UndefinedGenerator);
  CHECK_THROWS_AS(eta_map(StepSet::parse("N,S,E")), UndefinedGenerator);
  const GroupElement m = delta_substitution(kKreweras);
  CHECK(compose_point_maps(identity_map(), m) == m);
}

TEST_CASE("the delta action on Kreweras functions") {
  const GroupElement m = delta_substitution(kKreweras);
  const RatFunc3 f = X * X * Y;
  CHECK(apply(f, m) == C(1) / (X * Y * Y));
  CHECK(apply(apply(f, m), m) == Y / X);
  CHECK(apply(Z, m) == Z);
}

TEST_CASE("generators are involutions for every model") {
  for (StepSet s : census_models()) {
    const GroupElement xi = xi_map(s), eta = eta_map(s);
    CHECK(compose_point_maps(xi, xi) == identity_map());
    CHECK(compose_point_maps(eta, eta) == identity_map());
  }
}

TEST_CASE("generators preserve the step polynomial") {
  for (StepSet s : census_models()) {
    const RatFunc3 S = generating_poly(s);
    CHECK(apply(S, xi_map(s)) == S);
    CHECK(apply(S, eta_map(s)) == S);
  }
}

TEST_CASE("orders of the named models") {
  const GroupReport k = group_orders(kKreweras, 15);
  CHECK(k.order_W == GroupOrder{true, 6});
  CHECK(k.order_H == GroupOrder{true, 6});
  CHECK(k.delta_point_maps.size() == 3);
  CHECK(group_orders(kGessel, 15).order_H == GroupOrder{true, 8});
  const GroupReport v = group_orders(kNSwSe, 15);
  CHECK(v.order_W == GroupOrder{true, 4});
  CHECK(v.order_H == GroupOrder{true, 4});
  CHECK(group_orders(kKreweras, 15).order_H.to_string() == "Finite(6)");
  CHECK_THROWS_AS(group_orders(kKreweras, 1), InvalidArgument);
}

TEST_CASE("catalog of group orders") {
  std::map<int, int> by_order;
  int finite = 0;
  const auto models = census_models();
  for (std::size_t i = 0; i < models.size(); ++i) {
    const GroupReport& r = all_reports()[i];
    if (r.order_H.finite) {
      ++finite;
      ++by_order[r.order_H.value];
      REQUIRE(r.order_W.finite);
      CHECK(r.order_W.value % r.order_H.value == 0);
      CHECK(r.order_W.value >= r.order_H.value);
    } else {
      CHECK(r.order_H.to_string() == "ExceedsBound(30)");
    }
  }
  CHECK(finite == 23);
  CHECK(by_order[4] == 16);
  CHECK(by_order[6] == 5);
  CHECK(by_order[8] == 2);
}

TEST_CASE("finite orbits are exact") {
  const auto models = census_models();
  for (std::size_t i = 0; i < models.size(); ++i) {
    const GroupReport& r = all_reports()[i];
    if (!r.order_H.finite) continue;
    const KernelView view = kernel_of(models[i]).view;
    const GroupElement m = delta_substitution(models[i]);
    const int n = r.order_H.value / 2;
    REQUIRE(int(r.delta_point_maps.size()) == n);
    GroupElement p = identity_map();
    for (int k = 1; k <= n; ++k) {
      p = compose_point_maps(m, p);
      const bool on_curve = is_zero_on_curve(p.X - X, view) && is_zero_on_curve(p.Y - Y, view);
      CHECK(on_curve == (k == n));
      if (k < n) CHECK(p == r.delta_point_maps[std::size_t(k)]);
    }
  }
}

TEST_CASE("order-4 determinant criterion") {
  CHECK(order4_determinant(kNSwSe).is_zero());
  CHECK_FALSE(order4_determinant(kKreweras).is_zero());
  CHECK_FALSE(order4_determinant(kGessel).is_zero());
  const auto models = census_models();
  for (std::size_t i = 0; i < models.size(); ++i) {
    const bool four = all_reports()[i].order_H == GroupOrder{true, 4};
    CHECK(order4_determinant(models[i]).is_zero() == four);
    if (has_vertical_symmetry(models[i])) CHECK(four);
  }
}
