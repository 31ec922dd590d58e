#include <random>
#include <sstream>

#include "doctest.h"
#include "qpw/errors.hpp"
#include "qpw/series_lab.hpp"

using namespace qpw;

namespace {
const StepSet kKreweras = StepSet::parse("NE,W,S");
const StepSet kGessel = StepSet::parse("E,W,NE,SW");

// Number of quadrant walks of length k from the origin, by depth-first search.
long dfs_paths(StepSet s, int x, int y, int k) {
  if (k == 0) return 1;
  long total = 0;
  for (const Step& st : s.steps()) {
    if (x + st.i >= 0 && y + st.j >= 0) total += dfs_paths(s, x + st.i, y + st.j, k - 1);
  }
  return total;
}
}  // namespace

TEST_CASE("small counts") {
  const SeriesBox k = count_walks(kKreweras, 6);
  CHECK(k.at(0, 0, 0) == 1);
  CHECK(k.at(0, 0, 3) == 2);
  const SeriesBox g = count_walks(kGessel, 6);
  CHECK(g.at(0, 0, 2) == 2);
  CHECK_THROWS_AS(count_walks(kGessel, -1), InvalidArgument);
}

TEST_CASE("box invariants") {
  const SeriesBox b = count_walks(kGessel, 10);
  for (int k = 0; k <= 10; ++k) {
    for (int j = 0; j <= 10; ++j) {
      for (int i = 0; i <= 10; ++i) {
        CHECK(sgn(b.at(i, j, k)) >= 0);
        if (i > k || j > k) CHECK(b.at(i, j, k) == 0);
      }
    }
  }
}

TEST_CASE("specializations") {
  const SeriesBox g = count_walks(kGessel, 8);
  const UniSeries ex = specialize(g, Rational(0), Rational(0));
  const long expected[] = {1, 0, 2, 0, 11};
  for (int k = 0; k < 5; ++k) CHECK(ex.coefficients[std::size_t(k)] == expected[k]);
  const UniSeries all = specialize(g, Rational(1), Rational(1));
  CHECK(all.coefficients[1] == 2);
  const UniSeries fast = excursion_series(kGessel, 8);
  CHECK(fast.coefficients == ex.coefficients);
  const UniSeries half = specialize(g, make_rational(1, 2), Rational(3));
  CHECK(half.coefficients[1] == make_rational(1, 2) + make_rational(3, 2));
}

TEST_CASE("total counts match depth-first enumeration for every model") {
  for (StepSet s : census_models()) {
    const SeriesBox b = count_walks(s, 8);
    const UniSeries total = specialize(b, Rational(1), Rational(1));
    Integer bound = 1;
    for (int k = 0; k <= 8; ++k) {
      CHECK(total.coefficients[std::size_t(k)] == dfs_paths(s, 0, 0, k));
      CHECK(total.coefficients[std::size_t(k)] <= Rational(bound));
      bound *= s.size();
    }
    CHECK(excursion_series(s, 20).coefficients == specialize(count_walks(s, 20), Rational(0), Rational(0)).coefficients);
  }
}

TEST_CASE("functional equation for every model") {
  for (StepSet s : census_models()) {
    const SeriesBox b = count_walks(s, 14);
    CHECK(verify_functional_equation(s, b, 12));
  }
  SeriesBox bad = count_walks(kKreweras, 14);
  CHECK_THROWS_AS(verify_functional_equation(kKreweras, bad, 13), TruncationTooShallow);
  bad.at(1, 1, 4) += 1;
  CHECK_FALSE(verify_functional_equation(kKreweras, bad, 12));
  SeriesBox bad2 = count_walks(kGessel, 14);
  bad2.at(0, 0, 6) += 1;
  CHECK_FALSE(verify_functional_equation(kGessel, bad2, 12));
}

TEST_CASE("algebraic guessing") {
  UniSeries geo;
  for (int k = 0; k < 30; ++k) geo.coefficients.push_back(Rational(1));
  auto g = guess_algebraic(geo, 1, 1);
  REQUIRE(g.has_value());
  CHECK(annihilates(*g, geo));
  // T(1 - z) - 1 up to scaling
  const Integer& a = g->coeffs[1][0];
  CHECK(g->coeffs[1][1] == -a);
  CHECK(g->coeffs[0][0] == -a);
  CHECK(g->coeffs[0][1] == 0);

  const UniSeries kr = excursion_series(kKreweras, 59);
  auto k = guess_algebraic(kr, 4, 8);
  REQUIRE(k.has_value());
  CHECK(annihilates(*k, kr));
  CHECK(k->terms_validated == 60);
  CHECK(k->terms_solved == 48);

  std::mt19937_64 rng(5);
  UniSeries noise;
  for (int i = 0; i < 60; ++i) noise.coefficients.push_back(Rational(long(rng() % 1000)));
  CHECK_FALSE(guess_algebraic(noise, 3, 6).has_value());
  CHECK_THROWS_AS(guess_algebraic(kr, 8, 8), InsufficientTerms);
}

TEST_CASE("recurrence guessing") {
  UniSeries fact;
  Integer f = 1;
  for (int k = 0; k < 30; ++k) {
    fact.coefficients.push_back(Rational(f));
    f *= k + 1;
  }
  auto r = guess_recurrence(fact, 1, 1);
  REQUIRE(r.has_value());
  // s(k+1) - (k+1) s(k) = 0 up to scaling
  const Integer& c = r->coeffs[1][0];
  CHECK(r->coeffs[1][1] == 0);
  CHECK(r->coeffs[0][0] == -c);
  CHECK(r->coeffs[0][1] == -c);

  const UniSeries gs = excursion_series(kGessel, 99);
  auto g = guess_recurrence(gs, 2, 3);
  REQUIRE(g.has_value());
  CHECK(annihilates(*g, gs));
  CHECK(g->terms_validated - g->terms_solved == 20);

  const UniSeries v = excursion_series(StepSet::parse("N,SW,SE"), 99);
  auto vr = guess_recurrence(v, 4, 3);
  REQUIRE(vr.has_value());
  CHECK(annihilates(*vr, v));
  CHECK_THROWS_AS(guess_recurrence(v, 10, 10), InsufficientTerms);
}

TEST_CASE("exports") {
  std::ostringstream tsv;
  write_tsv(tsv, count_walks(kKreweras, 3));
  CHECK(tsv.str().rfind("i\tj\tk\tcount\n", 0) == 0);
  CHECK(tsv.str().find("0\t0\t3\t2\n") != std::string::npos);
  std::ostringstream ser;
  UniSeries s{{make_rational(1, 2), Rational(3)}, "test"};
  write_series(ser, s);
  CHECK(ser.str() == "1/2\n3\n");
}
