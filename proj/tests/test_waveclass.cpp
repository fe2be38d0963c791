#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "support.hpp"
#include "wll/cuntzrep.hpp"
#include "wll/filterbank.hpp"
#include "wll/waveclass.hpp"

using namespace wll;
using namespace wll::testing;

namespace {

ComplexPoly m0_of(double th, double rh) {
  const auto a = two_param_coeffs(th, rh);
  std::vector<cplx> m(6);
  for (int k = 0; k < 6; ++k) m[k] = a[k] / std::sqrt(2.0);
  return ComplexPoly(m);
}

std::set<long> numerators(const Cycle& c) { return {c.numerators.begin(), c.numerators.end()}; }

}  // namespace

TEST_CASE("moment order") {
  CHECK(moment_order(m0_of(1.0, 1.0)) == 1);
  for (int t = 0; t < 20; ++t) {
    const double th = (t + 0.5) * (pi / 3) / 20;
    const double rh = 0.5 * std::acos(0.5 - std::cos(2 * th));
    CHECK(moment_order(m0_of(th, rh)) >= 2);
  }
  const double th = std::acos(std::pow(5.0 / 32, 0.25));
  const double rh = std::acos(std::sqrt(1.25 - std::sqrt(5.0 / 32)));
  CHECK(th == doctest::Approx(0.89).epsilon(0.01));
  CHECK(rh == doctest::Approx(0.39).epsilon(0.01));
  CHECK(moment_order(m0_of(th, rh)) >= 3);
  CHECK(moment_order(ComplexPoly{1, 4, 6, 4, 1}) == 4);
  CHECK_THROWS_AS(moment_order(ComplexPoly{}), std::invalid_argument);
}

TEST_CASE("enumerate cycles") {
  const auto c2 = enumerate_cycles(2);
  REQUIRE(c2.size() == 1);
  CHECK(c2[0].order == 3);
  CHECK(numerators(c2[0]) == std::set<long>{1, 2});
  const auto c3 = enumerate_cycles(3);
  REQUIRE(c3.size() == 3);
  std::set<std::set<long>> sevens;
  for (const auto& c : c3)
    if (c.order == 7) sevens.insert(numerators(c));
  CHECK(sevens == std::set<std::set<long>>{{1, 2, 4}, {3, 5, 6}});
  // the 4-cycle of fifth roots appears as numerators {3, 6, 12, 9} of 15
  bool mu = false;
  for (const auto& c : enumerate_cycles(4)) mu = mu || (c.order == 15 && numerators(c) == std::set<long>{3, 6, 9, 12});
  CHECK(mu);
  // squaring permutes each cycle, and no point is 1
  for (const auto& c : enumerate_cycles(6)) {
    CHECK(c.length == static_cast<int>(c.points.size()));
    for (size_t i = 0; i < c.points.size(); ++i) {
      CHECK(std::abs(c.points[i] - 1.0) > 1e-3);
      CHECK(std::abs(c.points[i] * c.points[i] - c.points[(i + 1) % c.points.size()]) < 1e-12);
    }
  }
  CHECK_THROWS_AS(enumerate_cycles(7), std::invalid_argument);
}

TEST_CASE("cohen classification") {
  const double s = 1 / std::sqrt(2.0);
  const auto r2 = cohen_classify(ComplexPoly{s, 0, 0, s});
  CHECK_FALSE(r2.strict);
  CHECK(r2.cycle.length == 2);
  const auto r4 = cohen_classify(ComplexPoly{s, 0, 0, 0, 0, s});
  CHECK_FALSE(r4.strict);
  CHECK(r4.cycle.length == 4);
  const double th = std::acos(std::pow(5.0 / 32, 0.25));
  const double rh = std::acos(std::sqrt(1.25 - std::sqrt(5.0 / 32)));
  CHECK(cohen_classify(m0_of(th, rh)).strict);
  CHECK(cohen_classify(m0_of(1.0, 2.0)).strict);
  // monomial shifts do not change the class
  CHECK(cohen_label(cohen_classify(m0_of(0, 0))) == cohen_label(cohen_classify(m0_of(3 * pi / 4, pi / 2))));
  CHECK(cohen_label(r2) == "tight_frame_2");
  CHECK(cohen_label(CohenResult{}) == "strict");
}

TEST_CASE("census") {
  const auto c = tight_frame_census();
  REQUIRE(c.size() == 4);
  const double l0[] = {0.5, 0.5, 0, 1};
  const int len[] = {2, 2, 2, 4};
  const bool irr[] = {true, true, false, false};
  for (int i = 0; i < 4; ++i) {
    CHECK(c[i].lambda0 == doctest::Approx(l0[i]).epsilon(1e-12));
    CHECK(c[i].cycle_length == len[i]);
    CHECK(c[i].irreducible == irr[i]);
    const auto a = two_param_coeffs(c[i].theta, c[i].rho);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(a[k] - c[i].coeffs[k]) < 1e-10);
    // closed form for lambda0
    const double want = std::pow(std::sin(c[i].rho), 2) * std::pow(std::cos(c[i].theta - c[i].rho), 2);
    CHECK(std::abs(c[i].lambda0 - want) < 1e-12);
  }
  CHECK(std::abs(c[0].theta - pi / 4) < 1e-15);
  CHECK(std::abs(c[0].rho - pi / 2) < 1e-15);
}

TEST_CASE("scan point flags") {
  const auto r = scan_point(pi / 3, pi / 3);
  CHECK(r.div.diverges_left == (r.a[0] > 1));
  CHECK(r.lambda0 == doctest::Approx(std::pow(std::sin(pi / 3), 2)));
  for (int j = 1; j < 12; ++j) {
    const auto e = scan_point(pi / 4, j * pi / 12);
    CHECK(e.embed2_5);
    CHECK(scan_point(3 * pi / 4, j * pi / 12).embed0_3);
    CHECK(scan_point(j * pi / 12, 0).embed1_4);
  }
  CHECK_FALSE(scan_point(1.0, 2.0).embed0_3);
  const auto lines = embedding_lines();
  REQUIRE(lines.size() == 3);
  CHECK(lines[2].support_lo == 2);
  CHECK(lines[2].support_hi == 5);
}

TEST_CASE("grid scan") {
  const auto recs = grid_scan(0, pi, 0, pi, pi / 12, 3);
  REQUIRE(recs.size() == 144);
  for (long i = 0; i < 12; ++i)
    for (long j = 0; j < 12; ++j) {
      CHECK(recs[i * 12 + j].theta == doctest::Approx(i * pi / 12));
      CHECK(recs[i * 12 + j].rho == doctest::Approx(j * pi / 12));
    }
  int tight = 0;
  for (const auto& r : recs) tight += !r.cohen.strict;
  CHECK(tight == 4);
  // thread count does not change the output
  std::ostringstream a, b;
  write_scan_csv(a, recs);
  write_scan_csv(b, grid_scan(0, pi, 0, pi, pi / 12, 1));
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, a.str().find('\n')) == kScanHeader);
  CHECK_THROWS_AS(grid_scan(0, 1, 0, 1, 0), std::invalid_argument);
}
