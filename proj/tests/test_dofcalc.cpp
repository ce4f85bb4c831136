#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wyner/dofcalc.hpp"

using namespace wyner;
using testutil::P;

namespace {

int bound(const std::vector<BoundValue>& bs, const std::string& label) {
  for (const auto& b : bs)
    if (b.label == label) return b.applicable ? b.value : -1;
  return -2;
}

}  // namespace

TEST_CASE("asymmetric multiplexing gain") {
  CHECK(asym_mg(P(7, 2, 1, 2, 1)) == 6);
  CHECK(asym_mg(P(1)) == 1);
  CHECK(asym_mg(P(4)) == 2);
  CHECK(asym_mg_per_user(P(7, 2, 1, 2, 1)) == Rational(7, 8));
  CHECK(asym_mg_per_user(P(1)) == Rational(1, 2));
  // K * eta(per user) is the large-K limit of asym_mg / K
  const NetworkParams p = P(10000, 1, 2, 0, 1);
  CHECK(static_cast<double>(asym_mg(p)) / p.K ==
        doctest::Approx(static_cast<double>(asym_mg_per_user(p))).epsilon(1e-3));
}

TEST_CASE("ceil helper") {
  CHECK(ceil_pos(2, 8) == 1);
  CHECK(ceil_pos(0, 8) == 0);
  CHECK(ceil_pos(-3, 8) == 0);
  CHECK(ceil_pos(16, 8) == 2);
}

TEST_CASE("symmetric side information, four cases") {
  const NetworkParams ex = P(7, 1, 1, 1, 1);
  const DofInterval a = sym_mg_symmetric_si(ex, Alpha::parse("0.3"));
  CHECK(a.lower == 6);
  CHECK(a.exact());
  const DofInterval b = sym_mg_symmetric_si(ex, Alpha::parse("root:3:1"));
  CHECK(b.lower == 5);
  CHECK(b.upper == 5);
  CHECK(sym_mg_symmetric_si(P(3, 1, 1, 1, 1), Alpha::parse("0.4")).lower == 3);
  CHECK(sym_mg_symmetric_si(P(3, 1, 1, 1, 1), Alpha::parse("0.4")).exact());
  // K <= s+1 with a singular H_K loses one
  CHECK(sym_mg_symmetric_si(P(3, 1, 1, 1, 1), Alpha::parse("root:3:1")).upper == 2);
  CHECK_THROWS_AS(sym_mg_symmetric_si(P(7, 1, 0, 1, 1), Alpha::parse("0.3")), InvalidInput);
}

TEST_CASE("per-user asymptotes") {
  const NetworkParams ex = P(7, 1, 1, 1, 1);
  const PerUserAsymptote a = sym_mg_per_user(ex, Alpha::parse("0.3"));
  CHECK(a.exact());
  CHECK(a.lower == Rational(3, 4));
  const PerUserAsymptote b = sym_mg_per_user(ex, Alpha::parse("root:3:1"));
  CHECK(b.lower == Rational(2, 3));
  CHECK(b.upper == Rational(5, 7));
  CHECK(sym_mg_per_user(P(5), Alpha::parse("0.9")).lower == Rational(1, 2));
}

TEST_CASE("general lower bounds") {
  CHECK(bound(sym_lower_bounds(P(12, 1, 1, 1, 1)), "LB1") == 6);
  CHECK(bound(sym_lower_bounds(P(12, 1, 0, 1, 0)), "LB2") == 4);
  CHECK(bound(sym_lower_bounds(P(10, 0, 0, 1, 1)), "LB4") == 6);
  for (const auto& b : sym_lower_bounds(P(9, 3, 0, 2, 1))) {
    CHECK(b.value >= 0);
    CHECK(b.value <= 9);
  }
}

TEST_CASE("general upper bounds") {
  const Alpha a = Alpha::parse("0.3");
  CHECK(bound(sym_upper_bounds(P(12, 1, 1, 1, 1), a), "UB1") == 9);
  CHECK(bound(sym_upper_bounds(P(8, 1, 1, 1, 1), a), "UB1") == 6);
  CHECK(bound(sym_upper_bounds(P(12, 1, 1, 1, 1), a), "UB2") == -1);  // u_3(0.3) != 0
  CHECK(bound(sym_upper_bounds(P(9, 0, 1, 2, 1), Alpha::parse("root:3:1")), "UB2") == 7);
  // the prose threshold variant can only lower UB1
  BoundOptions prose;
  prose.theta4_prose = true;
  CHECK(bound(sym_upper_bounds(P(2, 0, 2, 1, 1), a, prose), "UB1") == 1);
  CHECK(bound(sym_upper_bounds(P(2, 0, 2, 1, 1), a), "UB1") == 2);
}

TEST_CASE("merged interval") {
  for (int K = 1; K <= 25; ++K)
    for (const char* tok : {"0.3", "-0.8", "root:2:1", "root:4:2"}) {
      const DofInterval d = sym_dof_interval(P(K, 1, 0, 2, 1), Alpha::parse(tok));
      CHECK(d.lower <= d.upper);
      CHECK(d.upper <= K);
    }
  // symmetric side information: the exact value wins
  const DofInterval d = sym_dof_interval(P(7, 1, 1, 1, 1), Alpha::parse("0.3"));
  CHECK(d.exact());
  CHECK(d.lower == 6);
  const DofInterval asym = dof_interval(testutil::asym(P(7, 2, 1, 2, 1), 0.4), std::nullopt);
  CHECK(asym.lower == 6);
  CHECK(asym.exact());
}

TEST_CASE("power offset prediction") {
  const double s = std::sqrt(0.5);
  CHECK(power_offset_prediction(2, s + 0.1, s, 1) == doctest::Approx(-std::log(0.1)));
  CHECK_THROWS(power_offset_prediction(2, s, s, 1));
}
