#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wyner/schemes.hpp"

#include <set>

using namespace wyner;
using testutil::P;

using Ints = std::vector<int>;

TEST_CASE("asymmetric plans") {
  const TransmissionPlan a = asym_plan(P(7, 2, 1, 2, 1));
  CHECK(a.silenced == Ints{7});
  CHECK(a.claimed_dof == 6);
  const CertReport r = certify_plan(a, testutil::asym(P(7, 2, 1, 2, 1), 0.8));
  CHECK(r.pass);
  CHECK(r.certified_dof == 6);

  const TransmissionPlan b = asym_plan(P(8));
  CHECK(b.silenced == Ints{2, 4, 6, 8});
  CHECK(b.claimed_dof == 4);
  CHECK(certify_plan(b, testutil::asym(P(8), -1.3)).pass);

  const TransmissionPlan c = asym_plan(P(5, 2, 0, 2, 0));
  CHECK(c.silenced.empty());
  CHECK(c.claimed_dof == 5);
  CHECK(certify_plan(c, testutil::asym(P(5, 2, 0, 2, 0), 0.5)).certified_dof == 5);
}

TEST_CASE("asymmetric plans certify across a grid") {
  for (int K = 1; K <= 18; ++K)
    for (int tl = 0; tl <= 2; ++tl)
      for (int tr = 0; tr <= 2; ++tr)
        for (int rl = 0; rl <= 2; ++rl)
          for (int rr = 0; rr <= 2; ++rr) {
            const NetworkParams p = P(K, tl, tr, rl, rr);
            const CertReport r = certify_plan(asym_plan(p), testutil::asym(p, 0.6));
            CHECK_MESSAGE(r.pass, r.detail);
            CHECK(r.certified_dof == asym_mg(p));
          }
}

TEST_CASE("symmetric side-information plans") {
  const NetworkParams ex = P(7, 1, 1, 1, 1);
  const TransmissionPlan a = sym_symmetric_si_plan(ex, Alpha::parse("0.3"));
  CHECK(a.silenced == Ints{4});
  CHECK(a.claimed_dof == 6);
  CHECK(certify_plan(a, testutil::sym(ex, 0.3)).certified_dof == 6);

  const Alpha root = Alpha::parse("root:3:1");
  const TransmissionPlan b = sym_symmetric_si_plan(ex, root);
  CHECK(b.silenced == Ints{3, 6});
  CHECK(b.claimed_dof == 5);
  CHECK(certify_plan(b, testutil::sym(ex, root.value)).certified_dof == 5);

  // forcing the generic pattern at a root overclaims the size-3 block
  const TransmissionPlan forced = sym_pair_silencing_plan(ex, root, {4}, "forced", true);
  const CertReport bad = certify_plan(forced, testutil::sym(ex, root.value));
  CHECK_FALSE(bad.pass);
  CHECK(bad.failed_check == "c");

  const TransmissionPlan c = sym_symmetric_si_plan(P(3, 1, 1, 1, 1), Alpha::parse("0.45"));
  CHECK(c.silenced.empty());
  CHECK(c.claimed_dof == 3);
  CHECK_THROWS_AS(sym_symmetric_si_plan(P(7, 1, 0, 1, 1), Alpha::parse("0.3")), InvalidInput);
}

TEST_CASE("tampered decoding window fails feasibility") {
  const NetworkParams p = P(7, 2, 1, 2, 1);
  TransmissionPlan a = asym_plan(p);
  REQUIRE_FALSE(a.streams.empty());
  Stream& s = a.streams.front();
  s.antenna = s.msg - p.r_left - 1;
  s.joint.clear();
  const CertReport r = certify_plan(a, testutil::asym(p, 0.8));
  CHECK_FALSE(r.pass);
  CHECK(r.failed_check == "b");
}

TEST_CASE("general lower-bound plans") {
  const TransmissionPlan lb2 = sym_general_plan(P(12, 1, 0, 1, 0), "LB2");
  CHECK(lb2.silenced == Ints{1, 3, 4, 6, 7, 9, 10, 12});
  CHECK(lb2.claimed_dof == 4);
  CHECK(certify_plan(lb2, testutil::sym(P(12, 1, 0, 1, 0), 0.6)).pass);

  const TransmissionPlan lb4 = sym_general_plan(P(10, 0, 0, 1, 1), "LB4");
  CHECK(lb4.silenced == Ints{1, 5, 6, 10});
  CHECK(lb4.claimed_dof == 6);
  CHECK(certify_plan(lb4, testutil::sym(P(10, 0, 0, 1, 1), 0.6)).pass);
  // the central zero-forcing block is H_3, singular at its root
  CHECK_FALSE(
      certify_plan(lb4, testutil::sym(P(10, 0, 0, 1, 1), Alpha::parse("root:3:1").value)).pass);

  const TransmissionPlan lb1 = sym_general_plan(P(8, 1, 1, 1, 1), "LB1");
  CHECK(lb1.silenced == Ints{1, 4, 5, 8});
  CHECK(lb1.claimed_dof == 4);
  CHECK(certify_plan(lb1, testutil::sym(P(8, 1, 1, 1, 1), 0.6)).pass);

  CHECK_THROWS_AS(sym_general_plan(P(8), "LB1"), NotApplicable);
  CHECK_THROWS_AS(sym_general_plan(P(8), "LB9"), InvalidInput);
}

TEST_CASE("fair time sharing") {
  const auto plans = fair_time_sharing_plan(P(8));
  REQUIRE(plans.size() == 2);
  CHECK(plans[0].silenced == Ints{2, 4, 6, 8});
  CHECK(plans[1].silenced == Ints{1, 3, 5, 7});
  std::map<int, int> served;
  for (const auto& pl : plans) {
    CHECK(certify_plan(pl, testutil::asym(P(8), 0.7)).pass);
    for (auto [m, pre] : pl.prelogs())
      if (pre > 0) ++served[m];
  }
  for (int m = 1; m <= 8; ++m) CHECK(served[m] == 1);

  const NetworkParams q = P(13, 1, 1, 0, 1);
  const auto rot = fair_time_sharing_plan(q);
  const int beta = q.sigma() + 2;
  CHECK(static_cast<int>(rot.size()) == beta);
  double avg = 0;
  for (const auto& pl : rot) {
    CHECK(certify_plan(pl, testutil::asym(q, 1.4)).pass);
    avg += pl.claimed_dof;
  }
  CHECK(avg / beta >= asym_mg(q) - 1);
  // 5 plans of 10 serve 50 messages, short of the 13 * 4 that "beta - 1 of beta" would need
  CHECK(avg < q.K * (beta - 1));

  for (const auto& pl : fair_time_sharing_plan(P(5, 2, 0, 2, 0))) CHECK(pl.claimed_dof >= 4);
}

TEST_CASE("plan json round trip") {
  const TransmissionPlan a = sym_symmetric_si_plan(P(11, 1, 1, 1, 1), Alpha::parse("root:3:1"));
  const nlohmann::json j = to_json(a);
  CHECK(to_json(plan_from_json(j)) == j);
  const TransmissionPlan b = asym_plan(P(9, 1, 2, 0, 1));
  CHECK(to_json(plan_from_json(to_json(b))) == to_json(b));
  CHECK(tag_from_string(to_string(StrategyTag::DPCRightScaled)) == StrategyTag::DPCRightScaled);
  CHECK_THROWS(tag_from_string("nope"));
}
