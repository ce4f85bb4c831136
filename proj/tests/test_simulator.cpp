#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wyner/simulator.hpp"

#include <cmath>
#include <sstream>

using namespace wyner;
using testutil::P;

TEST_CASE("single pair rate") {
  const TransmissionPlan a = asym_plan(P(1));
  const double Pw = std::exp(2.0) - 1;
  CHECK(plan_sum_rate(a, testutil::asym(P(1), 0.5), Pw) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(plan_sum_rate(a, testutil::asym(P(1), 0.5), 0), InvalidInput);
}

TEST_CASE("asymmetric subnets at unit gain") {
  // every served message sees a unit effective gain when alpha = 1
  for (int K : {7, 15, 23}) {
    const NetworkParams p = P(K, 2, 1, 2, 1);
    const TransmissionPlan a = asym_plan(p);
    for (double Pw : {10.0, 1e4, 1e9})
      CHECK(plan_sum_rate(a, testutil::asym(p, 1.0), Pw) ==
            doctest::Approx(a.claimed_dof * 0.5 * std::log1p(Pw)).epsilon(1e-12));
  }
}

TEST_CASE("MIMO subnet log det") {
  const NetworkParams p = P(3, 1, 1, 1, 1);
  const TransmissionPlan a = sym_symmetric_si_plan(p, Alpha::parse("0.5"));
  const Matrix H = H_p(3, 0.5);
  const double expect =
      0.5 * std::log((Matrix::Identity(3, 3) + 10.0 * H.transpose() * H).determinant());
  CHECK(plan_sum_rate(a, testutil::sym(p, 0.5), 10.0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("pre-log slopes") {
  const auto powers = log_powers(1e3, 1e14, 12);
  CHECK(powers.size() == 12);
  CHECK(powers.front() == doctest::Approx(1e3));
  CHECK(powers.back() == doctest::Approx(1e14));

  const NetworkParams ex = P(7, 1, 1, 1, 1);
  const auto generic = sym_symmetric_si_plan(ex, Alpha::parse("0.3"));
  CHECK(slope_estimate(rate_curve(generic, testutil::sym(ex, 0.3), powers)) ==
        doctest::Approx(6).epsilon(0.05 / 6));
  const Alpha root = Alpha::parse("root:3:1");
  const auto drop = sym_symmetric_si_plan(ex, root);
  CHECK(slope_estimate(rate_curve(drop, testutil::sym(ex, root.value), powers)) ==
        doctest::Approx(5).epsilon(0.05 / 5));

  TransmissionPlan empty = generic;
  empty.streams.clear();
  empty.groups.clear();
  CHECK(std::abs(slope_estimate(rate_curve(empty, testutil::sym(ex, 0.3), powers))) < 1e-12);
}

TEST_CASE("offset growth") {
  std::vector<double> deltas;
  for (int k = 3; k <= 12; ++k) deltas.push_back(std::ldexp(1.0, -k));
  const OffsetResult r = offset_experiment(2, std::sqrt(0.5), deltas);
  CHECK(r.multiplicity == 1);
  CHECK(r.increasing);
  CHECK(r.fitted_nu == doctest::Approx(1).epsilon(0.2));
  CHECK(offset_proxy(2, std::sqrt(0.5), 1e8) == doctest::Approx(0.5 * std::log(1e8)));
}

TEST_CASE("random-gain ranks") {
  const RankTrialReport r = random_gain_rank_trials(12, Topology::Symmetric, 20, 5);
  CHECK(r.failures == 0);
  CHECK(first_rank_failure(testutil::sym(P(20), std::sqrt(0.5)), 12) == 3);
  CHECK(first_rank_failure(testutil::sym(P(20), -1.0), 12) == 2);
  CHECK(first_rank_failure(testutil::asym(P(20), 3.0), 12) == 0);
}

TEST_CASE("csv output") {
  RateCurve c{"x", {{10, 1.5}, {100, 2.5}}};
  std::ostringstream os;
  write_rate_csv(os, {c});
  CHECK(os.str() == "P,sum_rate_nats,plan_id\n10,1.5,x\n100,2.5,x\n");
  OffsetResult r;
  r.points = {{0.75, 2.0}};
  std::ostringstream os2;
  write_offset_csv(os2, r);
  CHECK(os2.str() == "alpha,offset_proxy\n0.75,2\n");
}
