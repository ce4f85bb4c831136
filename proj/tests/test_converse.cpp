#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wyner/converse.hpp"

#include <algorithm>
#include <set>

using namespace wyner;
using testutil::P;

using Ints = std::vector<int>;

TEST_CASE("asymmetric genie partitions") {
  const NetworkParams ex = P(7, 2, 1, 2, 1);
  GeniePartition g = build_asym_genie(ex, 0.8);
  CHECK(g.A == Ints{4, 5, 6, 7});
  CHECK(g.R_A == Ints{2, 3, 4, 5, 6, 7});
  CHECK(mac_bound_value(g) == 6);
  const ChannelModel m = testutil::asym(ex, 0.8);
  CHECK(genie_entropy_check(g, m).ok);
  const ConverseReport r = verify_reconstruction(g, m, 50);
  CHECK(r.max_abs_error <= 1e-9);
  CHECK(r.structural_ok);

  GeniePartition z = build_asym_genie(P(4), 0.5);
  CHECK(mac_bound_value(z) == 2);
  Ints outside;
  for (int k = 1; k <= 4; ++k)
    if (!std::binary_search(z.R_A.begin(), z.R_A.end(), k)) outside.push_back(k);
  CHECK(outside == Ints{1, 3});

  const GeniePartition trivial = build_asym_genie(P(5, 2, 0, 2, 0), 0.5);
  CHECK(trivial.genies.empty());
  CHECK(mac_bound_value(trivial) == 5);

  for (int K = 1; K <= 20; ++K)
    for (int s = 0; s < 81; ++s) {
      const NetworkParams p = P(K, s % 3, s / 3 % 3, s / 9 % 3, s / 27);
      CHECK(mac_bound_value(build_asym_genie(p, 0.7)) == asym_mg(p));
    }
}

TEST_CASE("reconstruction is exact and sensitive") {
  const NetworkParams p = P(10, 1, 0, 1, 0);
  const ChannelModel m = testutil::asym(p, 0.7);
  GeniePartition g = build_asym_genie(p, 0.7);
  const ConverseReport r = verify_reconstruction(g, m, 100);
  CHECK(r.max_abs_error <= 1e-9);
  CHECK(r.bound == 8);

  REQUIRE_FALSE(g.genies.empty());
  g.genies.front().noise.begin()->second += 1e-3;
  CHECK(verify_reconstruction(g, m, 100).max_abs_error >= 1e-4);
}

TEST_CASE("upper bound 1 genie") {
  const NetworkParams p = P(12, 1, 1, 1, 1);
  GeniePartition g = build_sym_genie_ub1(p, 0.9);
  const ChannelModel m = testutil::sym(p, 0.9);
  CHECK(mac_bound_value(g) == 9);
  // K \ R_A has 2 gamma_4 + theta_4 = 3 antennas
  CHECK(static_cast<int>(g.R_A.size()) == 9);
  const ConverseReport r = verify_reconstruction(g, m, 100);
  CHECK(r.max_abs_error <= 1e-9);
  CHECK(r.entropy_ok);
}

TEST_CASE("upper bound 2 genie") {
  const Alpha root = Alpha::parse("root:3:1");
  const NullRelation nr = null_relation(3, root);
  CHECK(nr.residual <= 1e-10);
  const Matrix H = H_p(3, root.value);
  CHECK((H.row(0) - nr.d[0] * H.row(1) - nr.d[1] * H.row(2)).norm() <= 1e-10);

  const NetworkParams ex = P(7, 1, 1, 1, 1);
  GeniePartition g = build_sym_genie_ub2(ex, root);
  CHECK(mac_bound_value(g) == sym_mg_symmetric_si(ex, root).upper);
  CHECK(verify_reconstruction(g, testutil::sym(ex, root.value), 50).max_abs_error <= 1e-9);

  GeniePartition h = build_sym_genie_ub2(P(9, 0, 1, 2, 1), root);
  CHECK(verify_reconstruction(h, testutil::sym(P(9, 0, 1, 2, 1), root.value), 50).max_abs_error <=
        1e-9);

  CHECK_THROWS_AS(build_sym_genie_ub2(ex, Alpha::parse("0.3")), NotApplicable);
}

TEST_CASE("offset genie") {
  const double a = std::sqrt(0.5) + 0.01;
  const NetworkParams p = P(11, 1, 1, 1, 1);  // L = 2, q = 3
  GeniePartition g = build_offset_genie(p, a);
  const ConverseReport r = verify_reconstruction(g, testutil::sym(p, a), 50);
  CHECK(r.max_abs_error <= 1e-9);
  CHECK(r.entropy_ok);
  CHECK_THROWS_AS(build_offset_genie(P(7, 1, 1, 1, 1), a), NotApplicable);  // q = 2

  CHECK(offset_information_term(2, std::sqrt(0.5), 1e6) == doctest::Approx(0).epsilon(1e-12));
  CHECK(offset_information_term(2, std::sqrt(0.5) + 0.1, 1e6) >
        offset_information_term(2, std::sqrt(0.5) + 0.01, 1e6));
}

TEST_CASE("noise condition") {
  const NetworkParams ex = P(7, 2, 1, 2, 1);
  const ChannelModel m = testutil::asym(ex, 0.8);
  GeniePartition g = build_asym_genie(ex, 0.8);
  REQUIRE_FALSE(g.genies.empty());

  GeniePartition dup = g;
  dup.genies.push_back(dup.genies.front());
  CHECK(genie_entropy_check(dup, m).ok);

  // a genie equal to one R_A noise makes the conditional covariance singular
  GeniePartition adv = g;
  GenieSignal n;
  n.index = static_cast<int>(adv.genies.size());
  n.noise[adv.R_A.front()] = 1.0;
  adv.genies.push_back(n);
  const EntropyReport e = genie_entropy_check(adv, m);
  CHECK_FALSE(e.ok);
  CHECK(e.min_eigenvalue < 1e-10);
}

TEST_CASE("reachable antennas") {
  CHECK(reachable(P(6, 0, 0, 1, 1), {1, 4}) == Ints{1, 2, 3, 4, 5});
}
