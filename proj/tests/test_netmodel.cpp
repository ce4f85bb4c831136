#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace wyner;
using testutil::P;

TEST_CASE("channel matrices") {
  const ChannelModel a = testutil::asym(P(2), 0.5);
  CHECK(a.H(0, 0) == 1);
  CHECK(a.H(0, 1) == 0);
  CHECK(a.H(1, 0) == 0.5);
  CHECK(a.H(1, 1) == 1);

  const double al = 0.37;
  const ChannelModel s = testutil::sym(P(3), al);
  const Matrix expect{{1, al, 0}, {al, 1, al}, {0, al, 1}};
  CHECK(s.H == expect);

  for (auto t : {Topology::Asymmetric, Topology::Symmetric}) {
    const ChannelModel one = build_channel(P(1), t, sample_generic_gains(1, t, 3));
    CHECK(one.H == Matrix::Identity(1, 1));
  }
  CHECK(s.h(0, 1) == 0);
  CHECK(s.h(4, 3) == 0);
  CHECK(s.h(2, 1) == al);
}

TEST_CASE("zero gains and bad dimensions are rejected") {
  CHECK_THROWS_WITH_AS(testutil::sym(P(3), 0.0), "nonzero cross-gain required", InvalidInput);
  CrossGainAssignment g;
  g.kind = CrossGainAssignment::Kind::Explicit;
  g.left = {0.5, 0.5};
  CHECK_THROWS_AS(build_channel(P(3), Topology::Asymmetric, g), InvalidInput);
  g.left = {0.5, 0.0, 0.5};
  CHECK_THROWS_AS(build_channel(P(3), Topology::Asymmetric, g), InvalidInput);
  g.left = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(build_channel(P(3), Topology::Symmetric, g), InvalidInput);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(P(0).validate(), InvalidInput);
  CHECK_THROWS_AS(P(3, -1).validate(), InvalidInput);
  CHECK_NOTHROW(P(3, 5, 5, 5, 5).validate());
}

TEST_CASE("submatrix") {
  const double al = 0.6;
  const ChannelModel s = testutil::sym(P(3), al);
  CHECK(submatrix(s, {1, 2}, {1, 2}) == Matrix{{1, al}, {al, 1}});
  const ChannelModel a = testutil::asym(P(3), al);
  CHECK(submatrix(a, {2, 3}, {1, 2}) == Matrix{{al, 1}, {0, al}});
  const Matrix e = submatrix(s, {}, {1, 3});
  CHECK(e.rows() == 0);
  CHECK(e.cols() == 2);
  CHECK_THROWS_AS(submatrix(s, {4}, {1}), InvalidInput);
  CHECK_THROWS_AS(submatrix(s, {1}, {0}), InvalidInput);
}

TEST_CASE("generic gains") {
  const auto g1 = sample_generic_gains(5, Topology::Symmetric, 7);
  const auto g2 = sample_generic_gains(5, Topology::Symmetric, 7);
  CHECK(g1.left == g2.left);
  CHECK(g1.right == g2.right);
  CHECK(g1.left != sample_generic_gains(5, Topology::Symmetric, 8).left);

  const auto big = sample_generic_gains(100, Topology::Asymmetric, 1);
  CHECK(big.right.empty());
  for (double v : big.left) {
    CHECK(std::abs(v) >= 0.1);
    CHECK(std::abs(v) <= 2.0);
  }
}

TEST_CASE("cognition and decoding windows") {
  const NetworkParams p = P(10, 2, 1, 0, 3);
  CHECK(p.tx_knows(5, 3));
  CHECK(p.tx_knows(5, 6));
  CHECK_FALSE(p.tx_knows(5, 2));
  CHECK_FALSE(p.tx_knows(5, 7));
  CHECK(p.rx_sees(5, 8));
  CHECK_FALSE(p.rx_sees(5, 4));
  CHECK(p.sigma() == 6);
  const NetworkParams m = p.mirrored();
  CHECK(m.t_left == 1);
  CHECK(m.t_right == 2);
  CHECK(m.r_left == 3);
  CHECK(m.r_right == 0);
}

TEST_CASE("index ranges clip to the network") {
  CHECK(irange(-1, 2, 5) == std::vector<int>{1, 2});
  CHECK(irange(4, 9, 5) == std::vector<int>{4, 5});
  CHECK(irange(3, 2, 5).empty());
}

TEST_CASE("json round trip") {
  const ChannelModel s = testutil::sym(P(4, 1, 0, 1, 2), -0.8);
  const ChannelModel back = model_from_json(to_json(s));
  CHECK(back.params == s.params);
  CHECK(back.H == s.H);

  const ChannelModel r = build_channel(P(6), Topology::Asymmetric,
                                       sample_generic_gains(6, Topology::Asymmetric, 11));
  CHECK(model_from_json(to_json(r)).H == r.H);

  CHECK_THROWS_AS(model_from_json(nlohmann::json{{"K", 3}, {"gains", {{"kind", "odd"}}}}),
                  InvalidInput);
  CHECK_THROWS_AS(params_from_json(nlohmann::json{{"t_left", 1}}), InvalidInput);
}
